"""Randomized invariants on the pure vector operations."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pibounds import (
    crossover_index,
    entropy,
    load_joint,
    majorizes,
)


def masses(min_size=2, max_size=7):
    return st.lists(
        st.floats(min_value=1e-6, max_value=1.0, allow_nan=False),
        min_size=min_size, max_size=max_size,
    )


def normalized(raw):
    arr = np.asarray(raw, dtype=float)
    return arr / arr.sum()


@given(masses())
@settings(max_examples=150, deadline=None)
def test_entropy_within_support_limits(raw):
    p = normalized(raw)
    h = entropy(p)
    assert -1e-12 <= h <= np.log2(p.size) + 1e-12


@given(masses())
@settings(max_examples=150, deadline=None)
def test_crossover_mass_exceeds_collision_probability(raw):
    p = np.sort(normalized(raw))[::-1]
    k = crossover_index(p)
    assert 1 <= k <= p.size
    assert p[k - 1] >= p @ p - 1e-9
    if k < p.size:
        assert p[k] < p @ p + 1e-9


@given(masses(), st.integers(min_value=0, max_value=10_000))
@settings(max_examples=150, deadline=None)
def test_permutation_blends_are_majorized(raw, seed):
    p = np.sort(normalized(raw))[::-1]
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(3))
    q = sum(w * p[rng.permutation(p.size)] for w in weights)
    assert majorizes(p, q)
    assert majorizes(p, p)


@given(masses(min_size=4, max_size=12))
@settings(max_examples=100, deadline=None)
def test_grids_load_into_consistent_joints(raw):
    size = len(raw) - len(raw) % 2
    grid = normalized(raw[:size]).reshape(2, -1)
    joint = load_joint(grid)
    np.testing.assert_allclose(joint.row_marginal.values,
                               joint.matrix.sum(axis=1), atol=1e-12)
    np.testing.assert_allclose(joint.col_marginal.values,
                               joint.matrix.sum(axis=0), atol=1e-12)
    assert abs(joint.matrix.sum() - 1.0) <= 1e-9
