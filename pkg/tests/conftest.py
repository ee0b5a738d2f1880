import numpy as np
import pytest

from pibounds import load_joint, random_joint


def seeded_joints(count, seed, low=2, high=6):
    """Deterministic stream of (index, JointDistribution) test instances."""
    for i in range(count):
        ss_size, ss_joint = np.random.SeedSequence([seed, i]).spawn(2)
        rng = np.random.default_rng(ss_size)
        m, n = (int(v) for v in rng.integers(low, high + 1, 2))
        yield i, random_joint(m, n, ss_joint)


@pytest.fixture
def bsc_joint():
    """Binary symmetric channel, crossover 0.1, uniform input."""
    return load_joint([[0.45, 0.05], [0.05, 0.45]])


@pytest.fixture
def worked_example():
    """The hand-solved (p, lambdas) instance used across bound tests."""
    return np.array([0.7, 0.2, 0.1]), np.array([0.5, 0.3])
