"""Finite joint distributions, channels and their basic transformations.

Conventions used throughout the package:

- A joint distribution of (X, Y) is an m x n nonnegative matrix summing
  to 1, rows indexed by X outcomes, columns by Y outcomes.
- Probability vectors are 1-D nonnegative arrays summing to 1.  A vector
  is "canonical" when sorted in non-increasing order; several bounds are
  stated for canonical vectors only.
- Outcome labels are 0-based in code.

Tolerances: 1e-9 for normalization checks at ingestion, 1e-12 for
identities between internally computed quantities (double-precision
accumulation over at most ~10^4 entries).  Tiny negative entries within
the ingestion tolerance are clamped to zero and the mass renormalized,
since empirical pmfs produced by external tools carry rounding dust.

All values are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyMatrix,
    NegativeMass,
    NotNormalized,
    NotSurjective,
    ShapeMismatch,
)

INGEST_TOL = 1e-9
INTERNAL_TOL = 1e-12


def _clean_mass(values: np.ndarray, tolerance: float, what: str) -> np.ndarray:
    """Validate nonnegativity and total mass, clamp dust, renormalize."""
    if not np.all(np.isfinite(values)):
        raise NegativeMass(f"{what} contains non-finite entries")
    low = values.min() if values.size else 0.0
    if low < -tolerance:
        raise NegativeMass(f"{what} has entry {low} below -{tolerance}")
    values = np.where(values < 0.0, 0.0, values)
    total = values.sum()
    if abs(total - 1.0) > tolerance:
        raise NotNormalized(f"{what} sums to {total}, expected 1 +/- {tolerance}")
    # renormalize only beyond ulp noise, so revalidating an already clean
    # value (e.g. after a permutation) is bit-stable
    if abs(total - 1.0) > 1e-13:
        return values / total
    return values


@dataclass(frozen=True)
class ProbabilityVector:
    """A validated probability mass function on a finite set.

    ``canonical`` is True when the entries are sorted non-increasing;
    it is computed at construction, not supplied.
    """

    values: np.ndarray
    canonical: bool = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size == 0:
            raise EmptyMatrix("probability vector must be nonempty")
        values = _clean_mass(values, INGEST_TOL, "probability vector")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        sorted_flag = bool(np.all(values[:-1] >= values[1:] - INTERNAL_TOL))
        object.__setattr__(self, "canonical", sorted_flag)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    def sorted(self) -> tuple["ProbabilityVector", np.ndarray]:
        """Return the canonical (non-increasing) version and the permutation.

        ``perm[new_index] = original_index``; stable on ties.
        """
        perm = np.argsort(-self.values, kind="stable")
        return ProbabilityVector(self.values[perm]), perm


def as_probability_vector(p) -> ProbabilityVector:
    """Coerce an array-like or ProbabilityVector to a ProbabilityVector."""
    if isinstance(p, ProbabilityVector):
        return p
    return ProbabilityVector(np.asarray(p, dtype=float))


def _as_grid(raw) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise EmptyMatrix(f"input is not a rectangular numeric grid: {exc}") from exc
    if arr.ndim != 2 or arr.size == 0:
        raise EmptyMatrix(f"expected a nonempty 2-D grid, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class JointDistribution:
    """Joint pmf of (X, Y) with cached marginals.

    Zero-probability rows or columns are permitted here; operations that
    need strict positivity (the inertia decomposition) reject them
    explicitly rather than dropping them silently.
    """

    matrix: np.ndarray
    row_marginal: ProbabilityVector = field(init=False)
    col_marginal: ProbabilityVector = field(init=False)

    def __post_init__(self):
        matrix = _as_grid(self.matrix)
        matrix = _clean_mass(matrix, INGEST_TOL, "joint matrix")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "row_marginal", ProbabilityVector(matrix.sum(axis=1)))
        object.__setattr__(self, "col_marginal", ProbabilityVector(matrix.sum(axis=0)))

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class StochasticMatrix:
    """Row-stochastic matrix: each row is a conditional pmf p(y|x)."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = _as_grid(self.matrix)
        rows = [_clean_mass(matrix[i], INGEST_TOL, f"row {i}") for i in range(matrix.shape[0])]
        matrix = np.vstack(rows)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class DegradationMap:
    """Column-stochastic matrix p(x'|x) describing post-processing of X."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = _as_grid(self.matrix)
        cols = [_clean_mass(matrix[:, j], INGEST_TOL, f"column {j}") for j in range(matrix.shape[1])]
        matrix = np.column_stack(cols)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def load_joint(raw_matrix, tolerance: float = INGEST_TOL) -> JointDistribution:
    """Validate a raw grid as a joint distribution.

    Entries below ``-tolerance`` raise NegativeMass; negatives within
    ``[-tolerance, 0)`` are clamped to zero and the matrix renormalized.
    A total mass outside ``1 +/- tolerance`` raises NotNormalized.
    """
    arr = _as_grid(raw_matrix)
    low = arr.min()
    if low < -tolerance:
        raise NegativeMass(f"matrix entry {low} below -{tolerance}")
    arr = np.where(arr < 0.0, 0.0, arr)
    total = arr.sum()
    if abs(total - 1.0) > tolerance:
        raise NotNormalized(f"matrix sums to {total}, expected 1 +/- {tolerance}")
    return JointDistribution(arr / total)


def canonicalize(joint: JointDistribution) -> tuple[JointDistribution, np.ndarray, np.ndarray]:
    """Permute rows and columns so both marginals are non-increasing.

    Ties keep their original relative order (stable sort), so the
    operation is idempotent bit for bit.  Returns
    ``(sorted_joint, row_perm, col_perm)`` with
    ``sorted.matrix[i, j] == joint.matrix[row_perm[i], col_perm[j]]``,
    which lets results be mapped back to the original labels.
    """
    row_perm = np.argsort(-joint.row_marginal.values, kind="stable")
    col_perm = np.argsort(-joint.col_marginal.values, kind="stable")
    return JointDistribution(joint.matrix[np.ix_(row_perm, col_perm)]), row_perm, col_perm


def degrade(joint: JointDistribution, dmap: DegradationMap) -> JointDistribution:
    """Joint distribution of (X', Y) when X' is X passed through ``dmap``."""
    if dmap.shape[1] != joint.m:
        raise ShapeMismatch(
            f"degradation map has {dmap.shape[1]} columns, joint has {joint.m} rows"
        )
    return JointDistribution(dmap.matrix @ joint.matrix)


def pushforward(joint: JointDistribution, assignment, num_classes: int | None = None) -> JointDistribution:
    """Joint distribution of (f(X), Y) for a surjective class assignment.

    ``assignment`` maps each row index to a class in ``0..num_classes-1``
    (``num_classes`` defaults to ``max(assignment) + 1``).  Row u of the
    result is the sum of the input rows assigned to class u; the column
    marginal is preserved exactly.
    """
    g = np.asarray(assignment, dtype=int).reshape(-1)
    if g.size != joint.m:
        raise ShapeMismatch(f"assignment has {g.size} entries for {joint.m} rows")
    classes = num_classes if num_classes is not None else int(g.max()) + 1
    if g.min() < 0 or g.max() >= classes:
        raise NotSurjective(f"assignment values outside 0..{classes - 1}")
    if np.unique(g).size != classes:
        raise NotSurjective(f"assignment does not cover all {classes} classes")
    merged = np.zeros((classes, joint.n))
    np.add.at(merged, g, joint.matrix)
    return JointDistribution(merged)


def conditional_rows(joint: JointDistribution) -> np.ndarray:
    """The channel p(y|x) as a dense array; rows with zero mass raise."""
    from .errors import ZeroMarginal

    px = joint.row_marginal.values
    if px.min() <= 0.0:
        raise ZeroMarginal("row marginal has zero entries; conditional undefined")
    return joint.matrix / px[:, None]


def joint_from_channel(p, channel: StochasticMatrix) -> JointDistribution:
    """Assemble a joint distribution from an input pmf and a channel."""
    pv = as_probability_vector(p)
    if len(pv) != channel.shape[0]:
        raise ShapeMismatch(
            f"input pmf has {len(pv)} entries, channel has {channel.shape[0]} rows"
        )
    return JointDistribution(pv.values[:, None] * channel.matrix)


def _positive_gamma(rng: np.random.Generator, concentration: float, size) -> np.ndarray:
    draw = rng.gamma(concentration, size=size)
    # gamma can underflow to 0 for tiny concentration; keep entries positive
    return np.maximum(draw, 1e-300)


def random_joint(m: int, n: int, seed, concentration: float = 1.0) -> JointDistribution:
    """Seeded Dirichlet-style joint distribution on the m*n simplex.

    Deterministic given ``(m, n, seed, concentration)``; all entries are
    strictly positive.  Each cell has mean 1/(m*n).
    """
    if m < 1 or n < 1:
        raise ShapeMismatch(f"need m, n >= 1, got {m} x {n}")
    rng = np.random.default_rng(seed)
    cells = _positive_gamma(rng, concentration, (m, n))
    return JointDistribution(cells / cells.sum())


def random_stochastic(m: int, n: int, seed, concentration: float = 1.0) -> StochasticMatrix:
    """Seeded random channel: each row an independent Dirichlet draw."""
    rng = np.random.default_rng(seed)
    rows = _positive_gamma(rng, concentration, (m, n))
    return StochasticMatrix(rows / rows.sum(axis=1, keepdims=True))


def random_degradation(m_prime: int, m: int, seed, concentration: float = 1.0) -> DegradationMap:
    """Seeded random column-stochastic post-processing map."""
    rng = np.random.default_rng(seed)
    cols = _positive_gamma(rng, concentration, (m_prime, m))
    return DegradationMap(cols / cols.sum(axis=0, keepdims=True))
