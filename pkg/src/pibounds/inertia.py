"""Principal-inertia decomposition and the information measures built on it.

For a joint pmf P of (X, Y) with strictly positive marginals, consider the
standardized residual matrix

    S = D_X^{-1/2} (P - p_X p_Y^T) D_Y^{-1/2},

where D_X, D_Y are the diagonal marginal matrices.  Its squared singular
values lambda_1 >= ... >= lambda_d, with d = min(m-1, n-1), are the
*principal inertias* of the pair: a spectrum of correlation strengths
lying in [0, 1].  Equivalently, D_X^{-1/2} P D_Y^{-1/2} has leading
singular value 1 with singular vectors (sqrt(p_X), sqrt(p_Y)), and the
remaining singular values are sqrt(lambda_i).

Derived measures:

- ``k_correlation``: sum of the k largest inertias.  k = 1 gives the
  squared maximal correlation, k = d gives the chi-square statistic.
- ``chi_squared_direct``: the chi-square statistic from its cell formula,
  with no SVD involved.
- ``ace_maxcorr``: maximal correlation via alternating conditional
  expectations, an oracle independent of the SVD path.
- ``total_inertia_spatial``: the weighted moment of inertia of the
  conditional rows around the output marginal, under the chi-square
  metric; equals the chi-square statistic.

The last three exist so the decomposition can be cross-checked by
construction rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from .distributions import JointDistribution
from .errors import KOutOfRange, NoConvergence, ZeroMarginal

# singular values of the residual below this are treated as exact zeros
_SV_FLOOR = 1e-12


def _positive_marginals(joint: JointDistribution) -> tuple[np.ndarray, np.ndarray]:
    px = joint.row_marginal.values
    py = joint.col_marginal.values
    if px.min() <= 0.0 or py.min() <= 0.0:
        raise ZeroMarginal("inertia decomposition requires strictly positive marginals")
    return px, py


@dataclass(frozen=True)
class InertiaDecomposition:
    """Principal inertias plus the scaled factor matrices.

    ``left_factor`` (m x (d+1)) and ``right_factor`` (n x (d+1)) satisfy

        left_factor @ diag(sigma) @ right_factor.T == P,
        left_factor.T @ D_X^{-1} @ left_factor == I,
        right_factor.T @ D_Y^{-1} @ right_factor == I,

    with ``sigma = (1, sqrt(lambda_1), ..., sqrt(lambda_d))`` and the
    first factor columns equal to the marginals themselves.
    """

    lambdas: np.ndarray
    left_factor: np.ndarray
    right_factor: np.ndarray
    sigma: np.ndarray

    @property
    def d(self) -> int:
        return self.lambdas.size

    @property
    def maximal_correlation(self) -> float:
        """sqrt of the largest inertia; 0 for a degenerate alphabet."""
        return float(np.sqrt(self.lambdas[0])) if self.d else 0.0

    @property
    def total_inertia(self) -> float:
        return float(self.lambdas.sum())


def _orthonormal_block(trivial: np.ndarray, vectors: np.ndarray, svals: np.ndarray,
                       want: int) -> np.ndarray:
    """Assemble ``want`` columns orthonormal to ``trivial`` and each other.

    Columns of ``vectors`` paired with singular values above the floor are
    kept (re-orthogonalized against the trivial direction, which they miss
    only by rounding); the remainder is filled with an orthonormal basis of
    the unused complement.  Zero-inertia columns pair with a zero singular
    value, so any completion leaves all derived quantities unchanged.
    """
    kept = [i for i in range(want) if svals[i] > _SV_FLOOR]
    cols = []
    for i in kept:
        v = vectors[:, i] - (trivial @ vectors[:, i]) * trivial
        cols.append(v / np.linalg.norm(v))
    missing = want - len(kept)
    if missing > 0:
        spanned = np.column_stack([trivial] + cols) if cols else trivial[:, None]
        complement = null_space(spanned.T)
        cols.extend(complement[:, j] for j in range(missing))
    return np.column_stack([trivial] + cols)


def decompose(joint: JointDistribution) -> InertiaDecomposition:
    """Principal-inertia decomposition of a joint distribution.

    Computes the SVD of the standardized residual S, clamps singular
    values below 1e-12 to zero, squares them to get the inertias, and
    assembles the factors with the exact trivial pair
    (sqrt(p_X), sqrt(p_Y)) prepended.  Building from the residual rather
    than from D_X^{-1/2} P D_Y^{-1/2} directly keeps the leading column
    pinned to the marginals even when some inertia equals 1 (ties with
    the trivial singular value).

    Raises ZeroMarginal if any marginal entry is zero.
    """
    px, py = _positive_marginals(joint)
    m, n = joint.shape
    d = min(m - 1, n - 1)
    sqrt_px = np.sqrt(px)
    sqrt_py = np.sqrt(py)

    residual = (joint.matrix - np.outer(px, py)) / np.outer(sqrt_px, sqrt_py)
    u, s, vt = np.linalg.svd(residual, full_matrices=False)

    svals = s[:d].copy() if d else np.zeros(0)
    svals[svals <= _SV_FLOOR] = 0.0
    svals = np.clip(svals, 0.0, 1.0)
    lambdas = svals**2

    u_block = _orthonormal_block(sqrt_px, u, s, d)
    v_block = _orthonormal_block(sqrt_py, vt.T, s, d)

    sigma = np.concatenate(([1.0], svals))
    left = sqrt_px[:, None] * u_block
    right = sqrt_py[:, None] * v_block
    for arr in (lambdas, left, right, sigma):
        arr.setflags(write=False)
    return InertiaDecomposition(lambdas=lambdas, left_factor=left,
                                right_factor=right, sigma=sigma)


def k_correlation(joint: JointDistribution, k: int) -> float:
    """Sum of the k largest principal inertias.

    Equals the k-th Ky Fan norm of
    D_X^{-1/2} P D_Y^{-1} P^T D_X^{-1/2} minus 1.  k = 1 is the squared
    maximal correlation; k = d is the chi-square statistic.
    """
    dec = decompose(joint)
    if not 1 <= k <= dec.d:
        raise KOutOfRange(f"k = {k} outside 1..{dec.d}")
    return float(dec.lambdas[:k].sum())


def chi_squared_direct(joint: JointDistribution) -> float:
    """Chi-square statistic straight from the cells, no SVD.

    sum_{ij} (p(i,j) - p_X(i) p_Y(j))^2 / (p_X(i) p_Y(j)).
    """
    px, py = _positive_marginals(joint)
    independent = np.outer(px, py)
    return float(((joint.matrix - independent) ** 2 / independent).sum())


def total_inertia_spatial(joint: JointDistribution) -> float:
    """Total moment of inertia of the conditional rows about their barycenter.

    Place at point i the row p(.|i) with mass p_X(i); the barycenter is
    p_Y.  Under the chi-square metric Q = D_Y^{-1}, the weighted sum of
    squared distances Tr(D_X C Q C^T), with C the centered conditional
    matrix, reproduces the standardized residual (S = D_X^{1/2} C Q^{1/2})
    and therefore equals the chi-square statistic and the sum of all
    principal inertias.
    """
    px, py = _positive_marginals(joint)
    centered = joint.matrix / px[:, None] - py[None, :]
    return float((px[:, None] * centered**2 / py[None, :]).sum())


def _standardize(f: np.ndarray, weights: np.ndarray) -> np.ndarray | None:
    mean = weights @ f
    var = weights @ (f - mean) ** 2
    if var < 1e-28:
        return None
    return (f - mean) / np.sqrt(var)


def ace_maxcorr(joint: JointDistribution, tol: float = 1e-9, max_iter: int = 50000) -> float:
    """Maximal correlation via alternating conditional expectations.

    Alternates g <- E[f(X) | Y] standardized under p_Y and
    f <- E[g(Y) | X] standardized under p_X, starting from the
    standardized indicator of the first outcome, and returns the
    correlation E[f(X) g(Y)] at convergence.  This is a power iteration
    on the conditional-expectation operator and converges to the square
    root of the largest principal inertia; it never touches the SVD.

    If the initial indicator happens to be uncorrelated with every
    observable direction, a seeded random standardized start is tried
    once before concluding the correlation is zero.

    Raises NoConvergence if ``max_iter`` is reached while the correlation
    still moves by more than ``tol`` per iteration.
    """
    px, py = _positive_marginals(joint)
    m, n = joint.shape
    if min(m, n) == 1:
        return 0.0

    matrix = joint.matrix
    f = _standardize(np.eye(m)[:, 0], px)
    if f is None:
        f = _standardize(np.random.default_rng(12345).standard_normal(m), px)
        if f is None:
            return 0.0

    stop_tol = tol * 1e-2
    rho_prev = -1.0
    residual = np.inf
    retried = False
    for _ in range(max_iter):
        g = _standardize((matrix.T @ f) / py, py)
        if g is None:
            if not retried:
                retried = True
                f = _standardize(np.random.default_rng(12345).standard_normal(m), px)
                if f is not None:
                    continue
            return 0.0
        f = _standardize((matrix @ g) / px, px)
        if f is None:
            return 0.0
        rho = float(f @ matrix @ g)
        residual = abs(rho - rho_prev)
        if residual <= stop_tol:
            return rho
        rho_prev = rho
    if residual > tol:
        raise NoConvergence(
            f"ACE residual {residual} above tol {tol} after {max_iter} iterations"
        )
    return rho
