"""Error-rate machinery: how small can the estimation error be, given only
an information budget?

The error-rate function e(p, theta) is the minimum achievable Hamming
error over all channels from X to a guess whose information measure does
not exceed theta.  Two computable lower bounds are provided:

- ``fano_error_rate``: the closed-form bound for a mutual-information
  budget (bits).  It returns the unique d in [0, 1 - 1/M] solving
  h_b(d) + d log2(M - 1) = max(H(p) - theta, 0), with M the support size
  of the distribution being estimated.
- ``jk_error_rate_lower``: a certified lower bound for a budget on the
  sum of the k largest principal inertias, obtained from a convex
  relaxation (the diagonal of the standardized Gram matrix is majorized
  by its spectrum) solved with a log-barrier interior-point method.

Both bounds are non-increasing and convex in theta.  They are also
Schur-concave in p, which is what lets them transfer to functions of X;
``majorizes`` and ``schur_probe`` provide the order test and an
empirical check of that property.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .distributions import ProbabilityVector, as_probability_vector
from .errors import (
    DegenerateSupportWarning,
    KOutOfRange,
    LengthMismatch,
    NegativeTheta,
    NotAMajorizationPair,
    PiboundsError,
    SolverFailure,
)


def entropy(p) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    values = as_probability_vector(p).values
    positive = values[values > 0.0]
    return float(-(positive * np.log2(positive)).sum())


def binary_entropy(d: float) -> float:
    """h_b(d) in bits."""
    if d <= 0.0 or d >= 1.0:
        return 0.0
    return float(-d * np.log2(d) - (1.0 - d) * np.log2(1.0 - d))


def fano_error_rate(p, theta: float) -> float:
    """Fano-style lower bound on the error of estimating p under an
    information budget ``theta`` (bits).

    Solves h_b(d) + d log2(M - 1) = max(H(p) - theta, 0) for d in
    [0, 1 - 1/M] by bisection to 1e-10; the left side is strictly
    increasing there, and its maximum log2(M) dominates H(p), so the
    root exists and is unique.  Returns 0 when the budget already covers
    the entropy.  A single-point support makes estimation trivial;
    that case returns 0 with a DegenerateSupportWarning.
    """
    pv = as_probability_vector(p)
    if theta < 0.0:
        raise NegativeTheta(f"theta must be nonnegative, got {theta}")
    support = int(np.count_nonzero(pv.values > 0.0))
    if support == 1:
        warnings.warn("single-point support: error bound is vacuously 0",
                      DegenerateSupportWarning, stacklevel=2)
        return 0.0
    target = max(entropy(pv) - theta, 0.0)
    if target == 0.0:
        return 0.0
    log_rest = np.log2(support - 1)
    d_max = 1.0 - 1.0 / support

    def gap(d: float) -> float:
        return binary_entropy(d) + d * log_rest - target

    if gap(d_max) <= 0.0:
        return d_max
    return float(brentq(gap, 0.0, d_max, xtol=1e-10))


# ---------------------------------------------------------------------------
# convex-program lower bound for a k-correlation budget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolverParams:
    """Log-barrier settings; defaults favor robustness on small dense
    problems (m <= 8), not speed."""

    gap_target: float = 1e-7
    t_init: float = 1.0
    mu: float = 10.0
    newton_tol: float = 1e-10
    max_newton: int = 80
    armijo: float = 0.25
    backtrack: float = 0.5


def _constraint_parts(P: np.ndarray, p: np.ndarray, k: int):
    y = p @ P
    s = (p[:k, None] * P[:k] ** 2).sum(axis=0)
    return y, s


def _constraint_value(P: np.ndarray, p: np.ndarray, k: int, theta: float) -> float:
    y, s = _constraint_parts(P, p, k)
    return float((s / y).sum() - (theta + 1.0))


def _constraint_gradient(P: np.ndarray, p: np.ndarray, k: int) -> np.ndarray:
    y, s = _constraint_parts(P, p, k)
    grad = np.zeros_like(P)
    grad[:k] = 2.0 * p[:k, None] * P[:k] / y[None, :]
    grad -= np.outer(p, s / y**2)
    return grad


def _constraint_hessian(P: np.ndarray, p: np.ndarray, k: int) -> np.ndarray:
    """Dense Hessian of the constraint; block-diagonal over columns since
    the constraint separates as sum_b s_b / y_b."""
    m = P.shape[0]
    y, s = _constraint_parts(P, p, k)
    mask = np.zeros(m)
    mask[:k] = 1.0
    hess = np.zeros((m * m, m * m))
    for b in range(m):
        w = p * P[:, b] * mask
        block = (
            (2.0 / y[b]) * np.diag(p * mask)
            - (2.0 / y[b] ** 2) * (np.outer(w, p) + np.outer(p, w))
            + (2.0 * s[b] / y[b] ** 3) * np.outer(p, p)
        )
        idx = np.arange(m) * m + b
        hess[np.ix_(idx, idx)] = block
    return hess


def jk_error_rate_lower(p, theta: float, k: int,
                        params: SolverParams = SolverParams()) -> float:
    """Certified lower bound on the error-rate function for a budget of
    theta on the sum of the k largest principal inertias.

    Solves, over row-stochastic m x m guessing channels P with induced
    output marginal y,

        minimize   1 - sum_i p(i) P(i|i)
        subject to sum_{i<=k} sum_j p(i) P(j|i)^2 / y_j <= theta + 1,

    the relaxation obtained because the constrained sum is a partial
    diagonal of a Gram matrix whose spectrum the budget controls.  A
    log-barrier scheme with exact gradients and Hessians follows the
    central path on a decade schedule until the barrier duality gap
    (number of inequality constraints over t) is below ``gap_target``;
    the return value is the objective minus that gap, clamped at 0, so
    it certifiably lower-bounds the program optimum.

    Raises NegativeTheta / KOutOfRange on bad inputs, SolverFailure
    (carrying the best certified value so far) if centering stalls.
    """
    pv = as_probability_vector(p)
    prob = pv.values
    m = len(pv)
    if theta < 0.0:
        raise NegativeTheta(f"theta must be nonnegative, got {theta}")
    if not 1 <= k <= m - 1:
        raise KOutOfRange(f"k = {k} outside 1..{m - 1}")

    def objective(P):
        return 1.0 - float(prob @ np.diag(P))

    # strictly feasible start: blend of uniform rows toward the identity
    uniform = np.full((m, m), 1.0 / m)
    eye = np.eye(m)
    eps = 0.5
    start = None
    while eps > 1e-14:
        candidate = (1.0 - eps) * uniform + eps * eye
        if _constraint_value(candidate, prob, k, theta) < -1e-9:
            start = candidate
            break
        eps *= 0.5
    if start is None:
        if _constraint_value(uniform, prob, k, theta) < -1e-9:
            start = uniform
        else:
            raise SolverFailure("no strictly feasible start for the barrier")

    n_ineq = m * m + 1
    obj_grad = -np.diag(prob).flatten()
    A = np.zeros((m, m * m))
    for i in range(m):
        A[i, i * m:(i + 1) * m] = 1.0
    kkt_zero = np.zeros((m, m))

    def barrier_value(P, t):
        c = _constraint_value(P, prob, k, theta)
        if c >= 0.0 or P.min() <= 0.0:
            return np.inf
        return t * objective(P) - np.log(P).sum() - np.log(-c)

    P = start
    t = params.t_init
    certified = None
    while True:
        for _ in range(params.max_newton):
            c = _constraint_value(P, prob, k, theta)
            grad_c = _constraint_gradient(P, prob, k).flatten()
            grad = t * obj_grad - 1.0 / P.flatten() - grad_c / c
            hess = _constraint_hessian(P, prob, k) / (-c)
            hess += np.outer(grad_c, grad_c) / c**2
            hess[np.diag_indices_from(hess)] += 1.0 / P.flatten() ** 2

            kkt = np.block([[hess, A.T], [A, kkt_zero]])
            rhs = np.concatenate([-grad, np.zeros(m)])
            # symmetric Jacobi equilibration: barrier terms scale like 1/P^2,
            # which would otherwise wreck the conditioning near the optimum
            scale = np.concatenate([1.0 / np.sqrt(np.diag(hess)), np.ones(m)])
            kkt *= np.outer(scale, scale)
            try:
                solution = scale * np.linalg.solve(kkt, rhs * scale)
            except np.linalg.LinAlgError as exc:
                raise SolverFailure(f"KKT solve failed: {exc}",
                                    certified_value=certified) from exc
            step = solution[:m * m].reshape(m, m)
            decrement_sq = float(-grad @ step.flatten())
            if decrement_sq / 2.0 <= params.newton_tol:
                break

            negative = step < 0.0
            tau = 1.0
            if negative.any():
                tau = min(1.0, 0.99 * float((-P[negative] / step[negative]).min()))
            base_val = barrier_value(P, t)
            slope = float(grad @ step.flatten())
            while tau > 1e-16:
                trial = P + tau * step
                if barrier_value(trial, t) <= base_val + params.armijo * tau * slope:
                    break
                tau *= params.backtrack
            else:
                raise SolverFailure("line search stalled during centering",
                                    certified_value=certified)
            P = P + tau * step
        else:
            raise SolverFailure(f"centering did not converge at t = {t}",
                                certified_value=certified)

        certified = max(0.0, objective(P) - n_ineq / t)
        if n_ineq / t <= params.gap_target:
            return certified
        t *= params.mu


# ---------------------------------------------------------------------------
# majorization order and Schur-concavity probes
# ---------------------------------------------------------------------------

def majorizes(p, q, tol: float = 1e-9) -> bool:
    """True when p majorizes q: every prefix sum of the sorted p
    dominates the matching prefix sum of the sorted q, totals equal.

    Comparisons carry a 1e-12 slack so that equal prefix sums that differ
    only by accumulation order do not flip the answer.
    """
    pa = as_probability_vector(p).values
    qa = as_probability_vector(q).values
    if pa.size != qa.size:
        raise LengthMismatch(f"lengths differ: {pa.size} vs {qa.size}")
    ps = np.cumsum(np.sort(pa)[::-1])
    qs = np.cumsum(np.sort(qa)[::-1])
    if abs(ps[-1] - qs[-1]) > tol:
        return False
    return bool(np.all(ps >= qs - 1e-12))


@dataclass(frozen=True)
class SchurReport:
    """Outcome of a Schur-concavity probe over majorization pairs."""

    bound_name: str
    theta: float
    checked: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def schur_probe(bound_fn, pairs, theta: float, name: str = "bound",
                tol: float = 1e-9) -> SchurReport:
    """Check bound_fn(q, theta) >= bound_fn(p, theta) - tol whenever p
    majorizes q.

    ``pairs`` is an iterable of (p, q); a pair failing the majorization
    test raises NotAMajorizationPair rather than being skipped silently.
    """
    violations = []
    checked = 0
    for p, q in pairs:
        if not majorizes(p, q):
            raise NotAMajorizationPair(f"p does not majorize q: p={p}, q={q}")
        concentrated = bound_fn(p, theta)
        spread = bound_fn(q, theta)
        checked += 1
        if spread < concentrated - tol:
            violations.append(
                f"{name}(q, {theta}) = {spread} < {name}(p, {theta}) = {concentrated}"
            )
    return SchurReport(bound_name=name, theta=theta, checked=checked,
                       violations=violations)


@dataclass(frozen=True)
class ErrorRateQuery:
    """A marginal, a budget, and which information measure the budget
    constrains.  ``evaluate`` dispatches to the matching lower bound.

    measure: "mi" (theta in bits), "maxcorr" (theta bounds the maximal
    correlation), or "kcorr" (theta bounds the k-correlation; requires k).
    """

    p: ProbabilityVector
    theta: float
    measure: str
    k: int | None = None

    def evaluate(self) -> float:
        if self.theta < 0.0:
            raise NegativeTheta(f"theta must be nonnegative, got {self.theta}")
        if self.measure == "mi":
            return fano_error_rate(self.p, self.theta)
        if self.measure == "maxcorr":
            arr = as_probability_vector(self.p).values
            spread = np.sqrt(max(0.0, 1.0 - float(arr @ arr)))
            raw = 1.0 - arr.max() - self.theta * spread
            return float(max(raw, 0.0))
        if self.measure == "kcorr":
            if self.k is None:
                raise KOutOfRange("measure 'kcorr' requires k")
            return jk_error_rate_lower(self.p, self.theta, self.k)
        raise PiboundsError(f"unknown measure {self.measure!r}")
