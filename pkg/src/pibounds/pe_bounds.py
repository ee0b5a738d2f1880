"""Lower bounds on the Bayes error of guessing X from Y, driven by the
marginal of X and the principal inertias of the pair.

The central quantity: for a canonical (non-increasing) marginal p and
componentwise upper bounds lambda_1 >= ... >= lambda_{m-1} on the
principal inertias, the probability of a correct guess is at most

    U1(p, lambda) = min_{0 <= beta <= p(2)}  beta + sqrt(g0(beta)),
    g0(beta)      = f*(p, lambda) + sum_i ([p(i) - beta]^+)^2,

so the Bayes error satisfies P_e >= 1 - U1.  Here f*(p, lambda) is the
optimum of a small linear program that allocates the total spread
1 - p.p across the inertia weights subject to interlacing box
constraints; it admits a closed form controlled by the crossover index
k* (the last position whose mass still exceeds the collision
probability p.p).

``lp_solve`` keeps the LP honest by computing the greedy primal
allocation and the dual breakpoint minimum independently and insisting
all three values agree.  ``maxcorr_bound`` is the special case where
only the largest inertia is known; ``uniform_bound`` the special case
of uniform p; ``advantage_bound`` turns the same inequality into an
upper bound on how much an observer can beat blind guessing.

Bounds are clamped to [0, 1] at the API boundary; raw pre-clamp values
are kept in the result objects because vacuous (negative) bounds are
still informative in parameter sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ProbabilityVector, as_probability_vector
from .errors import (
    InfeasibleBox,
    InvalidInertia,
    LengthMismatch,
    NotCanonical,
    PiboundsError,
)

_TOL = 1e-12


def _require_canonical(p) -> ProbabilityVector:
    pv = as_probability_vector(p)
    if not pv.canonical:
        raise NotCanonical("marginal must be sorted non-increasing")
    return pv


def _check_lambda1(lambda1: float) -> float:
    if not -1e-9 <= lambda1 <= 1.0 + 1e-9:
        raise InvalidInertia(f"lambda1 = {lambda1} outside [0, 1]")
    return float(min(max(lambda1, 0.0), 1.0))


@dataclass(frozen=True)
class InertiaBoundInput:
    """Canonical marginal plus a full-length inertia budget.

    ``lambdas`` must have exactly m - 1 entries, non-increasing in
    [0, 1].  When fewer components are known, construct through
    :meth:`build` and choose the padding explicitly: ``fill="zeros"``
    means only the top components are known (the rest are zero),
    ``fill="replicate"`` means only the maximal correlation is known and
    every component is budgeted at lambda_1.  There is no silent
    default.
    """

    p: ProbabilityVector
    lambdas: np.ndarray

    def __post_init__(self):
        pv = _require_canonical(self.p)
        lam = np.asarray(self.lambdas, dtype=float).reshape(-1)
        if lam.size != len(pv) - 1:
            raise LengthMismatch(
                f"need exactly {len(pv) - 1} inertia entries, got {lam.size}; "
                "use InertiaBoundInput.build to pad explicitly"
            )
        if lam.size and (lam.min() < -1e-9 or lam.max() > 1.0 + 1e-9):
            raise InvalidInertia(f"inertias outside [0, 1]: {lam}")
        if lam.size and np.any(np.diff(lam) > 1e-9):
            raise InvalidInertia(f"inertias must be non-increasing: {lam}")
        lam = np.clip(lam, 0.0, 1.0)
        if lam.size:
            lam = np.minimum.accumulate(lam)
        lam.setflags(write=False)
        object.__setattr__(self, "p", pv)
        object.__setattr__(self, "lambdas", lam)

    @classmethod
    def build(cls, p, lambdas, fill: str | None = None) -> "InertiaBoundInput":
        pv = _require_canonical(p)
        lam = np.asarray(lambdas, dtype=float).reshape(-1)
        need = len(pv) - 1
        if lam.size > need:
            raise LengthMismatch(f"got {lam.size} inertia entries for m = {len(pv)}")
        if lam.size < need:
            if fill == "zeros":
                lam = np.concatenate([lam, np.zeros(need - lam.size)])
            elif fill == "replicate":
                if lam.size != 1:
                    raise LengthMismatch(
                        "fill='replicate' expects a single maximal-correlation entry"
                    )
                lam = np.full(need, lam[0])
            else:
                raise LengthMismatch(
                    f"{lam.size} < {need} inertia entries; pass fill='zeros' "
                    "or fill='replicate'"
                )
        return cls(p=pv, lambdas=lam)

    @classmethod
    def from_joint(cls, joint) -> "InertiaBoundInput":
        """Sorted marginal and measured inertias of a joint distribution."""
        from .inertia import decompose

        pv, _ = joint.row_marginal.sorted()
        return cls.build(pv, decompose(joint).lambdas, fill="zeros")


@dataclass(frozen=True)
class BoundResult:
    """A lower bound on the Bayes error plus the certificate reaching it.

    ``lower_bound`` is clamped to [0, 1]; ``raw_bound = 1 - pc_upper`` is
    kept unclamped for diagnostics.  ``pc_upper`` is the minimized upper
    envelope on the probability of a correct guess, attained at
    ``beta_star``; ``lp_value`` is the inner LP optimum, whose dual is
    minimized at ``alpha_star`` with crossover index ``k_star``.
    """

    lower_bound: float
    raw_bound: float
    pc_upper: float
    beta_star: float
    alpha_star: float
    k_star: int
    lp_value: float


@dataclass(frozen=True)
class LpSolution:
    """Primal and dual optima of the spread-allocation LP, with witness."""

    primal: float
    dual: float
    sigma: np.ndarray


@dataclass(frozen=True)
class MaxCorrBound:
    """Bound from the maximal correlation alone.

    ``value`` optimizes the envelope over beta (or evaluates the supplied
    beta); ``weak_value`` is the closed form 1 - p(1) - rho sqrt(1 - p.p),
    never better but algebraically transparent.
    """

    value: float
    raw_value: float
    beta_star: float
    weak_value: float
    weak_raw: float


def crossover_index(p) -> int:
    """Largest k (1-based) with p(k) >= p.p, the collision probability.

    Always at least 1 for a canonical vector, and m exactly when p is
    uniform.
    """
    pv = _require_canonical(p)
    ptp = float(pv.values @ pv.values)
    return int(np.count_nonzero(pv.values >= ptp - _TOL))


def lp_dual_objective(alpha: float, inp: InertiaBoundInput) -> float:
    """Dual objective of the spread LP at multiplier ``alpha``.

    Piecewise linear and convex in alpha, with the inner dual variables
    eliminated at their optimum [lambda_i - alpha]^+; every alpha gives a
    valid upper bound on the LP value.
    """
    p = inp.p.values
    lam = inp.lambdas
    ptp = float(p @ p)
    c = np.concatenate([np.maximum(lam - alpha, 0.0), [0.0]])
    tail = float(np.sum(p[1:] * (lam + c[1:] - c[:-1])))
    return tail + p[0] * (c[0] + alpha) - alpha * ptp


def lp_value(inp: InertiaBoundInput) -> float:
    """Closed-form optimum of the spread LP.

    With k* the crossover index and lambda_m := 0,

        f* = sum_{i <= k*} lambda_i p(i)
           + sum_{i > k*} lambda_{i-1} p(i)
           - lambda_{k*} p.p .

    Equals both the greedy primal value and min_alpha of the dual
    objective (checked by ``lp_solve``).
    """
    p = inp.p.values
    ptp = float(p @ p)
    k = crossover_index(inp.p)
    lam_ext = np.concatenate([inp.lambdas, [0.0]])
    head = float(np.sum(lam_ext[:k] * p[:k]))
    tail = float(np.sum(lam_ext[k - 1:-1] * p[k:]))
    return head + tail - lam_ext[k - 1] * ptp


def lp_solve(inp: InertiaBoundInput) -> LpSolution:
    """Solve the spread LP by greedy allocation and verify strong duality.

    maximize    sum_i lambda_i sigma_i
    subject to  sum_i sigma_i = 1 - p.p,
                p(i+1) <= sigma_i <= p(i).

    Because lambda is non-increasing, filling each sigma_i to its upper
    bound in index order (after placing every lower bound) is optimal.
    The dual is evaluated on the breakpoint set {lambda_i} U {0, 1},
    which is exact by piecewise linearity.  Raises InfeasibleBox if the
    box cannot meet the budget (impossible for a valid canonical p) and
    PiboundsError if primal, dual and the closed form disagree beyond
    1e-9.
    """
    p = inp.p.values
    lam = inp.lambdas
    budget = 1.0 - float(p @ p)
    lower = p[1:].copy()
    upper = p[:-1]
    if lower.sum() > budget + 1e-9 or upper.sum() < budget - 1e-9:
        raise InfeasibleBox(
            f"box [{lower.sum()}, {upper.sum()}] cannot meet budget {budget}"
        )
    sigma = lower
    slack = budget - sigma.sum()
    for i in range(sigma.size):
        step = min(upper[i] - sigma[i], slack)
        if step > 0.0:
            sigma[i] += step
            slack -= step
    primal = float(lam @ sigma)

    candidates = np.unique(np.concatenate([lam, [0.0, 1.0]]))
    delta = p[:-1] - p[1:]
    gamma = lam * p[1:]
    best = np.inf
    for alpha in candidates:
        y = np.maximum(lam - alpha, 0.0)
        value = alpha * (p[0] - float(p @ p)) + float(np.sum(delta * y + gamma))
        best = min(best, value)
    dual = float(best)

    reference = lp_value(inp)
    if abs(primal - dual) > 1e-9 or abs(primal - reference) > 1e-9:
        raise PiboundsError(
            f"LP consistency failure: primal {primal}, dual {dual}, "
            f"closed form {reference}"
        )
    sigma.setflags(write=False)
    return LpSolution(primal=primal, dual=dual, sigma=sigma)


def _envelope(p: np.ndarray, base: float, beta: float) -> float:
    g0 = base + float(np.sum(np.maximum(p - beta, 0.0) ** 2))
    return beta + np.sqrt(g0)


def _minimize_envelope(p: np.ndarray, base: float) -> tuple[float, float]:
    """Exact minimum of beta + sqrt(base + sum([p_i - beta]^+)^2) on [0, p(2)].

    On each interval between consecutive mass values the active set
    {i : p(i) > beta} is fixed and the radicand is a quadratic in beta, so
    stationarity reduces to a quadratic equation solved in closed form.
    Candidates are those interior roots plus every breakpoint; no grid is
    involved, so no grid tolerance enters the certified bound.
    """
    m = p.size
    if m == 1:
        return _envelope(p, base, 0.0), 0.0
    beta_cap = p[1]
    breakpoints = {0.0, float(beta_cap)}
    breakpoints.update(float(v) for v in p[1:] if v <= beta_cap)
    candidates = sorted(breakpoints)

    prefix = np.concatenate([[0.0], np.cumsum(p)])
    prefix_sq = np.concatenate([[0.0], np.cumsum(p**2)])
    extra = []
    for lo, hi in zip(candidates[:-1], candidates[1:]):
        if hi - lo <= _TOL:
            continue
        j = int(np.count_nonzero(p > 0.5 * (lo + hi)))
        if j < 2:
            continue
        s, q = prefix[j], prefix_sq[j]
        a = j * (j - 1)
        b = -2.0 * s * (j - 1)
        c = s * s - q - base
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            continue
        root_disc = np.sqrt(disc)
        for root in ((-b - root_disc) / (2 * a), (-b + root_disc) / (2 * a)):
            if lo - _TOL <= root <= hi + _TOL:
                extra.append(float(min(max(root, lo), hi)))
    candidates.extend(extra)

    values = [(_envelope(p, base, beta), beta) for beta in sorted(candidates)]
    best_value, best_beta = min(values, key=lambda pair: pair[0])
    return float(best_value), float(best_beta)


def inertia_bound(inp: InertiaBoundInput) -> BoundResult:
    """Lower bound on the Bayes error from the full inertia budget.

    Two sanity anchors: an all-ones budget collapses the bound to 0
    (nothing can be ruled out), an all-zeros budget yields exactly
    1 - p(1) (observation is useless, blind guessing is optimal).
    """
    p = inp.p.values
    base = max(0.0, lp_value(inp))
    pc_upper, beta_star = _minimize_envelope(p, base)
    raw = 1.0 - pc_upper
    k_star = crossover_index(inp.p)
    lam_ext = np.concatenate([inp.lambdas, [0.0]])
    return BoundResult(
        lower_bound=float(min(max(raw, 0.0), 1.0)),
        raw_bound=float(raw),
        pc_upper=float(pc_upper),
        beta_star=beta_star,
        alpha_star=float(lam_ext[k_star - 1]),
        k_star=k_star,
        lp_value=float(base),
    )


def maxcorr_bound(p, lambda1: float, beta: float | None = None) -> MaxCorrBound:
    """Bound on the Bayes error when only the largest inertia is known.

    Specializing the spread LP to a constant budget gives
    f* = lambda_1 (1 - p.p), so for any beta >= 0

        P_e >= 1 - beta - sqrt(lambda_1 (1 - p.p) + sum([p_i - beta]^+)^2),

    optimized exactly over beta in [0, p(2)] when ``beta`` is omitted.
    """
    pv = _require_canonical(p)
    lam1 = _check_lambda1(lambda1)
    arr = pv.values
    ptp = float(arr @ arr)
    base = lam1 * max(0.0, 1.0 - ptp)
    if beta is not None:
        if beta < 0.0:
            raise PiboundsError(f"beta must be nonnegative, got {beta}")
        pc_upper, beta_star = _envelope(arr, base, beta), float(beta)
    else:
        pc_upper, beta_star = _minimize_envelope(arr, base)
    raw = 1.0 - pc_upper
    weak_raw = 1.0 - arr[0] - np.sqrt(lam1) * np.sqrt(max(0.0, 1.0 - ptp))
    return MaxCorrBound(
        value=float(min(max(raw, 0.0), 1.0)),
        raw_value=float(raw),
        beta_star=beta_star,
        weak_value=float(min(max(weak_raw, 0.0), 1.0)),
        weak_raw=float(weak_raw),
    )


def uniform_bound(m: int, value: float, measure: str = "chi2", clamp: bool = True) -> float:
    """Bound on the Bayes error for uniform X on m outcomes.

    ``measure="chi2"`` takes the chi-square statistic and evaluates
    1 - 1/m - sqrt((m-1) chi2)/m; ``measure="lambda1"`` takes the largest
    inertia and evaluates 1 - 1/m - sqrt(lambda_1)(1 - 1/m).
    """
    if m < 2:
        raise PiboundsError(f"need m >= 2, got {m}")
    if value < 0.0:
        raise PiboundsError(f"measure value must be nonnegative, got {value}")
    if measure == "chi2":
        raw = 1.0 - 1.0 / m - np.sqrt((m - 1) * value) / m
    elif measure == "lambda1":
        raw = 1.0 - 1.0 / m - np.sqrt(_check_lambda1(value)) * (1.0 - 1.0 / m)
    else:
        raise PiboundsError(f"unknown measure {measure!r}; use 'chi2' or 'lambda1'")
    return float(max(raw, 0.0)) if clamp else float(raw)


def advantage_bound(p, lambda1: float) -> float:
    """Upper bound on the advantage over blind guessing.

    The best estimator beats always answering the most likely outcome by
    at most rho sqrt(1 - p.p) with rho the maximal correlation, so the
    advantage shrinks at least linearly in rho.
    """
    pv = _require_canonical(p)
    lam1 = _check_lambda1(lambda1)
    ptp = float(pv.values @ pv.values)
    return float(np.sqrt(lam1) * np.sqrt(max(0.0, 1.0 - ptp)))
