"""Exact ground truth and the seeded sweeps that certify every bound.

Nothing in this module is approximate: ``bayes_error`` enumerates the
maximum-likelihood decision per observation, ``mutual_information``
evaluates its defining sum, and the probes measure both sides of an
inequality with the decomposition itself.  The sweep functions draw
seeded random instances, check a bound or a structural inequality on
each, and report violations; a clean report is the package's acceptance
currency.

All sweeps are deterministic given (seed, instance count) and
independent of worker count: per-instance seeds come from spawned seed
sequences and results are reduced in instance order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distributions import (
    DegradationMap,
    JointDistribution,
    StochasticMatrix,
    as_probability_vector,
    degrade,
    joint_from_channel,
    pushforward,
    random_degradation,
    random_joint,
    random_stochastic,
)
from .error_rate import entropy, fano_error_rate
from .errors import PiboundsError, ShapeMismatch, ZeroMarginal
from .fn_bounds import function_bound, min_surjection_error
from .inertia import decompose
from .pe_bounds import InertiaBoundInput, inertia_bound, lp_solve, lp_value


def bayes_error(joint: JointDistribution) -> float:
    """Exact minimum error of guessing X from Y: 1 - sum_y max_x p(x, y).

    Ties in the column maximum are broken toward the smallest index,
    which cannot change the value.  The maxima are accumulated in sorted
    order so the result is bit-identical under row and column
    permutations of the joint.
    """
    return float(1.0 - np.sort(joint.matrix.max(axis=0)).sum())


def function_bayes_error(joint: JointDistribution, assignment,
                         num_classes: int | None = None) -> float:
    """Exact Bayes error of estimating f(X) from Y for a surjective f."""
    return bayes_error(pushforward(joint, assignment, num_classes))


def mutual_information(joint: JointDistribution) -> float:
    """I(X;Y) in bits, straight from its defining sum."""
    px = joint.row_marginal.values
    py = joint.col_marginal.values
    cells = joint.matrix
    mask = cells > 0.0
    ratio = cells[mask] / (np.outer(px, py)[mask])
    return float((cells[mask] * np.log2(ratio)).sum())


@dataclass(frozen=True)
class OracleReport:
    """An exact quantity paired with the bounds it certifies.

    Each certified entry is (label, bound value, slack); the convention
    is slack >= -tolerance when the certificate holds.  ``violations``
    lists human-readable failures; an empty list means the report passed.
    """

    name: str
    quantity_name: str
    quantity_value: float
    certified_bounds: tuple
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def dpi_verify(joint: JointDistribution, dmap: DegradationMap,
               tol: float = 1e-9) -> OracleReport:
    """Measure inertias before and after post-processing of X and check
    the componentwise data-processing ordering.

    Shorter inertia lists are padded with zeros, which is always a valid
    spectrum extension.
    """
    before = decompose(joint).lambdas
    after = decompose(degrade(joint, dmap)).lambdas
    width = max(before.size, after.size)
    before = np.pad(before, (0, width - before.size))
    after = np.pad(after, (0, width - after.size))
    entries = []
    violations = []
    for i in range(width):
        slack = float(before[i] - after[i])
        entries.append((f"inertia_{i + 1}", float(after[i]), slack))
        if slack < -tol:
            violations.append(
                f"inertia_{i + 1} grew under processing: {before[i]} -> {after[i]}"
            )
    margin = min((e[2] for e in entries), default=0.0)
    return OracleReport(name="dpi", quantity_name="min_inertia_margin",
                        quantity_value=float(margin),
                        certified_bounds=tuple(entries),
                        violations=tuple(violations))


def convexity_probe(p, w0: StochasticMatrix, w1: StochasticMatrix,
                    t_grid, k: int, tol: float = 1e-9) -> OracleReport:
    """Check convexity of the k-correlation in the channel.

    For each mixture weight t, the k-correlation of the blended channel
    must not exceed the blend of the endpoint k-correlations.
    """
    if w0.shape != w1.shape:
        raise ShapeMismatch(f"channel shapes differ: {w0.shape} vs {w1.shape}")
    pv = as_probability_vector(p)
    if pv.values.min() <= 0.0:
        raise ZeroMarginal("convexity probe needs a strictly positive input pmf")

    def kcorr(channel: StochasticMatrix) -> float:
        dec = decompose(joint_from_channel(pv, channel))
        return float(dec.lambdas[:k].sum())

    end0 = kcorr(w0)
    end1 = kcorr(w1)
    entries = []
    violations = []
    for t in t_grid:
        blend = StochasticMatrix(t * w0.matrix + (1.0 - t) * w1.matrix)
        mixed = kcorr(blend)
        chord = t * end0 + (1.0 - t) * end1
        slack = float(chord - mixed)
        entries.append((f"t={t:g}", mixed, slack))
        if slack < -tol:
            violations.append(
                f"convexity violated at t={t:g}: mixture {mixed} > chord {chord}"
            )
    margin = min((e[2] for e in entries), default=0.0)
    return OracleReport(name="convexity", quantity_name="min_convexity_margin",
                        quantity_value=float(margin),
                        certified_bounds=tuple(entries),
                        violations=tuple(violations))


# ---------------------------------------------------------------------------
# seeded verification sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepReport:
    name: str
    checked: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": list(self.violations),
            "passed": self.passed,
        }


def _spawn(seed: int, tag: int, index: int, count: int):
    return np.random.SeedSequence([seed, tag, index]).spawn(count)


def _sizes(ss, low: int, high: int, count: int = 2):
    rng = np.random.default_rng(ss)
    return [int(v) for v in rng.integers(low, high + 1, count)]


def _soundness_worker(args) -> list:
    seed, i = args
    ss_size, ss_joint = _spawn(seed, 1, i, 2)
    m, n = _sizes(ss_size, 2, 6)
    joint = random_joint(m, n, ss_joint)
    inp = InertiaBoundInput.from_joint(joint)
    bound = inertia_bound(inp).lower_bound
    exact = bayes_error(joint)
    if bound > exact + 1e-9:
        return [f"instance {i}: inertia bound {bound} exceeds Bayes error {exact}"]
    return []


def _duality_worker(args) -> list:
    seed, i = args
    ss_size, ss_p, ss_lam = _spawn(seed, 2, i, 3)
    (m,) = _sizes(ss_size, 2, 6, 1)
    rng_p = np.random.default_rng(ss_p)
    p = np.sort(rng_p.dirichlet(np.ones(m)))[::-1]
    rng_lam = np.random.default_rng(ss_lam)
    lam = np.sort(rng_lam.uniform(0.0, 1.0, m - 1))[::-1]
    inp = InertiaBoundInput.build(p, lam)
    try:
        solution = lp_solve(inp)
    except PiboundsError as exc:
        return [f"instance {i}: {exc}"]
    reference = lp_value(inp)
    gap = max(abs(solution.primal - solution.dual),
              abs(solution.primal - reference))
    if gap > 1e-9:
        return [f"instance {i}: duality gap {gap}"]
    return []


def _dpi_worker(args) -> list:
    seed, i = args
    ss_size, ss_joint, ss_map = _spawn(seed, 3, i, 3)
    m, n, m_prime = _sizes(ss_size, 2, 6, 3)
    joint = random_joint(m, n, ss_joint)
    dmap = random_degradation(m_prime, m, ss_map)
    report = dpi_verify(joint, dmap)
    return [f"instance {i}: {v}" for v in report.violations]


_CONVEXITY_T_GRID = tuple(round(0.1 * j, 1) for j in range(1, 10))


def _convexity_worker(args) -> list:
    seed, i = args
    ss_size, ss_p, ss_w0, ss_w1 = _spawn(seed, 4, i, 4)
    m, n = _sizes(ss_size, 2, 6)
    p = np.random.default_rng(ss_p).dirichlet(np.ones(m))
    w0 = random_stochastic(m, n, ss_w0)
    w1 = random_stochastic(m, n, ss_w1)
    d = min(m - 1, n - 1)
    violations = []
    for k in sorted({1, d}):
        report = convexity_probe(p, w0, w1, _CONVEXITY_T_GRID, k)
        violations.extend(f"instance {i}, k={k}: {v}" for v in report.violations)
    return violations


def make_majorization_pair(seed: int, index: int) -> tuple[np.ndarray, np.ndarray]:
    """A seeded (p, q) pair with p majorizing q by construction: q is the
    sorted blend of random permutations of p."""
    ss_size, ss_p, ss_perm, ss_weight = _spawn(seed, 5, index, 4)
    (m,) = _sizes(ss_size, 2, 6, 1)
    p = np.sort(np.random.default_rng(ss_p).dirichlet(np.ones(m)))[::-1]
    rng_perm = np.random.default_rng(ss_perm)
    blends = [p[rng_perm.permutation(m)] for _ in range(3)]
    weights = np.random.default_rng(ss_weight).dirichlet(np.ones(3))
    q = np.sort(sum(w * b for w, b in zip(weights, blends)))[::-1]
    return p, q


_SCHUR_THETA_FRACTIONS = (0.0, 0.25, 0.5)


def _schur_worker(args) -> list:
    seed, i = args
    p, q = make_majorization_pair(seed, i)
    violations = []
    h = entropy(p)
    for fraction in _SCHUR_THETA_FRACTIONS:
        theta = fraction * h
        concentrated = fano_error_rate(p, theta)
        spread = fano_error_rate(q, theta)
        if spread < concentrated - 1e-9:
            violations.append(
                f"instance {i}, theta={theta:g}: bound dropped from "
                f"{concentrated} to {spread} despite spreading"
            )
    return violations


def _function_soundness_worker(args) -> list:
    seed, i = args
    ss_size, ss_joint = _spawn(seed, 6, i, 2)
    m, n = _sizes(ss_size, 2, 5)
    joint = random_joint(m, n, ss_joint)
    p_sorted, _ = joint.row_marginal.sorted()
    rho = decompose(joint).maximal_correlation
    info = mutual_information(joint)
    violations = []
    for classes in (2, 3):
        if classes > m:
            continue
        exact = min_surjection_error(joint, classes).value
        for measure, theta in (("maxcorr", rho), ("mi", info)):
            bound = function_bound(p_sorted, theta, classes, measure)
            if exact < bound - 1e-9:
                violations.append(
                    f"instance {i}, M={classes}, {measure}: brute force {exact} "
                    f"below bound {bound}"
                )
    return violations


def _run_indexed(worker, count: int, seed: int, jobs: int) -> list:
    tasks = [(seed, i) for i in range(count)]
    if jobs <= 1:
        batches = [worker(t) for t in tasks]
    else:
        chunk = max(1, count // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(worker, tasks, chunksize=chunk))
    return [violation for batch in batches for violation in batch]


def soundness_sweep(instances: int, seed: int = 42, jobs: int = 1) -> SweepReport:
    """Inertia bound never exceeds the exact Bayes error on random joints."""
    violations = _run_indexed(_soundness_worker, instances, seed, jobs)
    return SweepReport("soundness", instances, violations)


def duality_sweep(instances: int, seed: int = 42, jobs: int = 1) -> SweepReport:
    """Greedy primal, breakpoint dual and closed form agree on random inputs."""
    violations = _run_indexed(_duality_worker, instances, seed, jobs)
    return SweepReport("lp_duality", instances, violations)


def dpi_sweep(instances: int, seed: int = 42, jobs: int = 1) -> SweepReport:
    """Post-processing never raises any principal inertia."""
    violations = _run_indexed(_dpi_worker, instances, seed, jobs)
    return SweepReport("dpi", instances, violations)


def convexity_sweep(pairs: int, seed: int = 42, jobs: int = 1) -> SweepReport:
    """k-correlation of a blended channel stays below the blended value."""
    violations = _run_indexed(_convexity_worker, pairs, seed, jobs)
    return SweepReport("convexity", pairs, violations)


def schur_sweep(pairs: int, seed: int = 42, jobs: int = 1) -> SweepReport:
    """Spreading the marginal never lowers the Fano error bound."""
    violations = _run_indexed(_schur_worker, pairs, seed, jobs)
    return SweepReport("schur", pairs, violations)


def function_soundness_sweep(instances: int, seed: int = 42, jobs: int = 1) -> SweepReport:
    """Brute-force function error dominates the transferred bounds."""
    violations = _run_indexed(_function_soundness_worker, instances, seed, jobs)
    return SweepReport("function_soundness", instances, violations)


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    instances: int
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "seed": self.seed,
            "instances": self.instances,
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }


def run_verification(instances: int = 200, seed: int = 42, jobs: int = 1) -> VerificationReport:
    """Run every certification sweep at sizes scaled from ``instances``."""
    checks = (
        soundness_sweep(instances, seed, jobs),
        duality_sweep(instances, seed, jobs),
        dpi_sweep(max(1, instances // 2), seed, jobs),
        convexity_sweep(max(1, instances // 10), seed, jobs),
        schur_sweep(min(200, instances), seed, jobs),
        function_soundness_sweep(max(1, instances // 5), seed, jobs),
    )
    return VerificationReport(seed=seed, instances=instances, checks=checks)
