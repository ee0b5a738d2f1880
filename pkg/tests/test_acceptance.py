"""Acceptance suite: every criterion is one test that prints a pass line.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
per-criterion lines while passing).  Expected total runtime is well
under five minutes on a laptop.
"""

import numpy as np
import pytest

from pibounds import (
    InertiaBoundInput,
    ace_maxcorr,
    chi_squared_direct,
    decompose,
    fano_error_rate,
    inertia_bound,
    jk_error_rate_lower,
    k_correlation,
    lp_solve,
    lp_value,
    maxcorr_bound,
    total_inertia_spatial,
    uniform_bound,
)
from pibounds.cli import main
from pibounds.oracle import (
    convexity_sweep,
    dpi_sweep,
    duality_sweep,
    function_soundness_sweep,
    schur_sweep,
    soundness_sweep,
)

from conftest import seeded_joints

SEED = 42


def announce(number, text):
    print(f"ACCEPTANCE {number:02d} PASS: {text}")


def test_criterion_01_soundness_sweep():
    report = soundness_sweep(1000, seed=SEED)
    assert report.violations == [], report.violations[:5]
    announce(1, "1000 seeded joints: inertia bound <= exact Bayes error + 1e-9")


def test_criterion_02_remark_reductions():
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        m = int(rng.integers(2, 7))
        p = np.sort(rng.dirichlet(np.ones(m)))[::-1]
        ones = inertia_bound(InertiaBoundInput.build(p, np.ones(m - 1)))
        zeros = inertia_bound(InertiaBoundInput.build(p, np.zeros(m - 1)))
        assert abs(ones.lower_bound) <= 1e-12
        assert abs(zeros.lower_bound - (1.0 - p[0])) <= 1e-12
    announce(2, "all-ones budget collapses to 0; all-zeros gives exactly 1 - p(1)")


def test_criterion_03_lp_duality():
    report = duality_sweep(1000, seed=SEED)
    assert report.violations == [], report.violations[:5]
    worked = InertiaBoundInput.build(
        np.array([0.7, 0.2, 0.1]), np.array([0.5, 0.3])
    )
    solution = lp_solve(worked)
    assert solution.primal == pytest.approx(0.21, abs=1e-12)
    assert solution.dual == pytest.approx(0.21, abs=1e-12)
    assert lp_value(worked) == pytest.approx(0.21, abs=1e-12)
    announce(3, "primal = dual = closed form on 1000 seeds; worked instance 0.21")


def test_criterion_04_decomposition_identities():
    for _, joint in seeded_joints(200, seed=SEED):
        px = joint.row_marginal.values
        py = joint.col_marginal.values
        top = np.linalg.svd(joint.matrix / np.sqrt(np.outer(px, py)),
                            compute_uv=False)[0]
        assert abs(top - 1.0) <= 1e-9
        dec = decompose(joint)
        chi2 = chi_squared_direct(joint)
        assert k_correlation(joint, dec.d) == pytest.approx(chi2, abs=1e-9)
        assert total_inertia_spatial(joint) == pytest.approx(chi2, abs=1e-9)
        assert abs(ace_maxcorr(joint) - dec.maximal_correlation) <= 1e-6
    announce(4, "200 seeds: leading sv = 1, J_d = chi2 = spatial inertia, ACE = rho")


def test_criterion_05_dpi_sweep():
    report = dpi_sweep(500, seed=SEED)
    assert report.violations == [], report.violations[:5]
    announce(5, "500 seeded (joint, map) pairs: componentwise inertia domination")


def test_criterion_06_convexity_sweep():
    report = convexity_sweep(100, seed=SEED)
    assert report.violations == [], report.violations[:5]
    announce(6, "100 channel pairs x 9 mixtures x k in {1, d}: convexity holds")


def test_criterion_07_schur_concavity():
    report = schur_sweep(200, seed=SEED)
    assert report.violations == [], report.violations[:5]
    announce(7, "200 majorization pairs x 3 budgets: Fano bound is Schur-concave")


def test_criterion_08_fano_numerics():
    binary = fano_error_rate(np.array([0.5, 0.5]), 0.5)
    assert binary == pytest.approx(0.1100, abs=1e-3)
    four = fano_error_rate(np.full(4, 0.25), 0.0)
    assert four == pytest.approx(0.75, abs=1e-6)
    announce(8, "binary theta=0.5 gives d*=0.1100; uniform m=4 theta=0 gives 0.75")


def test_criterion_09_function_bound_soundness():
    report = function_soundness_sweep(150, seed=SEED)
    assert report.violations == [], report.violations[:5]
    announce(9, "brute-force function error dominates both transferred bounds")


def grid_search_2x2(p, theta, step=1e-3):
    axis = np.arange(0.0, 1.0 + step / 2, step)
    A, B = np.meshgrid(axis, axis, indexing="ij")
    y1 = p[0] * A + p[1] * B
    y2 = 1.0 - y1
    with np.errstate(divide="ignore", invalid="ignore"):
        cost = p[0] * (A**2 / y1 + (1 - A) ** 2 / y2)
    feasible = np.isfinite(cost) & (cost <= theta + 1.0 + 1e-12)
    objective = 1.0 - (p[0] * A + p[1] * (1 - B))
    return float(objective[feasible].min())


def test_criterion_10_interior_point_vs_grid():
    p = np.array([0.5, 0.5])
    for theta in (0.0, 0.1, 0.25, 0.5, 1.0):
        solver = jk_error_rate_lower(p, theta, 1)
        grid = grid_search_2x2(p, theta)
        assert abs(solver - grid) <= 1e-3
    announce(10, "m=2, k=1: interior point matches the 1e-3 grid at five budgets")


def test_criterion_11_corollary_collapse():
    rng = np.random.default_rng(SEED)
    for _ in range(100):
        m = int(rng.integers(2, 7))
        p = np.sort(rng.dirichlet(np.ones(m)))[::-1]
        lam1 = float(rng.uniform(0.0, 1.0))
        full = inertia_bound(InertiaBoundInput.build(p, np.full(m - 1, lam1)))
        single = maxcorr_bound(p, lam1)
        assert abs(full.lower_bound - single.value) <= 1e-9
    assert uniform_bound(4, 0.0, "chi2") == pytest.approx(0.75, abs=1e-9)
    assert uniform_bound(4, 1.0, "chi2") == pytest.approx(
        1.0 - 0.25 - np.sqrt(3.0) / 4.0, abs=1e-9
    )
    assert uniform_bound(4, 3.0, "chi2") == pytest.approx(0.0, abs=1e-9)
    announce(11, "constant-budget bound equals the optimized single-inertia form")


def test_criterion_12_verify_determinism(capsys):
    code_first = main(["verify", "--seed", "42"])
    first = capsys.readouterr().out
    code_second = main(["verify", "--seed", "42"])
    second = capsys.readouterr().out
    assert code_first == 0 and code_second == 0
    assert first == second
    announce(12, "verify --seed 42 produces byte-identical passing reports")
