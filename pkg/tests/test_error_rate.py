import numpy as np
import pytest

from pibounds import (
    ErrorRateQuery,
    binary_entropy,
    entropy,
    fano_error_rate,
    jk_error_rate_lower,
    majorizes,
    schur_probe,
)
from pibounds.distributions import as_probability_vector
from pibounds.error_rate import (
    _constraint_gradient,
    _constraint_hessian,
    _constraint_value,
)
from pibounds.errors import (
    DegenerateSupportWarning,
    KOutOfRange,
    LengthMismatch,
    NegativeTheta,
    NotAMajorizationPair,
)
from pibounds.oracle import make_majorization_pair


class TestEntropy:
    def test_uniform_binary(self):
        assert entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)

    def test_point_mass(self):
        assert entropy([1.0, 0.0]) == 0.0

    def test_skewed(self):
        assert entropy([0.9, 0.1]) == pytest.approx(0.4689955935892812, abs=1e-12)

    def test_binary_entropy_symmetry(self):
        for d in (0.1, 0.25, 0.4):
            assert binary_entropy(d) == pytest.approx(binary_entropy(1 - d), abs=1e-15)


class TestFanoErrorRate:
    def test_vacuous_budget(self):
        assert fano_error_rate([0.6, 0.4], theta=5.0) == 0.0

    def test_binary_uniform_half_bit(self):
        # solves h_b(d) = 0.5; the log(M-1) term vanishes for M = 2
        d_star = fano_error_rate([0.5, 0.5], theta=0.5)
        assert d_star == pytest.approx(0.11002786443835955, abs=1e-6)
        assert binary_entropy(d_star) == pytest.approx(0.5, abs=1e-9)

    def test_uniform_four_zero_budget(self):
        # h_b(0.75) + 0.75 log2(3) = 2 exactly: the blind-guess error
        d_star = fano_error_rate([0.25, 0.25, 0.25, 0.25], theta=0.0)
        assert d_star == pytest.approx(0.75, abs=1e-6)

    def test_zero_budget_below_blind_error(self):
        rng = np.random.default_rng(77)
        for _ in range(40):
            p = np.sort(rng.dirichlet(np.ones(rng.integers(2, 7))))[::-1]
            assert fano_error_rate(p, 0.0) <= 1.0 - p[0] + 1e-9

    def test_monotone_and_convex_in_theta(self):
        p = np.array([0.4, 0.3, 0.2, 0.1])
        grid = np.linspace(0.0, entropy(p), 25)
        values = [fano_error_rate(p, float(t)) for t in grid]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
        chords = [values[i - 1] + values[i + 1] - 2 * values[i]
                  for i in range(1, len(values) - 1)]
        assert all(c >= -1e-9 for c in chords)

    def test_single_support_flagged(self):
        with pytest.warns(DegenerateSupportWarning):
            assert fano_error_rate([1.0, 0.0], theta=0.0) == 0.0

    def test_negative_theta(self):
        with pytest.raises(NegativeTheta):
            fano_error_rate([0.5, 0.5], theta=-0.1)


class TestConstraintCalculus:
    """Finite-difference oracle for the solver's exact derivatives."""

    def setup_method(self):
        rng = np.random.default_rng(13)
        self.m = 4
        self.k = 2
        self.p = rng.dirichlet(np.ones(self.m))
        raw = rng.uniform(0.2, 1.0, (self.m, self.m))
        self.P = raw / raw.sum(axis=1, keepdims=True)

    def test_gradient_matches_finite_differences(self):
        grad = _constraint_gradient(self.P, self.p, self.k)
        eps = 1e-7
        for a in range(self.m):
            for b in range(self.m):
                bump = np.zeros_like(self.P)
                bump[a, b] = eps
                fd = (
                    _constraint_value(self.P + bump, self.p, self.k, 0.0)
                    - _constraint_value(self.P - bump, self.p, self.k, 0.0)
                ) / (2 * eps)
                assert grad[a, b] == pytest.approx(fd, abs=1e-6)

    def test_hessian_matches_finite_differences(self):
        # row a*m+b of the dense Hessian is the derivative of the whole
        # gradient with respect to P[a, b]
        hess = _constraint_hessian(self.P, self.p, self.k)
        eps = 1e-6
        for a in range(self.m):
            for b in range(self.m):
                bump = np.zeros_like(self.P)
                bump[a, b] = eps
                fd = (
                    _constraint_gradient(self.P + bump, self.p, self.k)
                    - _constraint_gradient(self.P - bump, self.p, self.k)
                ) / (2 * eps)
                np.testing.assert_allclose(
                    hess[a * self.m + b].reshape(self.m, self.m), fd, atol=1e-5
                )


def grid_search_2x2(p, theta, step=1e-3):
    """Exhaustive search over 2x2 guessing channels at the given resolution."""
    a = np.arange(0.0, 1.0 + step / 2, step)
    b = np.arange(0.0, 1.0 + step / 2, step)
    A, B = np.meshgrid(a, b, indexing="ij")
    y1 = p[0] * A + p[1] * B
    y2 = 1.0 - y1
    with np.errstate(divide="ignore", invalid="ignore"):
        cost = p[0] * (A**2 / y1 + (1 - A) ** 2 / y2)
    feasible = np.isfinite(cost) & (cost <= theta + 1.0 + 1e-12)
    objective = 1.0 - (p[0] * A + p[1] * (1 - B))
    return float(objective[feasible].min())


class TestJkErrorRate:
    def test_identity_feasible_budget_gives_zero(self):
        # k = 1 admits the identity channel at any nonnegative budget
        assert jk_error_rate_lower([0.5, 0.5], 0.5, 1) <= 1e-6

    def test_matches_grid_at_tight_budget(self):
        value = jk_error_rate_lower([0.5, 0.5], 0.0, 1)
        assert abs(value - grid_search_2x2([0.5, 0.5], 0.0)) <= 1e-3

    def test_below_bsc_bayes_error(self, bsc_joint):
        from pibounds import bayes_error, decompose

        theta = float(decompose(bsc_joint).lambdas[0])
        value = jk_error_rate_lower([0.5, 0.5], theta, 1)
        assert value <= bayes_error(bsc_joint) + 1e-3

    def test_monotone_in_theta(self):
        p = np.array([0.5, 0.3, 0.2])
        values = [jk_error_rate_lower(p, t, 2) for t in (0.0, 0.25, 0.5, 1.0)]
        assert all(b <= a + 1e-6 for a, b in zip(values, values[1:]))

    def test_bad_inputs(self):
        with pytest.raises(NegativeTheta):
            jk_error_rate_lower([0.5, 0.5], -1.0, 1)
        with pytest.raises(KOutOfRange):
            jk_error_rate_lower([0.5, 0.5], 0.0, 2)


class TestMajorizes:
    def test_point_mass_majorizes_everything(self):
        assert majorizes([1.0, 0.0], [0.5, 0.5])
        assert not majorizes([0.5, 0.5], [1.0, 0.0])

    def test_reflexive(self):
        assert majorizes([0.6, 0.4], [0.6, 0.4])

    def test_prefix_sums_with_rounding(self):
        # 0.6 + 0.3 and 0.5 + 0.4 differ by one ulp; tolerance must absorb it
        assert majorizes([0.6, 0.3, 0.1], [0.5, 0.4, 0.1])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            majorizes([0.5, 0.5], [0.5, 0.3, 0.2])

    def test_constructed_pairs(self):
        for i in range(50):
            p, q = make_majorization_pair(seed=9, index=i)
            assert majorizes(p, q)


class TestSchurProbe:
    def test_uniform_spread_raises_fano_bound(self):
        # the point mass triggers the degenerate-support convention
        with pytest.warns(DegenerateSupportWarning):
            report = schur_probe(fano_error_rate, [([1.0, 0.0], [0.5, 0.5])],
                                 theta=0.2, name="fano")
        assert report.passed and report.checked == 1

    def test_equal_pair_passes_with_equality(self):
        p = [0.7, 0.3]
        report = schur_probe(fano_error_rate, [(p, p)], theta=0.1)
        assert report.passed

    def test_rejects_non_majorization_pair(self):
        with pytest.raises(NotAMajorizationPair):
            schur_probe(fano_error_rate, [([0.5, 0.5], [1.0, 0.0])], theta=0.1)

    def test_constructed_pairs_have_no_violations(self):
        pairs = [make_majorization_pair(seed=10, index=i) for i in range(50)]
        pairs = [(p, q) for p, q in pairs if len(p) == len(q)]
        report = schur_probe(fano_error_rate, pairs, theta=0.25)
        assert report.passed


class TestErrorRateQuery:
    def test_mi_dispatch(self):
        query = ErrorRateQuery(as_probability_vector([0.5, 0.5]), 0.5, "mi")
        assert query.evaluate() == pytest.approx(0.11002786443835955, abs=1e-6)

    def test_maxcorr_dispatch(self):
        query = ErrorRateQuery(as_probability_vector([0.5, 0.5]), 0.0, "maxcorr")
        assert query.evaluate() == pytest.approx(0.5, abs=1e-12)

    def test_kcorr_dispatch(self):
        query = ErrorRateQuery(as_probability_vector([0.5, 0.5]), 0.5, "kcorr", k=1)
        assert query.evaluate() <= 1e-6
