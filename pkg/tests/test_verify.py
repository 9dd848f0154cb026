import math

import numpy as np
import pytest
from scipy.optimize import brentq

from subexp.bounds import DegenerateProfileError
from subexp.dist import CenteredExponential, Discrete, Laplace, Uniform, point_mass, rademacher
from subexp.orlicz import PSI1, PSI11, orlicz_norm
from subexp.special import constant_C
from subexp.verify import (
    AsymptoticCheck,
    CampaignReport,
    check_psi1_asymptotic,
    check_psi11_asymptotic,
    domination_campaign,
    reference_tail,
)

GRID = [1e-2, 1e-3, 1e-4]
LAWS = [rademacher(), Uniform(-1.0, 1.0), Laplace(1.0)]


class TestAsymptoticCheck:
    def test_errors(self):
        chk = AsymptoticCheck("q", [1.0, 0.1, 0.01], 2.0, [2.5, 1.9, 2.01])
        np.testing.assert_allclose(chk.errors, [0.5, 0.1, 0.01])
        np.testing.assert_allclose(chk.relative_errors, [0.25, 0.05, 0.005])
        assert chk.converging()
        assert not AsymptoticCheck("q", [1, 2, 3], 0.0, [1.0, 0.5, 0.7]).converging()

    @pytest.mark.parametrize("d", LAWS, ids=["rademacher", "uniform", "laplace"])
    def test_psi1_limit(self, d):
        chk = check_psi1_asymptotic(d, GRID)
        assert chk.limit == pytest.approx(d.abs_mean, rel=1e-15)
        assert chk.relative_errors[-1] <= 0.02
        assert chk.converging()

    @pytest.mark.parametrize("d", LAWS, ids=["rademacher", "uniform", "laplace"])
    def test_psi11_limit(self, d):
        chk = check_psi11_asymptotic(d, GRID)
        assert chk.limit == pytest.approx(math.sqrt(d.second_moment / 2.0), rel=1e-15)
        assert chk.relative_errors[-1] <= 0.02
        assert chk.converging()

    def test_rademacher_psi1_closed_form(self):
        chk = check_psi1_asymptotic(rademacher(), GRID)
        np.testing.assert_allclose(chk.observed, [e / math.log1p(e) for e in GRID], rtol=1e-9)

    def test_laplace_closed_forms(self):
        # E psi1(s|X|) = s/(1-s) and E psi11(s|X|) = s^2/(1-s) for Laplace(1)
        d = Laplace(1.0)
        np.testing.assert_allclose(check_psi1_asymptotic(d, GRID).observed, [1 + e for e in GRID], rtol=1e-8)
        s = [(-e + math.sqrt(e * e + 4 * e)) / 2 for e in GRID]
        expected = [math.sqrt(e) / si for e, si in zip(GRID, s)]
        np.testing.assert_allclose(check_psi11_asymptotic(d, GRID).observed, expected, rtol=1e-8)

    def test_rademacher_psi11_root_oracle(self):
        for e in GRID:
            u = brentq(lambda t: math.expm1(t) - t - e, 1e-12, 10.0, xtol=1e-15, rtol=1e-15)
            got = check_psi11_asymptotic(rademacher(), [e]).observed[0]
            assert got == pytest.approx(math.sqrt(e) / u, rel=1e-9)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            check_psi1_asymptotic(rademacher(), [])
        with pytest.raises(ValueError):
            check_psi11_asymptotic(rademacher(), [0.1, -1.0])
        with pytest.raises(ValueError):
            check_psi11_asymptotic(point_mass(0.0), GRID)


class TestNormRatioVanishes:
    @pytest.mark.parametrize("d", LAWS + [CenteredExponential(1.0)])
    def test_ratio(self, d):
        r2 = orlicz_norm(d, PSI11, 1e-2).value / orlicz_norm(d, PSI1, 1e-2).value
        r4 = orlicz_norm(d, PSI11, 1e-4).value / orlicz_norm(d, PSI1, 1e-4).value
        assert r4 < 0.05
        assert r4 < r2


class TestMagnitudes:
    def test_uniform(self):
        u = Uniform(-1.0, 1.0)
        ratio = (orlicz_norm(u, PSI1).value / orlicz_norm(u, PSI11).value) ** 2
        assert 0.1 ** ratio == pytest.approx(0.006091, abs=1e-6)

    def test_rademacher(self):
        assert 0.1 ** (constant_C() ** 2) == pytest.approx(0.001843, abs=1e-6)


class TestReferenceTail:
    def test_exact_for_rademacher(self):
        tail, se, oracle = reference_tail([rademacher()] * 10, [0.0, 10.0])
        assert oracle == "exact"
        np.testing.assert_allclose(tail, [0.623046875, 2.0 ** -10], rtol=1e-14)
        assert np.all(se == 0)

    def test_zero_summands_ignored_by_exact(self):
        tail, _, oracle = reference_tail([rademacher(), point_mass(0.0), rademacher()], [0.0, 2.0])
        assert oracle == "exact"
        np.testing.assert_allclose(tail, [0.75, 0.25])

    def test_all_zero(self):
        tail, _, _ = reference_tail([point_mass(0.0)] * 3, [0.0, 0.5])
        np.testing.assert_array_equal(tail, [1.0, 0.0])

    def test_monte_carlo(self):
        xs = np.array([0.0, 1.0])
        tail, se, oracle = reference_tail([Uniform()] * 2, xs, mc_reps=200_000, seed=3)
        assert oracle == "monte-carlo"
        # sum of two U[-1,1]: triangular on [-2,2], P(S >= 1) = 1/8
        exact = np.array([0.5, 0.125])
        assert np.all(np.abs(tail - exact) <= 4 * se)

    def test_monte_carlo_reproducible(self):
        a = reference_tail([Laplace()] * 5, [0.0, 2.0], mc_reps=10_000, seed=8)[0]
        b = reference_tail([Laplace()] * 5, [0.0, 2.0], mc_reps=10_000, seed=8)[0]
        np.testing.assert_array_equal(a, b)


class TestCampaign:
    def test_rademacher_n10(self):
        xs = np.linspace(0, 3 * math.sqrt(10), 61)
        rep = domination_campaign(rademacher(), 10, [0.1, 0.3, 1.0], xs)
        assert isinstance(rep, CampaignReport)
        assert rep.oracle == "exact"
        assert rep.ok, rep.summary()
        # 3 eps * 4 families + chafai + classical, one row per x
        assert len(rep.rows) == (3 * 4 + 2) * xs.size

    def test_uniform_mc_small(self):
        xs = np.linspace(0, 3 * math.sqrt(20), 31)
        rep = domination_campaign(Uniform(), 20, [1.0], xs, mc_reps=50_000, seed=1)
        assert rep.oracle == "monte-carlo"
        assert rep.ok, rep.summary()

    def test_mixed_point_mass(self):
        summands = [rademacher()] * 5 + [point_mass(0.0)]
        rep = domination_campaign(summands, None, [0.3, 1.0], np.linspace(0, 6, 25))
        assert rep.ok
        assert rep.n == 6
        assert any("zero" in note for note in rep.notes)

    def test_all_zero_is_degenerate(self):
        with pytest.raises(DegenerateProfileError):
            domination_campaign(point_mass(0.0), 4, [1.0], [0.0, 1.0])

    def test_rejects_noncentered(self):
        with pytest.raises(ValueError):
            domination_campaign(Discrete((0.0, 1.0), (0.5, 0.5)), 3, [1.0], [0.0])

    def test_detects_a_broken_bound(self, monkeypatch):
        import subexp.verify as v

        monkeypatch.setattr(v, "log_tail_bound_piecewise", lambda x, p: np.full(np.shape(x), -50.0))
        rep = v.domination_campaign(rademacher(), 5, [1.0], [0.0, 1.0])
        assert not rep.ok
        kinds = {(viol.kind, viol.family) for viol in rep.violations}
        assert ("reference", "piecewise-psi11") in kinds
        assert "VIOLATION" in rep.summary()

    def test_csv(self):
        rep = domination_campaign(rademacher(), 5, [1.0], [0.0, 1.0])
        text = rep.to_csv()
        lines = text.split("\n")
        assert lines[0] == "eps,family,x,reference,reference_se,bound,log_bound,ok"
        assert len(lines) == len(rep.rows) + 2 and lines[-1] == ""
        assert "\r" not in text
