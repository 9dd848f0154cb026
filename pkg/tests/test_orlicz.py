import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subexp.dist import Discrete, Distribution, Laplace, Uniform, independent_sum, point_mass, rademacher
from subexp.orlicz import PSI1, PSI11, NormResult, eval_orlicz, get_orlicz, orlicz_norm
from subexp.special import constant_C, u_star

mpmath.mp.dps = 40

U_GRID = np.concatenate(
    [[0.0, 1e-300, 1e-20, 1e-9], np.logspace(-8, 0, 200), np.linspace(0.45, 0.55, 41), np.linspace(1, 700, 300)]
)


def _rel_err(got, ref):
    ref = mpmath.mpf(ref)
    if ref == 0:
        return abs(got)
    return float(abs((mpmath.mpf(got) - ref) / ref))


class TestOrliczFunctions:
    def test_zero(self):
        assert eval_orlicz(PSI1, 0.0) == 0.0
        assert eval_orlicz(PSI11, 0.0) == 0.0

    def test_psi1_at_ln2(self):
        assert eval_orlicz(PSI1, math.log(2.0)) == pytest.approx(1.0, rel=1e-15)

    def test_psi11_tiny_argument(self):
        # extended-precision series oracle: u^2/2 + u^3/6 + ...
        u = 1e-9
        ref = mpmath.mpf(u) ** 2 / 2 + mpmath.mpf(u) ** 3 / 6
        assert _rel_err(float(eval_orlicz(PSI11, u)), ref) <= 1e-14

    @pytest.mark.parametrize("f, ref", [(PSI1, lambda u: mpmath.expm1(u)), (PSI11, lambda u: mpmath.expm1(u) - u)])
    def test_relative_accuracy(self, f, ref):
        vals = eval_orlicz(f, U_GRID)
        worst = max(_rel_err(float(v), ref(mpmath.mpf(float(u)))) for u, v in zip(U_GRID, vals))
        assert worst <= 1e-14

    def test_ordering(self):
        assert np.all(eval_orlicz(PSI11, U_GRID) <= eval_orlicz(PSI1, U_GRID))

    def test_negative_argument(self):
        with pytest.raises(ValueError):
            eval_orlicz(PSI1, -1e-3)
        with pytest.raises(ValueError):
            eval_orlicz(PSI11, [0.1, -0.1])

    def test_lookup(self):
        assert get_orlicz("psi11") is PSI11
        assert get_orlicz("PSI1") is PSI1
        with pytest.raises(ValueError):
            get_orlicz("psi2")

    def test_division(self):
        g = PSI11 / 4.0
        assert g(1.0) == pytest.approx(PSI11(1.0) / 4.0)
        with pytest.raises(ValueError):
            PSI1 / 0.0


@st.composite
def discrete_laws(draw, max_points=5):
    k = draw(st.integers(1, max_points))
    magnitude = st.one_of(st.just(0.0), st.floats(1e-6, 5.0))
    vals = draw(st.lists(st.builds(lambda m, s: s * m, magnitude, st.sampled_from([1.0, -1.0])),
                         min_size=k, max_size=k, unique=True))
    weights = draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k))
    w = np.asarray(weights)
    p = w / w.sum()
    p[-1] = 1.0 - p[:-1].sum()
    if np.all(np.asarray(vals) == 0) or np.any(p <= 0):
        vals = [v + 1.0 for v in vals]
    return Discrete(tuple(vals), tuple(p))


class TestNormExamples:
    @pytest.mark.parametrize("eps", [0.01, 0.1, 0.3, 1.0, math.e - 1, 3.9, 50.0])
    def test_rademacher_psi1(self, eps):
        r = orlicz_norm(rademacher(), PSI1, eps)
        assert r.value == pytest.approx(1.0 / math.log1p(eps), rel=1e-9)

    def test_rademacher_psi1_threshold_one(self):
        assert orlicz_norm(rademacher(), "psi1", 1.0).value == pytest.approx(1.442695040888963, rel=1e-9)

    def test_rademacher_psi11(self):
        r = orlicz_norm(rademacher(), PSI11, 1.0)
        assert r.value == pytest.approx(1.0 / u_star(), rel=1e-9)
        assert r.value == pytest.approx(math.sqrt(4.0 / u_star() ** 2) / 2.0, rel=1e-9)
        assert f"{r.value:.5f}" == "0.87245"

    def test_point_mass_zero(self):
        r = orlicz_norm(point_mass(0.0), PSI11, 1.0)
        assert r.value == 0.0
        assert r.evaluations == 0

    def test_uniform_ratio(self):
        u = Uniform(-1.0, 1.0)
        ratio = (orlicz_norm(u, PSI1).value / orlicz_norm(u, PSI11).value) ** 2
        assert f"{ratio:.3f}" == "2.215"

    def test_laplace_closed_forms(self):
        # E exp(s|X|) = 1/(1 - s) for Laplace(1): psi1 norm 2, psi11 norm golden ratio
        d = Laplace(1.0)
        assert orlicz_norm(d, PSI1).value == pytest.approx(2.0, rel=1e-9)
        assert orlicz_norm(d, PSI11).value == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-9)

    def test_invalid_eps(self):
        with pytest.raises(ValueError):
            orlicz_norm(rademacher(), PSI1, 0.0)
        with pytest.raises(ValueError):
            orlicz_norm(rademacher(), PSI1, -1.0)

    def test_divergence_reports_inf(self):
        class Heavy(Distribution):
            abs_mean = 1.0

            def expect(self, integrand, rtol=None, ceiling=None):
                return math.inf

        r = orlicz_norm(Heavy(), PSI1, 1.0, max_doublings=10)
        assert r.value == math.inf
        assert not r.finite
        assert "for all x" in r.message

    @pytest.mark.parametrize("dist", [rademacher(), Uniform(-1, 1), Discrete((-2.0, 0.5, 3.0), (0.3, 0.5, 0.2))])
    @pytest.mark.parametrize("f", [PSI1, PSI11])
    def test_result_sandwich(self, dist, f):
        eps, tol = 0.3, 1e-8
        r = orlicz_norm(dist, f, eps, rtol=tol)
        assert isinstance(r, NormResult)
        lo, hi = r.bracket
        assert lo <= r.value == hi
        assert dist.expect(lambda t: f(np.abs(t) / (r.value * (1 + tol)))) <= eps
        assert dist.expect(lambda t: f(np.abs(t) / (r.value * (1 - tol)))) >= eps


class TestNormProperties:
    @settings(max_examples=40, deadline=None)
    @given(discrete_laws(), st.floats(0.01, 10), st.floats(0.01, 10))
    def test_monotone_in_eps(self, d, e1, e2):
        e1, e2 = sorted((e1, e2))
        for f in (PSI1, PSI11):
            assert orlicz_norm(d, f, e1).value >= orlicz_norm(d, f, e2).value * (1 - 1e-9)

    @settings(max_examples=40, deadline=None)
    @given(discrete_laws(), st.floats(0.001, 10))
    def test_psi11_below_psi1(self, d, eps):
        assert orlicz_norm(d, PSI11, eps).value <= orlicz_norm(d, PSI1, eps).value * (1 + 1e-9)

    @settings(max_examples=30, deadline=None)
    @given(discrete_laws(), st.floats(0.01, 100).flatmap(lambda c: st.sampled_from([c, -c])), st.floats(0.05, 5))
    def test_homogeneity(self, d, c, eps):
        for f in (PSI1, PSI11):
            a = orlicz_norm(d.scaled(c), f, eps, rtol=1e-12).value
            b = abs(c) * orlicz_norm(d, f, eps, rtol=1e-12).value
            assert a == pytest.approx(b, rel=1e-8)

    @settings(max_examples=30, deadline=None)
    @given(discrete_laws(3), discrete_laws(3), st.floats(0.05, 5))
    def test_triangle_inequality(self, x, y, eps):
        s = independent_sum(x, y)
        for f in (PSI1, PSI11):
            lhs = orlicz_norm(s, f, eps).value
            rhs = orlicz_norm(x, f, eps).value + orlicz_norm(y, f, eps).value
            assert lhs <= rhs * (1 + 1e-9)

    @settings(max_examples=40, deadline=None)
    @given(discrete_laws())
    def test_worst_case_ratio(self, d):
        assert orlicz_norm(d, PSI1).value <= constant_C() * orlicz_norm(d, PSI11).value * (1 + 1e-9)

    @pytest.mark.parametrize("c", [0.3, 1.0, 7.0])
    def test_worst_case_attained_when_abs_constant(self, c):
        d = rademacher().scaled(c)
        a = orlicz_norm(d, PSI1, rtol=1e-12).value
        b = constant_C() * orlicz_norm(d, PSI11, rtol=1e-12).value
        assert a == pytest.approx(b, rel=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(discrete_laws(), st.floats(0.01, 20))
    def test_threshold_identity(self, d, eps):
        for f in (PSI1, PSI11):
            direct = orlicz_norm(d, f, eps, rtol=1e-12).value
            rescaled = orlicz_norm(d, f / eps, 1.0, rtol=1e-12).value
            assert direct == pytest.approx(rescaled, rel=1e-10)

    def test_threshold_identity_continuous(self):
        d = Uniform(-1, 1)
        assert orlicz_norm(d, PSI11, 0.3).value == pytest.approx(orlicz_norm(d, PSI11 / 0.3, 1.0).value, rel=1e-9)
