"""MGF bounds and Bernstein-type tail bounds for sums of independent,
zero-mean, sub-exponential summands.

Tail bounds are evaluated in log-space: every ``log_*`` function returns
the (nonpositive) exponent, and the matching plain function exponentiates
it. Functions accept scalars or numpy arrays of ``x``.

A :class:`SumProfile` carries the two aggregates that drive every bound,
``B^2 = eps * sum ||X_i||^2`` and ``M = max ||X_i||``, where the norms are
threshold-``eps`` Orlicz norms for psi11 (or psi1, for the weaker variants).
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .orlicz import PSI1, PSI11, orlicz_norm
from .special import chafai_c1, chafai_c2

__all__ = [
    "NormFamily",
    "SumProfile",
    "DegenerateProfileError",
    "KneeConditionError",
    "sum_profile",
    "profile_for",
    "mgf_bound",
    "mgf_bound_exp",
    "classical_mgf_bound",
    "log_tail_bound_piecewise",
    "tail_bound_piecewise",
    "log_tail_bound_minform",
    "tail_bound_minform",
    "log_chafai_bound",
    "chafai_bound",
    "log_classical_chernoff_bound",
    "classical_chernoff_bound",
    "two_sided",
    "corollary_constant",
    "BoundCurve",
    "FAMILIES",
    "bound_curve",
]

CHAFAI_EPS = math.e - 1.0
_H_SLACK = 1e-12


class NormFamily(str, Enum):
    PSI11 = "psi11"
    PSI1 = "psi1"

    @property
    def orlicz(self):
        return PSI11 if self is NormFamily.PSI11 else PSI1


class DegenerateProfileError(ValueError):
    """All summand norms are zero (or none were given)."""


class KneeConditionError(ValueError):
    """``x`` lies beyond the knee ``2 B^2 / M``, so the Gaussian branch does not apply."""


@dataclass(frozen=True)
class SumProfile:
    b_squared: float
    m: float
    epsilon: float
    family: NormFamily = NormFamily.PSI11
    n: int = 1

    @property
    def knee(self):
        """Crossover ``2 B^2 / M`` between the Gaussian and exponential branches."""
        return 2.0 * self.b_squared / self.m


def sum_profile(norms, epsilon, family=NormFamily.PSI11):
    """Aggregate summand norms into ``(B^2, M)``.

    Zero norms are allowed and simply contribute nothing to ``B^2``.

    Raises
    ------
    DegenerateProfileError
        If ``norms`` is empty or all zero.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    arr = np.asarray(list(norms), dtype=float)
    if arr.size == 0 or not np.any(arr > 0):
        raise DegenerateProfileError("sum profile needs at least one positive summand norm")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("summand norms must be finite and nonnegative")
    return SumProfile(
        b_squared=float(epsilon * np.sum(arr * arr)),
        m=float(arr.max()),
        epsilon=float(epsilon),
        family=NormFamily(family),
        n=int(arr.size),
    )


def profile_for(dists, epsilon, family=NormFamily.PSI11, rtol=1e-10):
    """Solve each summand's norm and build the profile.

    ``dists`` is a list of summand laws; identical objects are solved once.
    """
    family = NormFamily(family)
    cache = {}
    norms = []
    for d in dists:
        key = id(d)
        if key not in cache:
            res = orlicz_norm(d, family.orlicz, epsilon, rtol=rtol)
            if not res.finite:
                raise ValueError(f"summand {d!r} has infinite {family.value} norm: {res.message}")
            cache[key] = res.value
        norms.append(cache[key])
    return sum_profile(norms, epsilon, family)


def _check_h(h, norm):
    if abs(h) * norm > 1.0 + _H_SLACK:
        raise ValueError(f"|h| * norm = {abs(h) * norm!r} exceeds 1; the MGF bound is not claimed there")


def mgf_bound(h, norm, epsilon=1.0):
    """``1 + h^2 eps ||X||^2`` with ``||X||`` the psi11 norm at threshold ``eps``.

    Valid (an upper bound on ``E exp(hX)`` for zero-mean ``X``) whenever
    ``|h| * norm <= 1``; raises ``ValueError`` otherwise.
    """
    _check_h(h, norm)
    return 1.0 + h * h * epsilon * norm * norm


def mgf_bound_exp(h, norm, epsilon=1.0):
    """The exponential form ``exp(h^2 eps ||X||^2)`` of :func:`mgf_bound`."""
    _check_h(h, norm)
    return math.exp(h * h * epsilon * norm * norm)


def classical_mgf_bound(h, k4):
    """Series-based MGF bound ``exp(2 k4^2 h^2 / (1 - k4 |h|))`` for ``|h| < 1/k4``,
    with ``k4`` the classical psi1 norm. Kept as a comparison baseline."""
    if not k4 > 0:
        raise ValueError("k4 must be positive")
    if abs(h) * k4 >= 1.0:
        raise ValueError("classical MGF bound requires |h| < 1/k4")
    expo = 2.0 * k4 * k4 * h * h / (1.0 - k4 * abs(h))
    return math.exp(expo) if expo < 709.0 else math.inf


def _as_x(x):
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(np.isnan(xa)):
        raise ValueError("x must be nonnegative")
    return xa


def _out(val, x):
    val = val + 0.0  # turns -0.0 at x = 0 into 0.0
    return float(val) if np.ndim(x) == 0 else val


def log_tail_bound_piecewise(x, p):
    """Log of the optimized Chernoff bound on ``P(S_n >= x)``:
    ``-x^2/(4B^2)`` up to the knee ``2B^2/M``, ``-(x/M - B^2/M^2)`` beyond it."""
    xa = _as_x(x)
    b2, m = p.b_squared, p.m
    gauss = -xa * xa / (4.0 * b2)
    expo = -(xa / m - b2 / (m * m))
    return _out(np.where(xa <= 2.0 * b2 / m, gauss, expo), x)


def tail_bound_piecewise(x, p):
    return _out(np.exp(log_tail_bound_piecewise(x, p)), x)


def log_tail_bound_minform(x, p):
    """Log of ``exp(-min(x^2/(4B^2), x/(2M)))``."""
    xa = _as_x(x)
    return _out(-np.minimum(xa * xa / (4.0 * p.b_squared), xa / (2.0 * p.m)), x)


def tail_bound_minform(x, p):
    return _out(np.exp(log_tail_bound_minform(x, p)), x)


def log_chafai_bound(x, p_psi1):
    """Log of ``exp(-min(x^2/(4 c2 B^2), x/(2 c1 M)))``, with ``c1 = 2e - 1``
    and ``c2 = (2e - 1)/(2e - 2)``.

    The profile must come from psi1 norms at threshold ``e - 1``.
    """
    if p_psi1.family is not NormFamily.PSI1 or not math.isclose(p_psi1.epsilon, CHAFAI_EPS, rel_tol=1e-12):
        raise ValueError("chafai bound needs a psi1 profile at epsilon = e - 1")
    xa = _as_x(x)
    c1, c2 = chafai_c1(), chafai_c2()
    return _out(-np.minimum(xa * xa / (4.0 * c2 * p_psi1.b_squared), xa / (2.0 * c1 * p_psi1.m)), x)


def chafai_bound(x, p_psi1):
    return _out(np.exp(log_chafai_bound(x, p_psi1)), x)


def log_classical_chernoff_bound(x, p_psi1):
    """Chernoff bound from the series-based MGF bound, optimized over ``h``.

    Uses ``sum_i 2K_i^2 h^2/(1 - K_i h) <= 2B^2 h^2/(1 - Mh)`` with ``K_i``
    the classical psi1 norms (threshold 1). The minimizer is
    ``h = t/M`` with ``t = r / (s (s + 1))``, ``r = Mx/(2B^2)``,
    ``s = sqrt(1 + r)``.
    """
    if p_psi1.family is not NormFamily.PSI1 or p_psi1.epsilon != 1.0:
        raise ValueError("classical Chernoff bound needs a psi1 profile at epsilon = 1")
    xa = _as_x(x)
    b2, m = p_psi1.b_squared, p_psi1.m
    r = m * xa / (2.0 * b2)
    s = np.sqrt(1.0 + r)
    t = r / (s * (s + 1.0))
    return _out(-t * xa / m + 2.0 * b2 * t * t / (m * m * (1.0 - t)), x)


def classical_chernoff_bound(x, p_psi1):
    return _out(np.exp(log_classical_chernoff_bound(x, p_psi1)), x)


def two_sided(bound):
    """Two-tail bound ``min(1, 2 * bound)`` from a one-sided one."""
    if bound < 0 or bound > 1:
        raise ValueError("bound must be a probability")
    return min(1.0, 2.0 * bound)


def corollary_constant(dist, n, x, family=NormFamily.PSI11, epsilon=None, rtol=1e-12):
    """Effective denominator constant for i.i.d. sums.

    Writes the Gaussian-branch bound as ``exp(-x^2 / (c_eff n E X^2))`` and
    returns ``c_eff = 4 eps ||X||^2 / E X^2``. By default
    ``eps = (x/n)^2 / E X^2``; with psi11 norms ``c_eff -> 2`` as
    ``x/n -> 0``.

    Raises
    ------
    KneeConditionError
        If ``x`` exceeds the knee at the chosen ``eps``.
    """
    family = NormFamily(family)
    m2 = dist.second_moment
    if not m2 > 0:
        raise ValueError("summand must have positive second moment")
    if epsilon is None:
        if not x > 0:
            raise ValueError("x must be positive when epsilon is derived from x/n")
        epsilon = (x / n) ** 2 / m2
    norm = orlicz_norm(dist, family.orlicz, epsilon, rtol=rtol)
    if not norm.finite:
        raise ValueError(norm.message)
    p = sum_profile([norm.value], epsilon, family)
    p = SumProfile(n * p.b_squared, p.m, p.epsilon, p.family, n)
    if x > p.knee:
        raise KneeConditionError(f"x = {x!r} exceeds the knee 2B^2/M = {p.knee!r}")
    return 4.0 * p.b_squared / (n * m2)


@dataclass(frozen=True)
class BoundCurve:
    """Tabulated ``x -> bound`` for one named family."""

    family: str
    x: np.ndarray
    log_bound: np.ndarray

    @property
    def bound(self):
        return np.exp(self.log_bound)


FAMILIES = {
    "piecewise": log_tail_bound_piecewise,
    "minform": log_tail_bound_minform,
    "chafai": log_chafai_bound,
    "classical": log_classical_chernoff_bound,
}


def bound_curve(family, profile, xs):
    """Evaluate family ``"piecewise"``, ``"minform"``, ``"chafai"`` or
    ``"classical"`` on the grid ``xs``."""
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown bound family {family!r}") from None
    xs = np.asarray(xs, dtype=float)
    return BoundCurve(family, xs, np.asarray(fn(xs, profile), dtype=float))
