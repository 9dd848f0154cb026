"""Orlicz functions and the generalized (threshold-level) Orlicz norm.

The norm of ``X`` for an Orlicz function ``f`` at threshold ``eps`` is the
smallest ``x > 0`` with ``E f(|X|/x) <= eps``. Because ``x -> E f(|X|/x)``
is nonincreasing, it is found by geometric bracketing followed by bisection
(in log-scale, so the tolerance is relative).
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "OrliczFunction",
    "PSI1",
    "PSI11",
    "eval_orlicz",
    "get_orlicz",
    "NormResult",
    "orlicz_norm",
]

# psi11 uses its Maclaurin series below this point; above it, expm1(u) - u
# loses at most a factor (e^c - 1)/(e^c - 1 - c) ~ 4.4 to cancellation.
PSI11_SERIES_CUTOFF = 0.5
_SERIES_TERMS = 18

_FACTORIAL_INV = np.array([1.0 / math.factorial(k) for k in range(2, 2 + _SERIES_TERMS)])


def _psi1(u):
    return np.expm1(u)


def _psi11(u):
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < PSI11_SERIES_CUTOFF
    if np.any(small):
        us = u[small]
        # Horner on u^2 * (1/2! + u/3! + u^2/4! + ...)
        acc = np.full_like(us, _FACTORIAL_INV[-1])
        for c in _FACTORIAL_INV[-2::-1]:
            acc = acc * us + c
        out[small] = us * us * acc
    big = ~small
    if np.any(big):
        with np.errstate(over="ignore"):
            out[big] = np.expm1(u[big]) - u[big]
    return out


@dataclass(frozen=True)
class OrliczFunction:
    """A convex increasing ``f`` on [0, inf) with ``f(0) = 0``.

    ``func`` must accept and return numpy arrays. Dividing by a positive
    constant gives the rescaled function ``f / c`` used by the threshold
    identity ``||X||_{f; eps} = ||X||_{f/eps; 1}``.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    scale: float = 1.0

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            val = self.func(u)
        if self.scale != 1.0:
            val = val * self.scale
        return val[()] if np.ndim(val) == 0 else val

    def __truediv__(self, c):
        if not c > 0:
            raise ValueError("an Orlicz function can only be divided by a positive constant")
        return OrliczFunction(f"{self.name}/{c!r}", self.func, self.scale / c)


PSI1 = OrliczFunction("psi1", _psi1)
PSI11 = OrliczFunction("psi11", _psi11)

_BY_NAME = {"psi1": PSI1, "psi11": PSI11}


def get_orlicz(name):
    """Look up a built-in Orlicz function by name (``"psi1"`` or ``"psi11"``)."""
    if isinstance(name, OrliczFunction):
        return name
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise ValueError(f"unknown Orlicz function {name!r}; expected one of {sorted(_BY_NAME)}") from None


def eval_orlicz(f, u):
    """Evaluate ``f(u)`` for ``u >= 0``; raises ``ValueError`` on negative input."""
    f = get_orlicz(f)
    arr = np.asarray(u, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise ValueError("Orlicz functions are defined on [0, inf) only")
    return f(arr)


@dataclass(frozen=True)
class NormResult:
    """Outcome of :func:`orlicz_norm`.

    ``value`` is the upper end of the final bracket, so
    ``E f(|X|/value) <= eps`` holds up to expectation error. ``value`` is
    ``inf`` when the expectation exceeded ``eps`` at every scale tried;
    ``message`` then says why.
    """

    value: float
    bracket: tuple
    evaluations: int
    message: str = ""

    @property
    def finite(self):
        return math.isfinite(self.value)

    def __float__(self):
        return float(self.value)


def orlicz_norm(dist, f, eps=1.0, rtol=1e-10, max_doublings=60):
    """Generalized Orlicz norm ``inf{x > 0 : E f(|X|/x) <= eps}``.

    Parameters
    ----------
    dist : Distribution
        Law of ``X``; must provide ``expect`` and ``abs_mean``.
    f : OrliczFunction or str
        ``PSI1``, ``PSI11`` (or their names), or any other Orlicz function.
    eps : float
        Threshold level, > 0. ``eps = 1`` gives the classical norm.
    rtol : float
        Relative width of the final bracket.
    max_doublings : int
        Bracket expansion cap; beyond ``2**max_doublings * x0`` the norm is
        declared infinite.

    Returns
    -------
    NormResult
    """
    f = get_orlicz(f)
    if not eps > 0:
        raise ValueError(f"threshold eps must be positive, got {eps!r}")
    if not rtol > 0:
        raise ValueError("rtol must be positive")

    x0 = dist.abs_mean
    if x0 == 0.0:
        return NormResult(0.0, (0.0, 0.0), 0, "X = 0 almost surely")
    x0 = max(x0, 1e-300)

    evaluations = 0

    def excess(x):
        nonlocal evaluations
        evaluations += 1
        val = dist.expect(lambda t: f(np.abs(t) / x))
        return val - eps

    g0 = excess(x0)
    if g0 > 0:
        lo, hi = x0, None
        for _ in range(max_doublings):
            x = lo * 2.0
            if excess(x) <= 0:
                hi = x
                break
            lo = x
        if hi is None:
            return NormResult(
                math.inf,
                (lo, math.inf),
                evaluations,
                f"E {f.name}(|X|/x) > {eps!r} for all x up to 2^{max_doublings} * E|X|",
            )
    else:
        hi, lo = x0, None
        for _ in range(4 * max_doublings):
            x = hi * 0.5
            if x == 0.0:
                break
            if excess(x) > 0:
                lo = x
                break
            hi = x
        if lo is None:
            return NormResult(hi, (0.0, hi), evaluations, "lower bracket not found")

    while hi / lo - 1.0 > rtol:
        mid = lo * math.sqrt(hi / lo)
        if not lo < mid < hi:
            break  # bracket is at float resolution
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return NormResult(hi, (lo, hi), evaluations)
