"""Random-variable models used by the norm solver and the verification code.

Every model exposes exact low-order moments, ``expect`` (exact for discrete
laws, adaptive quadrature otherwise) and seeded sampling through the
inverse CDF.
"""

import math
import re
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import logsumexp

__all__ = [
    "Distribution",
    "Discrete",
    "Uniform",
    "Laplace",
    "CenteredExponential",
    "rademacher",
    "point_mass",
    "centered",
    "independent_sum",
    "expect",
    "sample",
    "sample_sums",
    "exact_tail_rademacher_sum",
    "parse_distribution",
    "DistributionSpecError",
]

DIVERGENCE_CEILING = 1e12
QUAD_RTOL = 1e-11
QUAD_ATOL = 1e-300
_MAX_CHUNKS = 400
_MAX_CHUNK_WIDTH = 16.0  # in units of the exponential scale


class DistributionSpecError(ValueError):
    """Malformed distribution text spec."""


def _finite_or_raise(val):
    if np.any(np.isnan(val)):
        raise FloatingPointError("integrand returned NaN")
    return val


def _quad(fun, a, b):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        with np.errstate(over="ignore", invalid="ignore"):
            val, err = integrate.quad(fun, a, b, epsabs=QUAD_ATOL, epsrel=QUAD_RTOL, limit=200)
    return val, err


class Distribution:
    """Base class. Subclasses set the moment properties and the pieces used
    by :meth:`expect` and :meth:`sample`."""

    mean = 0.0
    abs_mean = 0.0
    second_moment = 0.0
    is_rademacher = False

    @property
    def variance(self):
        return self.second_moment - self.mean ** 2

    def expect(self, integrand, rtol=QUAD_RTOL, ceiling=DIVERGENCE_CEILING):
        raise NotImplementedError

    def ppf(self, u):
        raise NotImplementedError

    def sample(self, n, seed):
        """``n`` i.i.d. draws; the stream depends only on ``seed``."""
        if n < 1:
            raise ValueError("sample size must be >= 1")
        rng = np.random.default_rng(seed)
        return self.ppf(rng.random(n))


@dataclass(frozen=True, eq=False)
class Discrete(Distribution):
    """Finitely supported law given by ``values`` and ``probs``."""

    values: tuple
    probs: tuple

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        if v.ndim != 1 or v.shape != p.shape or v.size == 0:
            raise ValueError("values and probs must be equal-length nonempty sequences")
        if np.any(p <= 0) or not np.all(np.isfinite(v)):
            raise ValueError("probabilities must be positive and values finite")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        order = np.argsort(v, kind="stable")
        object.__setattr__(self, "_v", v[order])
        object.__setattr__(self, "_p", p[order])
        object.__setattr__(self, "_cdf", np.cumsum(p[order]))

    @property
    def mean(self):
        return float(np.dot(self._p, self._v))

    @property
    def abs_mean(self):
        return float(np.dot(self._p, np.abs(self._v)))

    @property
    def second_moment(self):
        return float(np.dot(self._p, self._v ** 2))

    @property
    def is_rademacher(self):
        return (
            self._v.size == 2
            and self._v[0] == -1.0
            and self._v[1] == 1.0
            and self._p[0] == self._p[1]
        )

    @property
    def is_zero(self):
        return bool(np.all(self._v == 0.0))

    def expect(self, integrand, rtol=QUAD_RTOL, ceiling=DIVERGENCE_CEILING):
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.asarray(integrand(self._v), dtype=float)
            _finite_or_raise(vals)
            return float(np.dot(self._p, vals)) if np.all(np.isfinite(vals)) else math.inf

    def ppf(self, u):
        idx = np.searchsorted(self._cdf, u, side="right")
        return self._v[np.minimum(idx, self._v.size - 1)]

    def scaled(self, c):
        return Discrete(tuple(c * self._v), tuple(self._p))

    def __repr__(self):
        pts = ",".join(f"({v!r},{p!r})" for v, p in zip(self._v.tolist(), self._p.tolist()))
        return f"Discrete[{pts}]"


def rademacher():
    """P(X = 1) = P(X = -1) = 1/2."""
    return Discrete((-1.0, 1.0), (0.5, 0.5))


def point_mass(value=0.0):
    return Discrete((float(value),), (1.0,))


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform on ``[a, b]``."""

    a: float = -1.0
    b: float = 1.0

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("Uniform requires a < b")

    @property
    def mean(self):
        return 0.5 * (self.a + self.b)

    @property
    def abs_mean(self):
        a, b = self.a, self.b
        if a >= 0:
            return self.mean
        if b <= 0:
            return -self.mean
        return (a * a + b * b) / (2.0 * (b - a))

    @property
    def second_moment(self):
        a, b = self.a, self.b
        return (a * a + a * b + b * b) / 3.0

    def expect(self, integrand, rtol=QUAD_RTOL, ceiling=DIVERGENCE_CEILING):
        a, b = self.a, self.b
        probe = np.linspace(a, b, 9)
        with np.errstate(over="ignore", invalid="ignore"):
            pv = np.asarray(integrand(probe), dtype=float)
        _finite_or_raise(pv)
        if not np.all(np.isfinite(pv)) or np.max(np.abs(pv)) > ceiling * 1e3:
            return math.inf
        dens = 1.0 / (b - a)
        pieces = [(a, b)] if a >= 0 or b <= 0 else [(a, 0.0), (0.0, b)]
        total = 0.0
        for lo, hi in pieces:
            val, _ = _quad(lambda t: float(integrand(np.float64(t))), lo, hi)
            total += val * dens
        if not math.isfinite(total) or total > ceiling:
            return math.inf
        return total

    def ppf(self, u):
        return self.a + (self.b - self.a) * np.asarray(u)

    def scaled(self, c):
        lo, hi = sorted((c * self.a, c * self.b))
        return Uniform(lo, hi)


def _expect_exponential_tail(integrand, origin, rate, rtol, ceiling):
    """``E g(origin + T)`` for ``T ~ Exp(rate)``, integrated chunk by chunk
    until a chunk's contribution is negligible or the running total passes
    ``ceiling``.

    Chunk widths double up to ``16 / rate`` and then stay fixed. If ``g``
    itself overflows before the tail is negligible the result is ``inf``;
    that only happens when the product decays so slowly that the true
    expectation is already large (tens or more), which the norm solver
    treats the same way.
    """
    scale = 1.0 / rate

    def weighted(t):
        with np.errstate(over="ignore", invalid="ignore"):
            g = float(integrand(np.float64(origin + t)))
            if math.isnan(g):
                raise FloatingPointError("integrand returned NaN")
            if g == 0.0:
                return 0.0
            return g * rate * math.exp(-rate * t)

    total = 0.0
    left = 0.0
    prev = math.inf
    width = scale
    for k in range(_MAX_CHUNKS):
        right = left + width
        width = min(2.0 * width, _MAX_CHUNK_WIDTH * scale)
        val, _ = _quad(weighted, left, right)
        if not math.isfinite(val):
            return math.inf
        total += val
        if total > ceiling:
            return math.inf
        if k >= 3 and abs(val) <= rtol * abs(total) * 0.1 and abs(val) <= abs(prev):
            return total
        prev = val
        left = right
    return math.inf


@dataclass(frozen=True)
class Laplace(Distribution):
    """Centered Laplace law with density ``exp(-|x|/scale) / (2 scale)``."""

    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("Laplace scale must be positive")

    @property
    def abs_mean(self):
        return self.scale

    @property
    def second_moment(self):
        return 2.0 * self.scale ** 2

    def expect(self, integrand, rtol=QUAD_RTOL, ceiling=DIVERGENCE_CEILING):
        rate = 1.0 / self.scale
        right = _expect_exponential_tail(integrand, 0.0, rate, rtol, ceiling)
        if not math.isfinite(right):
            return math.inf
        left = _expect_exponential_tail(lambda t: integrand(-t), 0.0, rate, rtol, ceiling)
        if not math.isfinite(left):
            return math.inf
        total = 0.5 * (left + right)
        return math.inf if total > ceiling else total

    def ppf(self, u):
        u = np.asarray(u) - 0.5
        return -self.scale * np.sign(u) * np.log1p(-2.0 * np.abs(u))

    def scaled(self, c):
        return Laplace(abs(c) * self.scale)


@dataclass(frozen=True)
class CenteredExponential(Distribution):
    """``E - 1/rate`` with ``E ~ Exp(rate)``; supported on ``[-1/rate, inf)``."""

    rate: float = 1.0

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError("rate must be positive")

    @property
    def abs_mean(self):
        return 2.0 / (math.e * self.rate)

    @property
    def second_moment(self):
        return 1.0 / self.rate ** 2

    def expect(self, integrand, rtol=QUAD_RTOL, ceiling=DIVERGENCE_CEILING):
        rate = self.rate
        shift = 1.0 / rate

        def on_support(t):
            with np.errstate(over="ignore", invalid="ignore"):
                g = float(integrand(np.float64(t - shift)))
            if math.isnan(g):
                raise FloatingPointError("integrand returned NaN")
            return g * rate * math.exp(-rate * t)

        with np.errstate(over="ignore", invalid="ignore"):
            edge = float(integrand(np.float64(-shift)))
        if not math.isfinite(edge):
            return math.inf
        head, _ = _quad(on_support, 0.0, shift)
        if not math.isfinite(head):
            return math.inf
        # beyond the mean, E - 1/rate = T' with T' ~ Exp(rate) by memorylessness
        tail = _expect_exponential_tail(integrand, 0.0, rate, rtol, ceiling)
        if not math.isfinite(tail):
            return math.inf
        total = head + math.exp(-1.0) * tail
        return math.inf if total > ceiling else total

    def ppf(self, u):
        return -np.log1p(-np.asarray(u)) / self.rate - 1.0 / self.rate


def centered(d):
    """Shift ``d`` by its mean so that the result has mean zero."""
    m = d.mean
    if m == 0.0:
        return d
    if isinstance(d, Discrete):
        return Discrete(tuple(d._v - m), tuple(d._p))
    if isinstance(d, Uniform):
        return Uniform(d.a - m, d.b - m)
    raise TypeError(f"cannot center {type(d).__name__}")


def independent_sum(x, y):
    """Law of ``X + Y`` for independent discrete ``X`` and ``Y``."""
    if not (isinstance(x, Discrete) and isinstance(y, Discrete)):
        raise TypeError("independent_sum is implemented for discrete laws only")
    vals = (x._v[:, None] + y._v[None, :]).ravel()
    probs = (x._p[:, None] * y._p[None, :]).ravel()
    uniq, inv = np.unique(vals, return_inverse=True)
    merged = np.bincount(inv, weights=probs)
    merged = merged / merged.sum()
    return Discrete(tuple(uniq), tuple(merged))


def expect(d, integrand, rtol=QUAD_RTOL, ceiling=DIVERGENCE_CEILING):
    """``E integrand(X)`` for ``X ~ d``; ``inf`` when it diverges past ``ceiling``.

    ``integrand`` receives numpy values (an array for discrete laws, a
    0-d float for continuous ones) and must be vectorized accordingly.
    """
    return d.expect(integrand, rtol=rtol, ceiling=ceiling)


def sample(d, n, seed):
    return d.sample(n, seed)


def sample_sums(dists, reps, seed, chunk=100_000):
    """Draw ``reps`` realizations of ``S = X_1 + ... + X_n``.

    ``dists`` is the list of summand laws. Work is done in chunks of
    ``chunk`` replications to bound memory; each chunk gets its own child
    seed so the result depends only on ``seed``.
    """
    dists = list(dists)
    out = np.empty(reps)
    children = np.random.SeedSequence(seed).spawn((reps + chunk - 1) // chunk)
    for i, ss in enumerate(children):
        lo = i * chunk
        m = min(chunk, reps - lo)
        rng = np.random.default_rng(ss)
        acc = np.zeros(m)
        for d in dists:
            acc += d.ppf(rng.random(m))
        out[lo:lo + m] = acc
    return out


def exact_tail_rademacher_sum(n, x):
    """Exact ``P(S_n >= x)`` for a sum of ``n`` independent Rademacher signs.

    ``S_n = 2K - n`` with ``K ~ Binomial(n, 1/2)``; the tail is summed in
    log-space over ``k >= (n + x) / 2``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k0 = max(0, math.ceil((n + x) / 2.0))
    if k0 > n:
        return 0.0
    ks = np.arange(k0, n + 1)
    logc = (
        math.lgamma(n + 1)
        - np.array([math.lgamma(k + 1) + math.lgamma(n - k + 1) for k in ks])
        - n * math.log(2.0)
    )
    return float(min(1.0, math.exp(logsumexp(logc))))


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_PAIR = re.compile(rf"\(\s*({_NUM})\s*,\s*({_NUM})\s*\)")


def parse_distribution(spec):
    """Build a distribution from its compact text form.

    Accepted forms: ``rademacher``, ``uniform:a:b``, ``laplace:scale``,
    ``exponential:rate`` (centered), ``zero``, and
    ``discrete:(v1,p1),(v2,p2),...``.
    """
    s = spec.strip()
    head, _, rest = s.partition(":")
    head = head.lower()
    try:
        if head == "rademacher" and not rest:
            return rademacher()
        if head == "zero" and not rest:
            return point_mass(0.0)
        if head == "uniform":
            a, b = rest.split(":") if rest else ("-1", "1")
            return Uniform(float(a), float(b))
        if head == "laplace":
            return Laplace(float(rest) if rest else 1.0)
        if head == "exponential":
            return CenteredExponential(float(rest) if rest else 1.0)
        if head == "discrete":
            pairs = _PAIR.findall(rest)
            if not pairs or _PAIR.sub("", rest).replace(",", "").strip():
                raise DistributionSpecError(f"cannot parse discrete points in {spec!r}")
            vals, probs = zip(*((float(v), float(p)) for v, p in pairs))
            return Discrete(vals, probs)
    except DistributionSpecError:
        raise
    except ValueError as exc:
        raise DistributionSpecError(f"bad distribution spec {spec!r}: {exc}") from exc
    raise DistributionSpecError(f"unknown distribution spec {spec!r}")
