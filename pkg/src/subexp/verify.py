"""Numerical checks of the small-threshold asymptotics and bound-domination
campaigns against exact (Rademacher) or Monte Carlo reference tails."""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    CHAFAI_EPS,
    NormFamily,
    log_chafai_bound,
    log_classical_chernoff_bound,
    log_tail_bound_minform,
    log_tail_bound_piecewise,
    profile_for,
)
from .dist import Discrete, exact_tail_rademacher_sum, sample_sums
from .orlicz import PSI1, PSI11, orlicz_norm

__all__ = [
    "AsymptoticCheck",
    "check_psi1_asymptotic",
    "check_psi11_asymptotic",
    "Violation",
    "CampaignReport",
    "reference_tail",
    "domination_campaign",
]

MC_SIGMAS = 4.0
# relative slack for comparisons between two bounds that may coincide exactly
_ORDER_SLACK = 1e-12


@dataclass
class AsymptoticCheck:
    """Scaled norms along a decreasing threshold grid, next to their limit."""

    quantity: str
    eps_grid: list
    limit: float
    observed: list

    @property
    def errors(self):
        return [abs(o - self.limit) for o in self.observed]

    @property
    def relative_errors(self):
        return [e / abs(self.limit) for e in self.errors]

    def converging(self, last=3):
        """True if the distance to the limit shrinks over the last ``last`` points."""
        e = self.errors[-last:]
        return all(b < a for a, b in zip(e, e[1:]))


def _check_grid(eps_grid):
    grid = [float(e) for e in eps_grid]
    if not grid or any(e <= 0 for e in grid):
        raise ValueError("eps_grid must be nonempty and positive")
    return grid


def check_psi1_asymptotic(d, eps_grid, rtol=1e-10):
    """``eps * ||X||_{psi1; eps}`` along ``eps_grid``; the limit is ``E|X|``."""
    grid = _check_grid(eps_grid)
    if not d.abs_mean > 0:
        raise ValueError("need E|X| > 0")
    obs = []
    for e in grid:
        r = orlicz_norm(d, PSI1, e, rtol=rtol)
        if not r.finite:
            raise ValueError(r.message)
        obs.append(e * r.value)
    return AsymptoticCheck("psi1_norm_times_eps", grid, d.abs_mean, obs)


def check_psi11_asymptotic(d, eps_grid, rtol=1e-10):
    """``sqrt(eps) * ||X||_{psi11; eps}``; the limit is ``sqrt(E X^2 / 2)``."""
    grid = _check_grid(eps_grid)
    if not d.second_moment > 0:
        raise ValueError("need E X^2 > 0")
    obs = []
    for e in grid:
        r = orlicz_norm(d, PSI11, e, rtol=rtol)
        if not r.finite:
            raise ValueError(r.message)
        obs.append(math.sqrt(e) * r.value)
    return AsymptoticCheck("psi11_norm_times_sqrt_eps", grid, math.sqrt(d.second_moment / 2.0), obs)


@dataclass(frozen=True)
class Violation:
    kind: str  # "reference" or "ordering"
    eps: float
    family: str
    x: float
    lhs: float
    rhs: float


@dataclass
class CampaignReport:
    n: int
    oracle: str
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps", "family", "x", "reference", "reference_se", "bound", "log_bound", "ok"])
        for r in self.rows:
            w.writerow([repr(r[0]), r[1], repr(r[2]), repr(r[3]), repr(r[4]), repr(r[5]), repr(r[6]), int(r[7])])
        return buf.getvalue()

    def summary(self):
        lines = [
            f"n={self.n} oracle={self.oracle} cells={len(self.rows)} violations={len(self.violations)}",
        ]
        lines += [f"note: {s}" for s in self.notes]
        for v in self.violations[:20]:
            lines.append(
                f"VIOLATION {v.kind} eps={v.eps!r} family={v.family} x={v.x!r}: {v.lhs!r} > {v.rhs!r}"
            )
        return "\n".join(lines)


def _summands(d, n):
    if isinstance(d, (list, tuple)):
        return list(d)
    return [d] * n


def _exact_applicable(summands):
    return all(isinstance(s, Discrete) and (s.is_rademacher or s.is_zero) for s in summands)


def reference_tail(summands, x_grid, mc_reps=10**6, seed=0):
    """Reference ``P(S >= x)`` on ``x_grid`` with its standard error.

    Exact when every summand is Rademacher or identically zero; otherwise a
    Monte Carlo estimate from ``mc_reps`` seeded replications.

    Returns
    -------
    tail, se, oracle : ndarray, ndarray, str
    """
    xs = np.asarray(x_grid, dtype=float)
    if _exact_applicable(summands):
        k = sum(1 for s in summands if s.is_rademacher)
        if k == 0:
            tail = (xs <= 0).astype(float)
        else:
            tail = np.array([exact_tail_rademacher_sum(k, x) for x in xs])
        return tail, np.zeros_like(tail), "exact"
    sums = np.sort(sample_sums(summands, mc_reps, seed))
    count = mc_reps - np.searchsorted(sums, xs, side="left")
    tail = count / mc_reps
    se = np.sqrt(tail * (1.0 - tail) / mc_reps)
    return tail, se, "monte-carlo"


def domination_campaign(d, n, eps_list, x_grid, mc_reps=10**6, seed=0, rtol=1e-10):
    """Check every bound family against the reference tail of ``S_n``.

    ``d`` is either one law (``n`` i.i.d. copies) or an explicit list of
    summand laws. For each threshold in ``eps_list`` the psi11 and psi1
    piecewise and min-form bounds are evaluated on ``x_grid``; the
    comparison-only chafai (psi1 at ``e - 1``) and classical (psi1 at 1)
    bounds are added once. A violation is recorded when the reference
    exceeds a bound (by more than ``4`` standard errors for Monte Carlo),
    or when piecewise exceeds min-form, or min-form(psi1, ``e - 1``)
    fails to sit strictly below chafai for ``x > 0``.
    """
    summands = _summands(d, n)
    for s in summands:
        if abs(s.mean) > 1e-12 * max(1.0, s.abs_mean):
            raise ValueError(f"summand {s!r} is not zero-mean")
    xs = np.asarray(x_grid, dtype=float)
    ref, se, oracle = reference_tail(summands, xs, mc_reps=mc_reps, seed=seed)
    report = CampaignReport(n=len(summands), oracle=oracle)
    margin = ref - MC_SIGMAS * se if oracle == "monte-carlo" else ref

    def record(eps, name, logb):
        bound = np.exp(logb)
        ok = margin <= bound * (1.0 + 1e-12)
        for x, r, s, b, lb, good in zip(xs, ref, se, bound, logb, ok):
            report.rows.append((eps, name, float(x), float(r), float(s), float(b), float(lb), bool(good)))
            if not good:
                report.violations.append(Violation("reference", eps, name, float(x), float(r), float(b)))
        return logb

    def order(eps, name, lo, hi, strict_positive=False):
        bad = lo > hi + _ORDER_SLACK * np.abs(hi)
        if strict_positive:
            bad |= (xs > 0) & ~(lo < hi)
        for x, a, b in zip(xs[bad], lo[bad], hi[bad]):
            report.violations.append(Violation("ordering", eps, name, float(x), float(a), float(b)))

    eps_values = sorted({float(e) for e in eps_list})
    for eps in eps_values:
        for fam in (NormFamily.PSI11, NormFamily.PSI1):
            p = profile_for(summands, eps, fam, rtol=rtol)
            pw = record(eps, f"piecewise-{fam.value}", log_tail_bound_piecewise(xs, p))
            mf = record(eps, f"minform-{fam.value}", log_tail_bound_minform(xs, p))
            order(eps, f"piecewise<=minform-{fam.value}", pw, mf)

    p_ch = profile_for(summands, CHAFAI_EPS, NormFamily.PSI1, rtol=rtol)
    mf_ch = log_tail_bound_minform(xs, p_ch)
    ch = record(CHAFAI_EPS, "chafai", log_chafai_bound(xs, p_ch))
    order(CHAFAI_EPS, "minform-psi1<chafai", mf_ch, ch, strict_positive=True)
    p_cl = profile_for(summands, 1.0, NormFamily.PSI1, rtol=rtol)
    record(1.0, "classical", log_classical_chernoff_bound(xs, p_cl))

    zero = sum(1 for s in summands if s.abs_mean == 0.0)
    if zero:
        report.notes.append(f"{zero} identically-zero summand(s) contribute zero norm")
    return report
