"""Command-line front end: ``subexp {norm,bound,constants,sweep,verify,asymptotics}``.

Exit codes: 0 success, 1 verification violation, 2 bad input,
3 divergent norm, 4 unwritable output.
"""

import argparse
import csv
import math
import sys

import numpy as np

from .bounds import (
    CHAFAI_EPS,
    DegenerateProfileError,
    NormFamily,
    log_chafai_bound,
    log_classical_chernoff_bound,
    log_tail_bound_minform,
    log_tail_bound_piecewise,
    profile_for,
)
from .dist import DistributionSpecError, parse_distribution
from .orlicz import get_orlicz, orlicz_norm
from .special import constant_table
from .verify import check_psi1_asymptotic, check_psi11_asymptotic, domination_campaign

EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_DIVERGENCE = 3
EXIT_UNWRITABLE = 4

DEFAULT_FAMILIES = "piecewise-psi11,piecewise-psi1"
DEFAULTS = {
    "dist": "rademacher",
    "n": "10,100",
    "eps": "0.1,0.3,1",
    "families": DEFAULT_FAMILIES,
    "x_max_mult": 3.0,
    "x_points": 301,
    "seed": 42,
    "reps": 10**6,
    "out": None,
}
SWEEP_HEADER = ["n", "eps", "family", "x", "bound", "log_bound"]


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _fmt(v):
    return f"{v:.10g}"


def _floats(text, name):
    try:
        vals = [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise CliError(f"--{name}: expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise CliError(f"--{name}: empty list")
    return vals


def _ints(text, name):
    vals = _floats(text, name)
    if any(v != int(v) or v < 1 for v in vals):
        raise CliError(f"--{name}: expected positive integers, got {text!r}")
    return [int(v) for v in vals]


def _dist(spec):
    try:
        return parse_distribution(spec)
    except DistributionSpecError as exc:
        raise CliError(str(exc)) from None


def read_config(path):
    """Flat ``key=value`` file; ``#`` starts a comment. Dashes in keys become underscores."""
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise CliError(f"{path}:{lineno}: expected key=value")
                cfg[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from None
    unknown = set(cfg) - set(DEFAULTS)
    if unknown:
        raise CliError(f"{path}: unknown keys {sorted(unknown)}")
    return cfg


def _resolve(args, key):
    val = getattr(args, key, None)
    if val is not None:
        return val
    return args.config_values.get(key, DEFAULTS[key])


def _parse_family(name):
    name = name.strip()
    if name in ("chafai", "classical"):
        return name, None
    kind, _, fam = name.partition("-")
    if kind not in ("piecewise", "minform") or fam not in ("psi11", "psi1"):
        raise CliError(
            f"unknown family {name!r}; expected piecewise-psi11, piecewise-psi1, "
            "minform-psi11, minform-psi1, chafai or classical"
        )
    return kind, NormFamily(fam)


def _curves(dist, n, eps_list, family_names, xs):
    """Yield ``(eps, family_name, log_bounds)`` in a fixed order."""
    fams = [(name, *_parse_family(name)) for name in family_names]
    summands = [dist] * n
    profiles = {}

    def prof(eps, fam):
        key = (eps, fam)
        if key not in profiles:
            profiles[key] = profile_for(summands, eps, fam)
        return profiles[key]

    for eps in eps_list:
        for name, kind, fam in fams:
            if kind == "piecewise":
                yield eps, name, log_tail_bound_piecewise(xs, prof(eps, fam))
            elif kind == "minform":
                yield eps, name, log_tail_bound_minform(xs, prof(eps, fam))
    for name, kind, _ in fams:
        if kind == "chafai":
            yield CHAFAI_EPS, name, log_chafai_bound(xs, prof(CHAFAI_EPS, NormFamily.PSI1))
        elif kind == "classical":
            yield 1.0, name, log_classical_chernoff_bound(xs, prof(1.0, NormFamily.PSI1))


def x_grid(n, x_max_mult, x_points):
    return np.linspace(0.0, x_max_mult * math.sqrt(n), int(x_points))


def cmd_norm(args):
    d = _dist(args.dist)
    try:
        f = get_orlicz(args.function)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if not args.epsilon > 0:
        raise CliError("epsilon must be positive")
    res = orlicz_norm(d, f, args.epsilon, rtol=args.rtol)
    if not res.finite:
        print(f"inf  ({res.message}; evaluations={res.evaluations})")
        return EXIT_DIVERGENCE
    print(_fmt(res.value))
    lo, hi = res.bracket
    print(f"# bracket=[{_fmt(lo)}, {_fmt(hi)}] evaluations={res.evaluations}", file=sys.stderr)
    return 0


def cmd_constants(args):
    for name, value in constant_table():
        print(f"{name:<26} {_fmt(value)}")
    return 0


def cmd_bound(args):
    d = _dist(args.dist)
    ns = _ints(_resolve(args, "n"), "n")
    eps_list = _floats(_resolve(args, "eps"), "eps")
    families = str(_resolve(args, "families")).split(",")
    xs = np.asarray(args.x, dtype=float)
    if np.any(xs < 0):
        raise CliError("x values must be nonnegative")
    print("n,eps,family,x,bound")
    for n in ns:
        for eps, fam, lb in _curves(d, n, eps_list, families, xs):
            for x, v in zip(xs, lb):
                print(f"{n},{_fmt(eps)},{fam},{_fmt(x)},{_fmt(math.exp(v))}")
    return 0


def write_sweep(out, dist, ns, eps_list, families, x_max_mult, x_points):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    rows = 0
    for n in ns:
        xs = x_grid(n, x_max_mult, x_points)
        for eps, fam, lb in _curves(dist, n, eps_list, families, xs):
            for x, v in zip(xs.tolist(), lb.tolist()):
                w.writerow([n, repr(eps), fam, repr(x), repr(math.exp(v)), repr(v)])
                rows += 1
    return rows


def cmd_sweep(args):
    d = _dist(_resolve(args, "dist"))
    ns = _ints(_resolve(args, "n"), "n")
    eps_list = _floats(_resolve(args, "eps"), "eps")
    if any(e <= 0 for e in eps_list):
        raise CliError("--eps values must be positive")
    families = [f for f in str(_resolve(args, "families")).split(",") if f.strip()]
    for f in families:
        _parse_family(f)
    x_max_mult = float(_resolve(args, "x_max_mult"))
    x_points = int(_resolve(args, "x_points"))
    if x_points < 2 or not x_max_mult > 0:
        raise CliError("need --x-points >= 2 and --x-max-mult > 0")
    out_path = _resolve(args, "out")
    if out_path in (None, "-"):
        write_sweep(sys.stdout, d, ns, eps_list, families, x_max_mult, x_points)
        return 0
    try:
        fh = open(out_path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise CliError(f"cannot write {out_path}: {exc}", EXIT_UNWRITABLE) from None
    with fh:
        rows = write_sweep(fh, d, ns, eps_list, families, x_max_mult, x_points)
    print(f"wrote {rows} rows to {out_path}", file=sys.stderr)
    return 0


def cmd_verify(args):
    d = _dist(args.dist)
    ns = _ints(_resolve(args, "n"), "n")
    eps_list = _floats(_resolve(args, "eps"), "eps")
    reps = int(_resolve(args, "reps"))
    seed = int(_resolve(args, "seed"))
    x_max_mult = float(_resolve(args, "x_max_mult"))
    x_points = int(_resolve(args, "x_points"))
    out_path = _resolve(args, "out")
    status = 0
    chunks = []
    for n in ns:
        try:
            rep = domination_campaign(d, n, eps_list, x_grid(n, x_max_mult, x_points), mc_reps=reps, seed=seed)
        except DegenerateProfileError as exc:
            raise CliError(str(exc)) from None
        except ValueError as exc:
            raise CliError(str(exc)) from None
        print(rep.summary())
        chunks.append((n, rep))
        if not rep.ok:
            status = EXIT_VIOLATION
    if out_path not in (None, "-"):
        try:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                for i, (n, rep) in enumerate(chunks):
                    lines = rep.to_csv().splitlines(keepends=True)
                    if i == 0:
                        fh.write("n," + lines[0])
                    fh.writelines(f"{n},{line}" for line in lines[1:])
        except OSError as exc:
            raise CliError(f"cannot write {out_path}: {exc}", EXIT_UNWRITABLE) from None
    return status


def cmd_asymptotics(args):
    d = _dist(args.dist)
    grid = _floats(args.eps or "1e-2,1e-3,1e-4", "eps")
    print("quantity,eps,observed,limit,rel_error")
    for chk in (check_psi1_asymptotic(d, grid), check_psi11_asymptotic(d, grid)):
        for e, o, r in zip(chk.eps_grid, chk.observed, chk.relative_errors):
            print(f"{chk.quantity},{_fmt(e)},{_fmt(o)},{_fmt(chk.limit)},{_fmt(r)}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="subexp",
        description="Orlicz norms and Bernstein-type tail bounds for sums of sub-exponential variables.",
    )
    parser.add_argument("--config", help="flat key=value file supplying defaults for sweep/verify/bound flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="threshold-eps Orlicz norm of one distribution")
    p.add_argument("dist", help="e.g. rademacher, uniform:-1:1, laplace:1, discrete:(-1,0.5),(1,0.5)")
    p.add_argument("function", help="psi1 or psi11")
    p.add_argument("epsilon", type=float, nargs="?", default=1.0)
    p.add_argument("--rtol", type=float, default=1e-10)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("constants", help="print the closed-form constants")
    p.set_defaults(func=cmd_constants)

    def grid_flags(p, with_families=True):
        p.add_argument("--n", help="comma-separated summand counts")
        p.add_argument("--eps", help="comma-separated threshold levels")
        if with_families:
            p.add_argument("--families", help=f"comma-separated bound families (default {DEFAULT_FAMILIES})")

    p = sub.add_parser("bound", help="evaluate tail bounds at given x for i.i.d. sums")
    p.add_argument("dist")
    p.add_argument("x", type=float, nargs="+")
    grid_flags(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="tabulate bound curves as CSV")
    p.add_argument("--dist")
    grid_flags(p)
    p.add_argument("--x-max-mult", dest="x_max_mult", type=float, help="x runs over [0, mult * sqrt(n)]")
    p.add_argument("--x-points", dest="x_points", type=int)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check bounds against exact or Monte Carlo tails")
    p.add_argument("dist")
    grid_flags(p, with_families=False)
    p.add_argument("--reps", type=int, help="Monte Carlo replications")
    p.add_argument("--seed", type=int)
    p.add_argument("--x-max-mult", dest="x_max_mult", type=float)
    p.add_argument("--x-points", dest="x_points", type=int)
    p.add_argument("--out", help="write the full per-cell report as CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotics", help="scaled norms as eps decreases")
    p.add_argument("dist")
    p.add_argument("--eps", help="decreasing comma-separated grid (default 1e-2,1e-3,1e-4)")
    p.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.config_values = read_config(args.config) if args.config else {}
        return args.func(args)
    except CliError as exc:
        print(f"subexp {args.command}: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
