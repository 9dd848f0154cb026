"""Real Lambert W (branches 0 and -1) and the closed-form constants built on it.

All constants are returned as plain floats. They are computed through
:func:`lambert_w`; the test suite cross-checks each one against an
independent root-finding or minimization route.
"""

import math
from enum import Enum

__all__ = [
    "Branch",
    "lambert_w",
    "u_star",
    "constant_C",
    "eps_star",
    "threshold_psi1_norm",
    "chafai_c1",
    "chafai_c2",
    "constant_table",
]

_INV_E = math.exp(-1.0)
_MAX_ITER = 64


class Branch(Enum):
    """Real branch of the Lambert W function.

    ``PRINCIPAL`` maps [-1/e, inf) onto [-1, inf); ``MINUS_ONE`` maps
    [-1/e, 0) onto (-inf, -1].
    """

    PRINCIPAL = 0
    MINUS_ONE = -1


def _initial_guess(branch, z):
    # distance from the branch point, p = +-sqrt(2(ez + 1))
    q = 2.0 * (math.e * z + 1.0)
    if branch is Branch.MINUS_ONE:
        if q < 0.5:
            p = -math.sqrt(q)
            return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
        lz = math.log(-z)
        return lz - math.log(-lz)
    if q < 0.5:
        p = math.sqrt(q)
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    if abs(z) < 0.25:
        return z * (1.0 - z)
    if z < 3.0:
        return math.log1p(z) * (1.0 - math.log1p(math.log1p(z)) / (2.0 + math.log1p(z)))
    lz = math.log(z)
    return lz - math.log(lz)


def lambert_w(branch, z):
    """Solve ``w * exp(w) = z`` for real ``w`` on the requested branch.

    Parameters
    ----------
    branch : Branch or int
        ``Branch.PRINCIPAL`` (0) or ``Branch.MINUS_ONE`` (-1).
    z : float
        Argument. Must lie in [-1/e, inf) for the principal branch and in
        [-1/e, 0) for the -1 branch.

    Returns
    -------
    float

    Raises
    ------
    ValueError
        If ``z`` is outside the branch's real domain.

    Notes
    -----
    Halley iteration started from a branch-point series (near -1/e), the
    ``z(1 - z)`` series (small principal arguments) or the asymptotic
    ``log(z) - log(log(z))`` form, whichever applies.
    """
    branch = Branch(branch)
    z = float(z)
    if math.isnan(z):
        raise ValueError("lambert_w argument is NaN")
    q = 2.0 * (math.e * z + 1.0)
    if q < -8.0 * 2.220446049250313e-16:
        raise ValueError(f"lambert_w: z={z!r} is below the branch point -1/e")
    if q <= 0.0:
        return -1.0
    if branch is Branch.MINUS_ONE:
        if z >= 0.0:
            raise ValueError(f"lambert_w branch -1 requires z < 0, got {z!r}")
    else:
        if z == 0.0:
            return 0.0
        if math.isinf(z):
            return math.inf

    w = _initial_guess(branch, z)
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - dw
        # keep iterates on the correct side of the branch point
        if branch is Branch.MINUS_ONE and w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        elif branch is Branch.PRINCIPAL and w_new < -1.0:
            w_new = 0.5 * (w - 1.0)
        w = w_new
        if abs(dw) <= 4.0 * 2.220446049250313e-16 * (1.0 + abs(w)):
            break
    return w


def u_star():
    """The unique ``u > 0`` with ``exp(u) - 1 - u = 1``."""
    return -(lambert_w(Branch.MINUS_ONE, -math.exp(-2.0)) + 2.0)


def constant_C():
    """Worst-case ratio between the psi1 and psi11 norms (threshold 1).

    ``C = u_* / ln 2``, about 1.6536; ``C**2`` is about 2.7345.
    """
    return u_star() / math.log(2.0)


def threshold_psi1_norm(eps):
    """psi1-norm of a Rademacher variable at threshold ``eps``: ``1/ln(1+eps)``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return 1.0 / math.log1p(eps)


def eps_star():
    """Minimizer of ``eps * g(eps)**2`` with ``g(eps) = 1/ln(1+eps)``.

    Returns
    -------
    eps : float
        ``exp(W(-2 e^-2) + 2) - 1``, about 3.9215.
    objective : float
        ``4 * eps * g(eps)**2``, about 6.1761.
    """
    eps = math.expm1(lambert_w(Branch.PRINCIPAL, -2.0 * math.exp(-2.0)) + 2.0)
    return eps, 4.0 * eps * threshold_psi1_norm(eps) ** 2


def chafai_c1():
    return 2.0 * math.e - 1.0


def chafai_c2():
    return (2.0 * math.e - 1.0) / (2.0 * math.e - 2.0)


def constant_table():
    """Name/value pairs of every closed-form constant, in display order."""
    u = u_star()
    c = constant_C()
    es, obj = eps_star()
    return [
        ("C", c),
        ("C^2", c * c),
        ("u_star", u),
        ("4/u_star^2", 4.0 / (u * u)),
        ("eps_star", es),
        ("4*eps_star*g(eps_star)^2", obj),
        ("c1", chafai_c1()),
        ("c2", chafai_c2()),
    ]
