"""Generalized Orlicz norms and improved Bernstein-type concentration bounds
for sums of independent zero-mean sub-exponential random variables."""

from .bounds import (
    BoundCurve,
    DegenerateProfileError,
    KneeConditionError,
    NormFamily,
    SumProfile,
    bound_curve,
    chafai_bound,
    classical_chernoff_bound,
    classical_mgf_bound,
    corollary_constant,
    mgf_bound,
    mgf_bound_exp,
    profile_for,
    sum_profile,
    tail_bound_minform,
    tail_bound_piecewise,
    two_sided,
)
from .dist import (
    CenteredExponential,
    Discrete,
    Laplace,
    Uniform,
    exact_tail_rademacher_sum,
    expect,
    parse_distribution,
    point_mass,
    rademacher,
    sample,
)
from .orlicz import PSI1, PSI11, NormResult, OrliczFunction, eval_orlicz, orlicz_norm
from .special import Branch, constant_C, eps_star, lambert_w, u_star
from .verify import check_psi1_asymptotic, check_psi11_asymptotic, domination_campaign

__version__ = "0.1.0"
