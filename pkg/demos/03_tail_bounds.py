# %% [markdown]
# # Tail bounds for Rademacher sums
#
# For n Rademacher summands we tabulate several upper bounds on P(S_n >= x)
# over x in [0, 3 sqrt(n)] and set them beside the exact binomial tail.
# The same curves come out of `subexp sweep` as CSV.

# %%
import math

import numpy as np

from subexp.bounds import CHAFAI_EPS, NormFamily, bound_curve, profile_for
from subexp.dist import exact_tail_rademacher_sum, rademacher

n = 100
xs = np.linspace(0.0, 3 * math.sqrt(n), 13)
summands = [rademacher()] * n

# %%
curves = {}
for eps in (0.1, 0.3, 1.0):
    for fam in (NormFamily.PSI11, NormFamily.PSI1):
        p = profile_for(summands, eps, fam)
        curves[f"{fam.value} eps={eps}"] = bound_curve("piecewise", p, xs).bound
curves["chafai"] = bound_curve("chafai", profile_for(summands, CHAFAI_EPS, NormFamily.PSI1), xs).bound
curves["classical"] = bound_curve("classical", profile_for(summands, 1.0, NormFamily.PSI1), xs).bound
exact = np.array([exact_tail_rademacher_sum(n, x) for x in xs])

# %%
header = f"{'x':>6}{'exact':>11}" + "".join(f"{k:>17}" for k in curves)
print(header)
for i, x in enumerate(xs):
    print(f"{x:6.2f}{exact[i]:11.3e}" + "".join(f"{v[i]:17.3e}" for v in curves.values()))

# %% [markdown]
# Every bound sits above the exact tail, and at each threshold the psi11
# curve sits below its psi1 counterpart.

# %%
assert all(np.all(exact <= v * (1 + 1e-12)) for v in curves.values())
for eps in (0.1, 0.3, 1.0):
    assert np.all(curves[f"psi11 eps={eps}"] <= curves[f"psi1 eps={eps}"])
print("all orderings hold")
