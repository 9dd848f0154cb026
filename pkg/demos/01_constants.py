# %% [markdown]
# # Closed-form constants
#
# Every constant below is built from the Lambert W function. We print the
# closed form next to a brute-force cross-check, so a bug in `lambert_w`
# would show up as a mismatch rather than a silently wrong number.

# %%
import math

from scipy.optimize import brentq, minimize_scalar

from subexp.special import Branch, constant_table, eps_star, lambert_w, u_star

# %%
for name, value in constant_table():
    print(f"{name:<26} {value:.10g}")

# %% [markdown]
# `u_star` solves e^u - 1 - u = 1. Solve that directly with a bracketing root finder.

# %%
u_direct = brentq(lambda u: math.expm1(u) - u - 1.0, 0.5, 2.0, xtol=1e-15)
print(f"u_star closed form {u_star():.15f}")
print(f"u_star by brentq   {u_direct:.15f}")

# %% [markdown]
# The optimal threshold for psi1 norms of a Rademacher sum minimizes
# eps / log(1 + eps)^2. A bounded scalar minimizer finds the same point.

# %%
res = minimize_scalar(lambda e: e / math.log1p(e) ** 2, bounds=(0.1, 100.0), method="bounded",
                      options={"xatol": 1e-10})
e_s, objective = eps_star()
print(f"eps_star closed form {e_s:.10f}   objective {objective:.10f}")
print(f"eps_star minimizer   {res.x:.10f}   objective {4 * res.fun:.10f}")

# %% [markdown]
# Both branches round-trip through w * exp(w).

# %%
for z in (-0.3, -math.exp(-2), -1e-6):
    w = lambert_w(Branch.MINUS_ONE, z)
    print(f"W_-1({z:+.6g}) = {w:+.12f}   w e^w = {w * math.exp(w):+.12g}")
for z in (-0.3, 1.0, math.e, 1e6):
    w = lambert_w(Branch.PRINCIPAL, z)
    print(f"W_0({z:+.6g}) = {w:+.12f}   w e^w = {w * math.exp(w):+.12g}")
