# %% [markdown]
# # Threshold Orlicz norms
#
# The norm of X at threshold eps is the smallest scale x with
# E f(|X|/x) <= eps. Here we compare psi1(u) = e^u - 1 with
# psi11(u) = e^u - 1 - u, whose quadratic start makes its norm smaller.

# %%
import math

import numpy as np

from subexp.dist import CenteredExponential, Laplace, Uniform, rademacher
from subexp.orlicz import PSI1, PSI11, orlicz_norm
from subexp.special import constant_C

laws = {
    "rademacher": rademacher(),
    "uniform[-1,1]": Uniform(-1.0, 1.0),
    "laplace(1)": Laplace(1.0),
    "exp(1) - 1": CenteredExponential(1.0),
}

# %% [markdown]
# Classical norms (eps = 1) and the squared ratio. The ratio never exceeds
# C^2, and equals it when |X| is constant.

# %%
print(f"{'law':<15}{'psi1':>12}{'psi11':>12}{'ratio^2':>10}")
for name, d in laws.items():
    a = orlicz_norm(d, PSI1).value
    b = orlicz_norm(d, PSI11).value
    print(f"{name:<15}{a:12.6f}{b:12.6f}{(a / b) ** 2:10.4f}")
print(f"{'C^2':<15}{'':24}{constant_C() ** 2:10.4f}")

# %% [markdown]
# The solver reports its final bracket and how many expectations it needed.

# %%
res = orlicz_norm(Laplace(1.0), PSI11, 0.3, rtol=1e-12)
print(res)
print("golden ratio check:", orlicz_norm(Laplace(1.0), PSI11).value, (1 + math.sqrt(5)) / 2)

# %% [markdown]
# Norms shrink as the threshold grows. For Rademacher the psi1 norm is
# exactly 1 / log(1 + eps).

# %%
for eps in np.geomspace(0.01, 10.0, 7):
    got = orlicz_norm(rademacher(), PSI1, eps).value
    print(f"eps={eps:8.4f}  psi1 norm={got:10.6f}  1/log1p(eps)={1 / math.log1p(eps):10.6f}")
