# %% [markdown]
# # Small thresholds
#
# As eps shrinks, eps times the psi1 norm tends to E|X|. The psi11 norm
# behaves differently: sqrt(eps) times it tends to sqrt(E X^2 / 2). This
# drives the i.i.d. tail constant down toward 2.

# %%
from subexp.bounds import NormFamily, corollary_constant
from subexp.dist import Laplace, Uniform, rademacher
from subexp.special import eps_star, u_star
from subexp.verify import check_psi1_asymptotic, check_psi11_asymptotic

grid = [1e-1, 1e-2, 1e-3, 1e-4]

# %%
for name, d in (("rademacher", rademacher()), ("uniform", Uniform(-1, 1)), ("laplace", Laplace(1.0))):
    for chk in (check_psi1_asymptotic(d, grid), check_psi11_asymptotic(d, grid)):
        errs = "  ".join(f"{e:.2e}" for e in chk.relative_errors)
        print(f"{name:<11}{chk.quantity:<27} limit={chk.limit:.6f}  rel.err: {errs}")

# %% [markdown]
# For a Rademacher sum the Gaussian-branch bound can be written as
# exp(-x^2 / (c n E X^2)). With eps = (x/n)^2 / E X^2 the constant c
# decreases toward 2 as x/n shrinks.

# %%
n = 10 ** 6
for ratio in (1e-1, 1e-2, 1e-3, 1e-4):
    print(f"x/n={ratio:g}  c_eff={corollary_constant(rademacher(), n, ratio * n):.6f}")

# %% [markdown]
# Fixed thresholds give larger constants: psi11 at eps = 1, and psi1 at its
# best threshold.

# %%
e_s, objective = eps_star()
print("psi11, eps=1   :", corollary_constant(rademacher(), n, 1e-3 * n, epsilon=1.0), 4 / u_star() ** 2)
print("psi1, eps_star :", corollary_constant(rademacher(), n, 1e-3 * n, family=NormFamily.PSI1, epsilon=e_s),
      objective)
