# %% [markdown]
# # Checking bounds against reference tails
#
# `domination_campaign` compares every bound family with a reference tail.
# Rademacher sums use the exact binomial law. Other laws fall back to a
# seeded Monte Carlo estimate, allowing four standard errors of slack.

# %%
import math

import numpy as np

from subexp.dist import Laplace, point_mass, rademacher
from subexp.verify import domination_campaign

# %%
rep = domination_campaign(rademacher(), 10, [0.1, 0.3, 1.0], np.linspace(0, 3 * math.sqrt(10), 301))
print(rep.summary())

# %% [markdown]
# A Laplace sum with 200k replications takes well under a second.

# %%
n = 30
rep = domination_campaign(Laplace(1.0), n, [0.3, 1.0], np.linspace(0, 3 * math.sqrt(n), 61),
                          mc_reps=200_000, seed=7)
print(rep.summary())
print(rep.to_csv().splitlines()[:4])

# %% [markdown]
# Summands that are identically zero have zero norm and are kept in the
# profile. The report notes them.

# %%
rep = domination_campaign([rademacher()] * 8 + [point_mass(0.0)] * 2, None, [1.0], np.linspace(0, 8, 33))
print(rep.summary())
