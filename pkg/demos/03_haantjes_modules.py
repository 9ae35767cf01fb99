# %% [markdown]
# # Haantjes modules
#
# Both torsions plus 2m - 1 mixed polarizations decide whether a pair spans a
# module (function coefficients) or only a vector space (constants).

# %%
from torsionlab import check_module, make_diagonal
from torsionlab.catalog import FamilySpec, default_chart, make_random

chart = default_chart(2)
x1, x2 = chart.var("x1"), chart.var("x2")
A = make_diagonal([x2, x1], chart)
B = make_diagonal([x1 * x2, x1 + x2], chart)

# %% Level 2: a module
print("\n".join(check_module(A, B, 2).lines()))

# %% Level 1: the torsion of A is in the way
rep = check_module(A, B, 1)
print(rep.verdict, rep.witness)

# %% A non-Haantjes partner in three dimensions
D = make_random(FamilySpec("diagonal", 3, seed=1))
R = make_random(FamilySpec("polynomial-random", 3, seed=2))
rep = check_module(D, R, 2)
print(rep.verdict, rep.witness.check, rep.witness.index)

# %% Randomized zero tests instead of exact comparison
rep = check_module(A, B, 2, randomized=(10, 1000), seed=0)
print(rep.verdict, {r["check"]: r["outcome"] for r in rep.randomized})
