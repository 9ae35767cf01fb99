# %% [markdown]
# # Defects and polarizations
#
# Three independent routes to the level-m polarization, and the vanishing of
# defects with more than 2m entries.

# %%
import random
from math import factorial

from torsionlab import OperatorField, defect, gen_torsion, gen_torsion_closed, haantjes, polarization
from torsionlab.catalog import default_chart, random_poly

rng = random.Random(3)
chart = default_chart(3)


def rand_op():
    return OperatorField(chart, [[random_poly(chart, 1, rng) for _ in range(3)] for _ in range(3)])


ops = [rand_op() for _ in range(5)]
A = ops[0]

# %% Recursive vs closed torsion
print(all(gen_torsion(A, m) == gen_torsion_closed(A, m) for m in (1, 2)))

# %% Subset sum, lambda coefficient, recurrence
P = {method: polarization(2, ops[:4], method) for method in ("subset", "lambda", "recurrence")}
print(P["subset"] == P["lambda"] == P["recurrence"], "nonzero terms:", len(P["subset"].nonzero()))

# %% Diagonal wrt the symmetric polarization
print(polarization(2, [A] * 4) == gen_torsion(A, 2) * factorial(4))

# %% One entry too many
print("defect(1, 3 ops) = 0:", defect(1, ops[:3]).is_zero())
print("defect(2, 5 ops) = 0:", defect(2, ops).is_zero())

# %% In two dimensions every level-2 torsion is zero
c2 = default_chart(2)
B = OperatorField(c2, [[random_poly(c2, 2, rng) for _ in range(2)] for _ in range(2)])
print("n = 2 haantjes zero:", haantjes(B).is_zero())
