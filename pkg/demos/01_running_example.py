# %% [markdown]
# # The running example
#
# A diagonal operator with non-constant eigenvalues: not Nijenhuis, but Haantjes.

# %%
from fractions import Fraction

from torsionlab import Chart, OperatorField, haantjes, lie_bracket, nijenhuis, parse_poly

chart = Chart(("x1", "x2"))
x1, x2 = chart.var("x1"), chart.var("x2")

# %% Polynomials are exact and print canonically
p = parse_poly("3/2*x1^2*x2 - x2 + 1", chart)
print(p, "|", p.diff("x1"), "|", p.eval({"x1": 2, "x2": Fraction(1, 3)}))

# %% Vector fields and brackets
d1, d2 = chart.basis_vector(0), chart.basis_vector(1)
print(lie_bracket(d1, d2 * x1))  # d2

# %% The operator diag(x2, x1)
A = OperatorField.diagonal(chart, [x2, x1])
tau = nijenhuis(A)
for (i, j, k), c in tau.nonzero():
    print(f"tau[{i + 1}][{j + 1}][{k + 1}] = {c}")

# %% Level 2 kills it
print("haantjes is zero:", haantjes(A).is_zero())
