# %% [markdown]
# # Haantjes brackets
#
# The level-2 bracket and the auxiliary brackets H1 and H2 recombine into the
# mixed polarizations.

# %%
import random

from torsionlab import h1_bracket, h2_bracket, haantjes, higher_haantjes, polarization
from torsionlab.catalog import FamilySpec, default_chart, make_random, random_poly

chart = default_chart(3)
A = make_random(FamilySpec("polynomial-random", 3, seed=4))
B = make_random(FamilySpec("polynomial-random", 3, seed=5))

# %% Mixed polarizations
print(polarization(2, [A, A, B, B]) == (higher_haantjes(A, B, 2) + h1_bracket(A, B)) * 4)
print(polarization(2, [A, A, A, B]) == h2_bracket(A, B) * 6)
print(polarization(2, [A, B, B, B]) == h2_bracket(B, A) * 6)

# %% Self pairs
print(higher_haantjes(A, A, 2) == haantjes(A) * 4, h1_bracket(A, A) == haantjes(A) * 2)

# %% Homogeneity for commuting pairs
P, P2 = make_random(FamilySpec("powers-of", 3, seed=6, count=2))
rng = random.Random(7)
f, g, h, k = (random_poly(chart, 1, rng) for _ in range(4))
I = chart.identity()
lhs = higher_haantjes(I * f + P * g, I * h + P2 * k, 2)
print(lhs == higher_haantjes(P, P2, 2) * (g * g * k * k))
