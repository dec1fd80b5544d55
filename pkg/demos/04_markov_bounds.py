"""
Bernoulli and Markov measures
=============================

Exact stationary vectors, entropy rates, and the directional upper bounds
|q| (r - l) H for the direction (s, q).
"""

# %%
import math
from fractions import Fraction as F

from lcadirent import (MarkovMeasure, bernoulli_bound, cylinder_prob, entropy_rate,
                       markov_bound, shannon_entropy)

rule = "2x[-1]+2x[0]+3x[1] % 4"
p = [F(1, 2), F(1, 8), F(1, 8), F(1, 4)]
print("H(p) =", shannon_entropy(p), "= 7/4 ln 2 =", 1.75 * math.log(2))
for q in range(-2, 3):
    print(f"q={q:+d}  bound={bernoulli_bound(rule, p, (0, q)):.6f}")

# %%
T = [
    [F(1, 2), F(1, 2), 0, 0],
    [F(1, 8), 0, F(1, 8), F(3, 4)],
    [0, F(1, 16), F(1, 16), F(7, 8)],
    [0, 0, 1, 0],
]
mu = MarkovMeasure.from_matrix(T)
print("stationary", [str(x) for x in mu.stationary])

rate = entropy_rate(mu)
print("row entropies", [round(h, 5) for h in rate.row_entropies])
print("rate", rate.rate)
print("closed form", (185 * math.log(2) - 3 * math.log(3) - 49 * math.log(7)) / 113)

# %%
print("bound for q=1:", markov_bound(rule, mu, (0, 1)))
print("P[x0=0, x1=1] =", cylinder_prob(mu, (0, 1)))
