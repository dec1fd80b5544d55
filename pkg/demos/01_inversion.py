"""
Inverting linear rules
======================

A linear rule over Z_m is invertible when, for every prime p dividing m,
exactly one coefficient is a unit mod p.  The inverse is again linear.
"""

# %%
import numpy as np

from lcadirent import (compose, identity_rule, invert, is_invertible, parse_rule,
                       permutivity_report, step, to_laurent)

f = parse_rule("2x[-1]+2x[0]+3x[1] % 4")
print("rule      ", f)
print("polynomial", to_laurent(f))

# %%
# only x[1] has a unit coefficient mod 2
rep = permutivity_report(f)
print(rep.factors[0].P, "invertible:", is_invertible(f))

g = invert(f)
print("inverse   ", g)
print("f o g     ", compose(f, g))

# %%
# Run a random segment forward and back.  Segments shrink by the rule span
# on every step, so we compare on the surviving window.
rng = np.random.default_rng(0)
x = rng.integers(0, 4, size=24)
y, a = step(f, x, 0)
z, b = step(g, y, a)
print("start ", x[b:b + len(z)])
print("f,g   ", z)

# %%
# A composite modulus splits into prime-power parts and recombines by CRT.
h = parse_rule("3x[-1]+4x[0]+6x[2] % 12")
print(h, "->", invert(h), "| check:", compose(h, invert(h)) == identity_rule(12))

# %%
# x[-1]+x[1] mod 2 has two unit coefficients, so it is not injective.
print(is_invertible(parse_rule("1x[-1]+1x[1] % 2")))
