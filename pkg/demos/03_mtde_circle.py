"""
Uniform-measure directional entropy around the circle
=====================================================

For a direction (x, y) put z_l = x + l y and z_r = x + r y.  The value is
max(|z_l|, |z_r|) ln m when they share a sign and |z_r - z_l| ln m otherwise.
The permutivity cases say when that value is backed by a theorem.
"""

# %%
import math
import os

import numpy as np

from lcadirent import Direction, mtde_case_theorem, mtde_circle_curve, mtde_uniform
from lcadirent.io import emit_svg
from lcadirent.mtde import sector_boundaries

out = os.environ.get("LCADIRENT_OUTDIR", "demo_output")
os.makedirs(out, exist_ok=True)

rules = {
    "mod11": "2x[0]+4x[1]+3x[2]+1x[3]+6x[4]+7x[5] % 11",
    "mod19": "6x[-3]+3x[-2]+5x[-1]+2x[0] % 19",
    "mod23": "12x[-2]+3x[-1]+5x[0]+4x[1]+1x[2]+21x[3] % 23",
}

# %%
for name, text in rules.items():
    print(name, "boundaries", np.round(sector_boundaries(text), 5))
    for theta in (0.2, 1.0, 2.0, 2.75, 4.0):
        v = Direction.from_angle(theta)
        cv = mtde_case_theorem(text, v)
        print(f"   theta={theta:4.2f}  h={mtde_uniform(text, v):8.4f}  case={cv.case}")

# %%
# antipodal symmetry: h(theta + pi) = h(theta)
c = mtde_circle_curve(rules["mod23"], 721)
shifted = [mtde_uniform(rules["mod23"], Direction.from_angle(t + math.pi)) for t in c[:10, 0]]
print(np.allclose(shifted, c[:10, 1]))

# %%
for name, text in rules.items():
    emit_svg(mtde_circle_curve(text), os.path.join(out, f"mtde_{name}.svg"),
             sector_boundaries(text), title=f"MTDE {name}")
print("svgs in", out)
