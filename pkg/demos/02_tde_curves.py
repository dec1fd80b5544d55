"""
Topological directional entropy on [0, pi]
==========================================

Each prime power p^k dividing m contributes a piecewise term set by the
outermost unit positions L <= 0 <= R.  The curve is their sum.
"""

# %%
import math
import os

from lcadirent import closed_form_report, parse_rule, tde_curve, topological_entropy
from lcadirent.io import emit_csv, emit_svg
from lcadirent.tde import sample_curve

out = os.environ.get("LCADIRENT_OUTDIR", "demo_output")
os.makedirs(out, exist_ok=True)

rule = parse_rule("2x[-3]+3x[-2]+5x[-1]+30x[0]+3x[1]+2x[2]+5x[3] % 30")
curve = tde_curve(rule)
for t in curve.terms:
    print(f"p={t.p}  L={t.L:+d}  R={t.R:+d}  theta_L={t.theta_L:.4f}  theta_R={t.theta_R:.4f}")

# %%
# five sectors; within each, every term is |a cos + b sin| weighted by ln p
for sec in closed_form_report(curve):
    terms = " + ".join(f"|{a}cos{b:+d}sin| ln{p}" for p, _k, a, b in sec.expressions())
    print(f"[{sec.lo:.4f}, {sec.hi:.4f}]  {terms}")

# %%
print("h(pi/2) =", curve(math.pi / 2), "=", topological_entropy(rule))
print("h(0) = h(pi) = ln 30:", curve(0.0), curve(math.pi), math.log(30))

# %%
samples = sample_curve(curve, 721)
emit_csv(samples, os.path.join(out, "tde_mod30.csv"))
emit_svg(samples, os.path.join(out, "tde_mod30.svg"), curve.breakpoints,
         title="TDE, rule mod 30")
print("wrote", len(samples), "rows to", out)

# %%
# prime bipermutative rule: three pieces, peak (r - l) ln p at pi/2
r5 = tde_curve("3x[-4]+2x[-3]+3x[2]+4x[3] % 5")
print(len(closed_form_report(r5)), "sectors, peak", r5(math.pi / 2) / math.log(5), "ln 5")
