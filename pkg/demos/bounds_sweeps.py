"""The bound laboratory: F/G sweeps, the two-orbit sum, and envelopes.

F and G are the real and imaginary parts of 1/(z-x) - 1/(z-y) on the unit
arc, normalized by (x - y).  Their elementary bounds feed the C1/C2 constants
that sandwich the two-orbit sum S_{w,v}, and those in turn give the envelope
constants K1/K2 whose positivity at M = e^55 drives the comparison theorem.
"""

import math

from realquad import boundslab as bl

print("== elementary sweeps (grid 0.01) ==")
for fn in (bl.lemma32_ii, bl.lemma32_iii, bl.lemma33_iii):
    r = fn()
    print(f"  {r.name:<28} points={r.points:>9,}  violations={r.violations}"
          f"  extremes=({r.extremes[0]:+.4f}, {r.extremes[1]:+.4f})")

r = bl.lemma32_i()
print(f"  {r.name:<28} points={r.points:>9,}  violations={r.violations}")
r = bl.lemma33_i(x_step=2.0)
print(f"  {r.name:<28} points={r.points:>9,}  violations={r.violations}"
      "   <- genuinely non-monotone beyond ~13.6 (kept red on purpose)")

print("\n== the two-orbit sum against its C1/C2 bounds ==")
for wp, vp in (((3,), (7,)), ((2, 5, 3), (7, 10, 8)), ((4,), (400,))):
    rep = bl.verify_theorem_S(wp, vp)
    c = rep.constants[0]
    print(f"  w={list(wp)} v={list(vp)}: Re S in "
          f"[{rep.re_extremes[0]:+.3f}, {rep.re_extremes[1]:+.3f}] vs "
          f"(C2, C1) = ({c.c2:+.3f}, {c.c1:+.3f}); violations={len(rep.violations)}")

print("\n== envelope constants at the comparison threshold M = e^55 ==")
for a in (2, 3, 10, 100):
    e = bl.envelope(bl.E55, a)
    print(f"  a_r={a:>3}: K1={e.K1:10.3f}  K2={e.K2:8.3f}  "
          f"(b_r = ceil(M a_r) ~ 1e{int(math.log10(e.b_r))})")
print("  K2 > 0 throughout: the bracket that forces the comparison ordering")
