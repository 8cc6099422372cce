"""Class numbers of D = N^2 - 4 against the 744/720 tension.

The normalized value at (N~) tends to 744, while trace ratios over whole
class groups tend to 720.  If h(N^2 - 4) were 1, the two would have to agree,
so one-class discriminants of this shape must eventually die out.  The scan
shows h growing and the single-class rows thinning as N increases.
"""

from realquad import j_series, trace
from realquad.traces import class_number_one_scan

rows = class_number_one_scan(60, tol=1e-9, prec=128)

print(f"{'N':>4} {'D':>6} {'h':>3}  {'j^nor((N~))':>16}  {'|value-720|':>12}")
ones = 0
for r in rows:
    mark = " *" if r.h == 1 else ""
    ones += r.h == 1
    print(f"{r.N:>4} {r.D:>6} {r.h:>3}  {r.jnor:>16.8f}  {r.gap720:>12.6f}{mark}")

print(f"\nrows with h = 1: {ones} of {len(rows)} (starred); they thin out as "
      "the value detaches from 720")

j = j_series(64)
t = trace(j, 60, tol=1e-8)
print(f"\nfor contrast, a whole-class-group average: D=60 has h={t.h} and "
      f"Tr ratio {float(t.ratio.real):.4f} (heading for 720)")
