"""The limit j^nor((N~)) -> 744 and the arc identity behind it.

For single-digit periods (N~) the normalized value is real and creeps up to
the constant term c(0) = 744.  The same constant appears as the arc integral
of j(e^(i theta)) sin(theta) over [pi/3, 2pi/3], which the scan below
evaluates directly by quadrature.
"""

from realquad import j_series
from realquad.cyclevalue import limit_scan

j = j_series(64)
scan = limit_scan(j, [5, 10, 50, 100, 500, 1000], tol=1e-11, prec=128)

print(f"arc integral of j sin over the arc = {scan.arc_integral!r}")
print(f"constant term c(0)                 = {scan.c0!r}")
print(f"gap                                = {scan.arc_gap:.2e}\n")

print(f"{'N':>6}  {'Re j^nor((N~))':>18}  {'Im':>9}  {'744 - value':>12}")
for row in scan.rows:
    print(f"{row.N:>6}  {row.re:>18.10f}  {row.im:>9.1e}  {row.gap:>12.6f}")

print("\nthe gaps shrink monotonically; no rate is claimed, only the limit")
