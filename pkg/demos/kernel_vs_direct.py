"""The dual-evaluator oracle on random periods.

value_kernel (fixed-arc kernel integral) and value_direct (geodesic loop with
modular reduction and closed-form cusp excursions) share no machinery; their
agreement on random inputs is the package's strongest internal check, and it
is exactly the reduction identity that makes values at real quadratics
computable on a fixed compact arc in the first place.
"""

import random
import time

from realquad import from_period, j_series, value_direct, value_kernel

rng = random.Random(2)
j = j_series(64)

print(f"{'period':<24} {'normalized (kernel)':>22} {'|kernel - direct|':>18}")
worst = 0.0
t0 = time.time()
for _ in range(12):
    n = rng.randint(1, 4)
    period = tuple(rng.randint(2, 12) for _ in range(n))
    if all(a == 2 for a in period):
        period = period[:-1] + (rng.randint(3, 12),)
    k = value_kernel(j, period, tol=1e-11, prec=128)
    d = value_direct(j, from_period(period).form(), tol=1e-11, prec=128)
    gap = float(abs(k.raw - d.raw))
    worst = max(worst, gap)
    print(f"{str(list(period)):<24} {float(k.normalized.real):>22.12f} {gap:>18.2e}")

print(f"\nworst disagreement: {worst:.2e}  ({time.time() - t0:.1f}s)")
