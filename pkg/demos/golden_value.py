"""The value of j at the golden ratio, two independent ways.

The golden ratio expands as (2, 3~) in the minus continued fraction, so its
purely periodic representative is (3+sqrt(5))/2 with period [3].  The kernel
route integrates j(z) K(z, w) over the fixed arc; the direct route walks the
closed geodesic of the form [1, -1, -1].  Both land on 706.3248..., the lower
end of the conjectured value range [j^nor(golden), 744].
"""

from mpmath import mp

from realquad import (expand, j_series, parse_quad, value_direct,
                      value_kernel)

mp.pretty = True

golden = parse_quad("(1+sqrt(5))/2")
print("w  =", golden, "=", float(golden))
print("cf =", expand(golden), "(preperiod [2], period [3])")

j = j_series(64)

kernel = value_kernel(j, (3,), tol=1e-14, prec=160)
print("\nkernel route:")
print("  raw        =", mp.nstr(kernel.raw, 24))
print("  normalized =", mp.nstr(kernel.normalized, 24))
print("  2 log eps  =", mp.nstr(kernel.two_log_eps, 24))

direct = value_direct(j, golden.form(), tol=1e-14, prec=160)
print("\ndirect route (geodesic of [1,-1,-1]):")
print("  normalized =", mp.nstr(direct.normalized, 24))

print("\nagreement |kernel - direct| =", mp.nstr(abs(kernel.raw - direct.raw), 3))
print("normalized value sits", mp.nstr(744 - kernel.normalized.real, 8),
      "below the 744 ceiling")
