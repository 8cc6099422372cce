"""Values f(w) of modular functions at real quadratic irrationals.

Two independent evaluators:

* value_kernel integrates f(z) K(z, w) over the fixed circular arc from
  e^(i pi/3) to e^(2 i pi/3), where K is the rational kernel built from the
  minus-CF orbit of w.  The arc keeps Im z >= sqrt(3)/2, so the q-expansion
  of f converges like a stone.
* value_direct integrates f along one loop of the closed geodesic attached
  to a form, in the hyperbolic arclength parameter, evaluating f by modular
  reduction.  It never touches the kernel machinery.

Both are normalized by the geodesic length 2 log eps.  f = 1 gives exactly
+2 log eps in either evaluator (orientation from w to its conjugate).
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

from mpmath import mp

from . import minuscf, modfun, pell
from .quadfield import Mobius, QForm, QuadIrr, apply_mobius, roots_of_form
from .quadrature import integrate

TERM_BUDGET = 10_000_000   # kernel terms; e^55-scale digit sums are out of reach


class Kernel:
    """K(z, w) = sum over the orbit of 1/(z - w_i) - 1/(z - w~_i).

    Terms are paired as (w - w~) / (z^2 - (w + w~) z + w w~); the pair data is
    exact and rendered once per working precision.
    """

    def __init__(self, orbit: minuscf.OrbitTable):
        if len(orbit) > TERM_BUDGET:
            raise ValueError(
                f"kernel has {len(orbit)} terms, beyond the {TERM_BUDGET} budget")
        self.orbit = orbit
        self._cache: dict[int, list] = {}

    def __len__(self) -> int:
        return len(self.orbit)

    def _terms(self, prec: int):
        terms = self._cache.get(prec)
        if terms is None:
            terms = []
            with mp.workprec(prec):
                for pt in self.orbit.points:
                    P, Q, D = pt.w
                    sq = mp.sqrt(D)
                    s = mp.mpf(2 * P) / Q              # w + w~
                    p = mp.mpf(P * P - D) / (Q * Q)    # w * w~
                    d = 2 * sq / Q                     # w - w~
                    terms.append((d, s, p))
            self._cache[prec] = terms
        return terms

    def __call__(self, z, prec: int = 128):
        terms = self._terms(prec)
        with mp.workprec(prec):
            z = mp.mpc(z)
            z2 = z * z
            acc = mp.mpc(0)
            for d, s, p in terms:
                acc += d / (z2 - s * z + p)
            return acc

    def min_arc_distance(self, grid: int = 64) -> float:
        """min over the arc of the distance to the nearest orbit point."""
        best = math.inf
        pts = [float(pt.w) for pt in self.orbit.points]
        pts += [float(pt.w_conj) for pt in self.orbit.points]
        for i in range(grid + 1):
            t = math.pi / 3 + (math.pi / 3) * i / grid
            z = complex(math.cos(t), math.sin(t))
            best = min(best, min(abs(z - x) for x in pts))
        return best


class CycleValue(NamedTuple):
    raw: complex
    normalized: complex
    two_log_eps: float
    quad_err: float
    method: str


def _finish(raw, two_log_eps, err, method: str, prec: int) -> CycleValue:
    with mp.workprec(prec):
        return CycleValue(+raw, +(raw / two_log_eps), +two_log_eps, +err, method)


def value_kernel(f: modfun.FourierSeries, period: Iterable[int],
                 tol: float = 1e-12, prec: int = 128) -> CycleValue:
    """f(w) = int_rho^(rho^2) f(z) K(z, w) dz for the purely periodic w of `period`."""
    p = minuscf.validate_period(period)
    kern = Kernel(minuscf.orbit_table(p))
    w = minuscf.from_period(p)
    L = pell.geodesic_length(w.disc, prec)
    series_slack = [mp.mpf(0)]

    def integrand(theta):
        z = mp.expjpi(theta / mp.pi)      # e^(i theta)
        fv, ferr = modfun.eval_series(f, z, prec)
        kv = kern(z, prec)
        if ferr:
            slack = ferr * abs(kv)
            if slack > series_slack[0]:
                series_slack[0] = slack
        return fv * kv * 1j * z

    with mp.workprec(prec):
        val, qerr = integrate(integrand, mp.pi / 3, 2 * mp.pi / 3, tol, prec,
                              breakpoints=[mp.pi / 2])
        err = qerr + series_slack[0] * (mp.pi / 3)
    return _finish(val, L, err, "kernel", prec)


_CUSP_H = 1.1      # reduced-height threshold marking a cusp excursion


def _e1(s, prec: int):
    """E1(s) without the power-series cancellation mpmath hits for |Im s| >> 1.

    For large |s| the asymptotic series e^-s/s sum k! (-1/s)^k is summed to its
    optimal truncation (error below e^-s/s * k!/|s|^k, negligible here); for
    small |s| mpmath.e1 runs at a precision padded by the ~1.44 |s| bits the
    alternating series cancels.
    """
    mag = abs(s)
    if mag >= 70:
        with mp.workprec(prec + 16):
            acc = mp.mpc(1)
            term = mp.mpc(1)
            for k in range(1, 48):
                term *= -k / s
                acc += term
                if abs(term) < mp.mpf(2) ** (-prec - 8):
                    break
            return mp.exp(-s) / s * acc
    with mp.workprec(prec + int(1.5 * mag) + 32):
        return +mp.e1(s)


def _excursion_sum(f: modfun.FourierSeries, z1, z2, alpha, beta,
                   tol_share, prec):
    """int over the chord z1 -> z2 of f(zeta) [1/(zeta-alpha) - 1/(zeta-beta)],
    summed term by term in closed form (logs and exponential integrals).

    Valid whenever the chord stays in the upper half plane; here both
    endpoints sit at the excursion threshold height, so the q-powers decay
    like e^(-2 pi n H) and a couple dozen terms certify the tail.
    """
    h_min = min(z1.imag, z2.imag)
    chord = abs(z2 - z1)
    pole_gain = 2 * chord / h_min              # bounds int |dzeta| / |zeta - p|
    total = mp.mpc(0)
    # n = 0 term: plain logarithms (no winding: each zeta - p keeps its half plane)
    c0 = f.c(0)
    if c0:
        total += c0 * (mp.log(z2 - alpha) - mp.log(z1 - alpha)
                       - mp.log(z2 - beta) + mp.log(z1 - beta))

    prec = mp.prec

    def J(n, p):
        # int e^(2 pi i n zeta)/(zeta - p) dzeta = e^(2 pi i n p) *
        #   [E1(-2 pi i n (z1 - p)) - E1(-2 pi i n (z2 - p))]
        s1 = -2j * mp.pi * n * (z1 - p)
        s2 = -2j * mp.pi * n * (z2 - p)
        return mp.expjpi(2 * n * p) * (_e1(s1, prec) - _e1(s2, prec))

    for n in range(-f.pole_order, 0):
        total += f.c(n) * (J(n, alpha) - J(n, beta))
    err = mp.mpf(0)
    n = 0
    while True:
        n += 1
        if n > f.n_trunc:
            err += modfun.tail_bound(f, mp.exp(-2 * mp.pi * h_min)) * pole_gain
            break
        bound = abs(mp.mpf(f.c(n))) * mp.exp(-2 * mp.pi * n * h_min) * pole_gain
        if n > 4 and bound < tol_share / 4:
            tail = (modfun.tail_bound(
                modfun.FourierSeries(0, (0,) * (n + 1), f.tail_a, f.tail_b),
                mp.exp(-2 * mp.pi * h_min)) * pole_gain)
            # explicit coefficients beyond n, if any, still certified by tail model
            err += tail
            break
        cn = f.c(n)
        if cn:
            total += cn * (J(n, alpha) - J(n, beta))
    return total, err


def value_direct(f: modfun.FourierSeries, form: QForm,
                 tol: float = 1e-12, prec: int = 128) -> CycleValue:
    """sqrt(D) int f(z)/Q_w(z,1) dz along one geodesic loop.

    The loop is the arclength window [u0, u0 + 2 log eps] of z(u) = c +
    r(-sgn(a) tanh u + i sech u), which runs from w toward the conjugate root;
    f(z(u)) is periodic in u, and u0 is placed at a low point of the reduced
    path.  Stretches whose reduced height stays below the cusp threshold are
    integrated numerically (f evaluated by modular reduction); each cusp
    excursion is mapped by its reduction matrix and integrated in closed form
    along a low chord, which removes the e^(2 pi height) oscillation that
    plain quadrature would have to cancel digit by digit.
    """
    D = form.disc
    sol = pell.pell_fundamental(D)
    L = pell.geodesic_length(D, prec)
    log_eps = float(sol.eps_log(53))
    w_root, wt_root = roots_of_form(form)
    series_slack = [mp.mpf(0)]

    # the reduction of z(u) amplifies rounding by about e^|u|, so the window
    # is anchored near -log eps (making |u| <= ~log eps) and the precision is
    # padded by 1.45 bits per unit of actual depth
    prov = prec + int(1.6 * log_eps) + 64
    with mp.workprec(prov):
        period_p = 2 * sol.eps_log(prov)
        center_p = mp.mpf(-form.b) / (2 * form.a)
        radius_p = mp.sqrt(D) / (2 * abs(form.a))
        sgn = 1 if form.a > 0 else -1
        anchor = -period_p / 2
        u0 = None
        width = mp.mpf(2)
        while u0 is None:
            k = 0
            best = (mp.inf, anchor)
            while k * mp.mpf(1) / 4 <= width:
                for cand in (anchor + k * mp.mpf(1) / 4, anchor - k * mp.mpf(1) / 4):
                    z = center_p + radius_p * mp.mpc(-sgn * mp.tanh(cand),
                                                     1 / mp.cosh(cand))
                    h = modfun.reduce_to_fundamental(z, prov).imag
                    if h < best[0]:
                        best = (h, cand)
                if best[0] < _CUSP_H - mp.mpf("0.02"):
                    u0 = best[1]
                    break
                k += 1
            width *= 2
            if width > period_p:
                u0 = best[1]
        depth = max(abs(u0), abs(u0 + period_p))
    work = prec + int(1.45 * float(depth)) + 32

    with mp.workprec(work):
        period = 2 * sol.eps_log(work)
        center = mp.mpf(-form.b) / (2 * form.a)
        radius = mp.sqrt(D) / (2 * abs(form.a))
        H = mp.mpf(_CUSP_H)

        def z_of(u):
            return center + radius * mp.mpc(-sgn * mp.tanh(u), 1 / mp.cosh(u))

        # scan for cusp excursions; frozen gamma turns each into chord data
        excursions = []   # (u_enter, u_exit, zeta1, zeta2, alpha, beta)
        u = u0
        step = mp.mpf(1) / 4
        while u < u0 + period:
            gamma, zr = modfun.reduce_with_matrix(z_of(u), work)
            if zr.imag > H:
                a_f = apply_mobius(gamma, w_root)
                b_f = apply_mobius(gamma, wt_root)
                alpha, beta = a_f.to_mpf(work), b_f.to_mpf(work)
                c2, r2 = (alpha + beta) / 2, abs(alpha - beta) / 2
                # the scan point can sit at the arc apex, where rounding may
                # push the height a hair above the radius
                d_now = mp.acosh(max(r2 / zr.imag, mp.mpf(1)))
                rising = (gamma.act_complex(z_of(u + step / 8)).imag > zr.imag)
                u_top = u + d_now if rising else u - d_now
                d_h = mp.acosh(r2 / H)
                u_enter, u_exit = u_top - d_h, u_top + d_h
                u_enter = max(u_enter, excursions[-1][1] if excursions else u0)
                u_exit = min(u_exit, u0 + period)
                if u_exit - u_enter > step / 16:
                    z1 = gamma.act_complex(z_of(u_enter))
                    z2 = gamma.act_complex(z_of(u_exit))
                    excursions.append((u_enter, u_exit, z1, z2, alpha, beta))
                # heights hovering at the threshold must not stall the cursor
                u = max(u_exit, u) + step / 8
            else:
                u += step

        def integrand(u):
            fv, ferr = modfun.eval_series(
                f, modfun.reduce_to_fundamental(z_of(u), work), work)
            if ferr > series_slack[0]:
                series_slack[0] = ferr
            return fv

        bounds = [u0] + [b for e in excursions for b in (e[0], e[1])] + [u0 + period]
        total = mp.mpc(0)
        err = mp.mpf(0)
        n_segments = len(excursions) + 1
        for lo, hi in zip(bounds[0::2], bounds[1::2]):
            if hi - lo < mp.mpf(2) ** (-work // 2):
                continue
            breaks = [lo + k for k in range(1, int(float(hi - lo)))]
            val, qerr = integrate(integrand, lo, hi, tol / (2 * n_segments),
                                  work, breakpoints=breaks)
            total += val
            err += qerr
        for (_, _, z1, z2, alpha, beta) in excursions:
            val, xerr = _excursion_sum(f, z1, z2, alpha, beta,
                                       tol / (2 * max(1, len(excursions))), work)
            total += val
            err += xerr
        err += series_slack[0] * period
    return _finish(total, L, err, "direct", prec)


def geodesic_endpoint_gap(form: QForm, prec: int = 128):
    """|z(2 log eps) - A_w^{-1} z0|; zero up to rounding (used as a self-check)."""
    D = form.disc
    sol = pell.pell_fundamental(D)
    aw = pell.automorph(form, sol)
    work = prec + int(2.9 * float(sol.eps_log(53))) + 16
    with mp.workprec(work):
        center = mp.mpf(-form.b) / (2 * form.a)
        radius = mp.sqrt(D) / (2 * abs(form.a))
        sgn = 1 if form.a > 0 else -1
        z0 = mp.mpc(center, radius)
        L = 2 * sol.eps_log(work)
        z_end = center + radius * mp.mpc(-sgn * mp.tanh(L), 1 / mp.cosh(L))
        return abs(z_end - aw.inverse().act_complex(z0))


def value_at(f: modfun.FourierSeries, x: QuadIrr,
             tol: float = 1e-12, prec: int = 128) -> CycleValue:
    """Value at any real quadratic irrational: reduce to the purely periodic
    representative (Gamma-invariance makes this well defined), then integrate
    over the fixed arc."""
    cf = minuscf.expand(x)
    return value_kernel(f, cf.period, tol, prec)


def kernel_symmetry_check(N: int, theta_step: float = 1e-2, prec: int = 128) -> float:
    """max over the grid of |K_N(e^(i(pi-t))) - conj(K_N(e^(it)))| (exact identity)."""
    if N < 3:
        raise ValueError("N must be >= 3")
    kern = Kernel(minuscf.orbit_table((N,)))
    with mp.workprec(prec):
        worst = mp.mpf(0)
        steps = int(float(mp.pi / 3) / theta_step) + 1
        for i in range(steps + 1):
            t = mp.pi / 3 + min(mp.mpf(theta_step) * i, mp.pi / 3)
            a = kern(mp.expjpi((mp.pi - t) / mp.pi), prec)
            b = kern(mp.expjpi(t / mp.pi), prec)
            worst = max(worst, abs(a - mp.conj(b)))
        return float(worst)


def arc_sin_integral(f: modfun.FourierSeries, tol: float = 1e-12, prec: int = 128):
    """int_{pi/3}^{2pi/3} f(e^(i t)) sin t dt; equals c(0) for modular f
    (positively oriented arc; this is Theorem-4.1's limit identity)."""
    def integrand(theta):
        z = mp.expjpi(theta / mp.pi)
        fv, _ = modfun.eval_series(f, z, prec)
        return fv * mp.sin(theta)

    with mp.workprec(prec):
        val, err = integrate(integrand, mp.pi / 3, 2 * mp.pi / 3, tol, prec,
                             breakpoints=[mp.pi / 2])
    return val, err


class LimitRow(NamedTuple):
    N: int
    re: float
    im: float
    gap: float


class LimitScan(NamedTuple):
    rows: tuple[LimitRow, ...]
    arc_integral: float
    c0: float
    arc_gap: float


def limit_scan(f: modfun.FourierSeries, n_list: Sequence[int],
               tol: float = 1e-12, prec: int = 128) -> LimitScan:
    """Normalized values at (N~) next to the arc identity they converge to."""
    if any(n <= 2 for n in n_list):
        raise ValueError("all N must exceed 2")
    c0 = float(f.constant_term())
    rows = []
    for n in n_list:
        cv = value_kernel(f, (n,), tol, prec)
        rows.append(LimitRow(n, float(cv.normalized.real),
                             float(cv.normalized.imag),
                             abs(float(cv.normalized.real) - c0)))
    arc, _ = arc_sin_integral(f, tol, prec)
    arc_re = float(arc.real) if hasattr(arc, "real") else float(arc)
    return LimitScan(tuple(rows), arc_re, c0, abs(arc_re - c0))


def gamma_translate_value(f: modfun.FourierSeries, x: QuadIrr, m: Mobius,
                          tol: float = 1e-12, prec: int = 128) -> CycleValue:
    """Value at m(x); Gamma-invariance says it matches value_at(f, x)."""
    return value_at(f, apply_mobius(m, x), tol, prec)
