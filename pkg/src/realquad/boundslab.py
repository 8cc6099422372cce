"""Numerical embodiment of the technical-section bounds.

F and G are the real/imaginary parts of the elementary kernel difference,
S1/S2/S3 regroup the two-orbit sum S_{w,v}, and the C1/C2/K1/K2 constants
bound it on the arc.  Sweeps run in float64 numpy; the margins they certify
are many orders above double-precision noise.

Note on constants: the source statement of C1 carries "- 4/x - 3/x^2", but the
sum bound it comes from needs "+ 4/x + 3/x^2" (with the minus signs the bound
is numerically false already for w=(3~), v=(7~)).  C1 here uses the corrected
signs; `c1_literal` preserves the stated variant for reports.  C2 defaults to
the safer -3.926 with the -3.925 statement value alongside.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import minuscf, modfun, pell

E55 = math.exp(55)

IM_LO = -13.02       # statement bound; the proof display shows -13.015
IM_HI = 15.0


def F(x, y, theta):
    """(cos^2 t - (x+y)cos t + xy - sin^2 t) / (|e^it - x|^2 |e^it - y|^2)."""
    x, y, theta = np.asarray(x, float), np.asarray(y, float), np.asarray(theta, float)
    c, s2 = np.cos(theta), np.sin(theta) ** 2
    num = c * c - (x + y) * c + x * y - s2
    den = ((c - x) ** 2 + s2) * ((c - y) ** 2 + s2)
    return num / den


def G(x, y, theta):
    """sin t (x + y - 2 cos t) / (|e^it - x|^2 |e^it - y|^2)."""
    x, y, theta = np.asarray(x, float), np.asarray(y, float), np.asarray(theta, float)
    c, s = np.cos(theta), np.sin(theta)
    num = s * (x + y - 2 * c)
    den = ((c - x) ** 2 + s * s) * ((c - y) ** 2 + s * s)
    return num / den


# -- Theorem constants -------------------------------------------------------

def _k0(a_r: int) -> int:
    return 1 if a_r == 2 else 0


def _k1(a_r: int) -> int:
    return 2 if a_r == 2 else (1 if a_r == 3 else 0)


class BoundConstants(NamedTuple):
    r: int
    a_r: int
    b_r: int
    k0: int
    k1: int
    c1: float
    c2: float
    c1_literal: float        # the stated "- 4/x - 3/x^2" variant, for reports
    c2_statement: float      # -3.925 variant


def bound_constants(r: int, a_r: int, b_r: int) -> BoundConstants:
    if not 2 <= a_r <= b_r:
        raise ValueError("need 2 <= a_r <= b_r")
    k0, k1 = _k0(a_r), _k1(a_r)
    x1, y1 = a_r - 3 + k1, b_r - 3 + k1
    c1 = 12.6 + (7 / 3) * (math.log(y1 / x1) + 4 / x1 + 3 / x1 ** 2)
    c1_lit = 12.6 + (7 / 3) * (math.log(y1 / x1) - 4 / x1 - 3 / x1 ** 2)
    x2, y2 = a_r + 2 + k0, b_r + 1 + k0
    factor = 1 - 2 / a_r + 1 / (2 * a_r ** 2)
    body = factor * (2 * math.log(y2 / x2) - 5 / x2)
    return BoundConstants(r, a_r, b_r, k0, k1, c1, -3.926 + body,
                          c1_lit, -3.925 + body)


# -- the two-orbit sum S_{w,v} ------------------------------------------------

def _orbit_floats(period: Sequence[int]) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per rotation r (0-based): arrays of w_{r,k} and w~_{r,k}, k = 1..a_r-1.

    The orbit table is built on the primitive period; a repeated block just
    cycles through the same rotations again.
    """
    table = minuscf.orbit_table(period)
    m = len(table.period)
    ws: list[list[float]] = [[] for _ in range(m)]
    wts: list[list[float]] = [[] for _ in range(m)]
    for pt in table.points:
        ws[pt.r - 1].append(float(pt.w))
        wts[pt.r - 1].append(float(pt.w_conj))
    prim = [(np.array(a), np.array(b)) for a, b in zip(ws, wts)]
    n = len(minuscf.validate_period(period))
    return [prim[r % m] for r in range(n)]


def _pole_sum(z: np.ndarray, points: np.ndarray) -> np.ndarray:
    """sum_k 1/(z - p_k) for a z-grid against a point list."""
    if len(points) == 0:
        return np.zeros_like(z)
    return (1.0 / (z[..., None] - points)).sum(axis=-1)


class SPair:
    """Orbit data of a pair (w, v) ready for S-sum evaluation on z-grids."""

    def __init__(self, w_period: Sequence[int], v_period: Sequence[int]):
        wp = minuscf.validate_period(w_period)
        vp = minuscf.validate_period(v_period)
        if len(wp) % len(vp) != 0:
            raise ValueError("v's period length must divide w's")
        if any(wp[r] > vp[r % len(vp)] for r in range(len(wp))):
            raise ValueError("need a_r <= b_r for every r")
        self.w_period, self.v_period = wp, vp
        self.n = len(wp)
        self._w = _orbit_floats(wp)
        self._v = _orbit_floats(vp)

    def digits(self, r: int) -> tuple[int, int]:
        return self.w_period[r - 1], self.v_period[(r - 1) % len(self.v_period)]

    def orbits(self, r: int):
        w, wt = self._w[r - 1]
        v, vt = self._v[(r - 1) % len(self.v_period)]
        return w, wt, v, vt

    def constants(self, r: int) -> BoundConstants:
        a_r, b_r = self.digits(r)
        return bound_constants(r, a_r, b_r)

    def s_direct(self, r: int, theta) -> np.ndarray:
        """Eq.-(3.1) sum: w-orbit terms minus v-orbit terms at z = e^(i theta)."""
        z = np.exp(1j * np.asarray(theta, float))
        w, wt, v, vt = self.orbits(r)
        return (_pole_sum(z, w) - _pole_sum(z, wt)
                - _pole_sum(z, v) + _pole_sum(z, vt))

    def s_split(self, r: int, theta):
        """(S1, S2, S3, S) at z = e^(i theta); S = S1 - S2 - S3 regroups (3.1)."""
        a_r, b_r = self.digits(r)
        w, wt, v, vt = self.orbits(r)
        z = np.exp(1j * np.asarray(theta, float))
        s1 = _pole_sum(z, w) - _pole_sum(z, v[: a_r - 1])
        s2 = _pole_sum(z, wt) - _pole_sum(z, vt[b_r - a_r:])
        s3 = _pole_sum(z, v[a_r - 1:]) - _pole_sum(z, vt[: b_r - a_r][::-1])
        return s1, s2, s3, s1 - s2 - s3


def s_split(w_period, v_period, r: int, theta):
    return SPair(w_period, v_period).s_split(r, theta)


class Violation(NamedTuple):
    r: int
    theta: float
    kind: str
    value: float
    bound: float
    margin: float


class TheoremSReport(NamedTuple):
    w_period: tuple[int, ...]
    v_period: tuple[int, ...]
    constants: tuple[BoundConstants, ...]
    violations: tuple[Violation, ...]
    re_extremes: tuple[float, float]
    im_extremes: tuple[float, float]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_theorem_S(w_period, v_period, theta_step: float = 1e-2) -> TheoremSReport:
    """Check C2(r) < Re S < C1(r) and the (-13.02, 15) imaginary bounds on a
    theta grid; violations become report rows, never exceptions."""
    pair = SPair(w_period, v_period)
    thetas = np.arange(math.pi / 3, 2 * math.pi / 3 + theta_step / 2, theta_step)
    thetas[-1] = min(thetas[-1], 2 * math.pi / 3)
    violations: list[Violation] = []
    consts = []
    re_lo, re_hi = math.inf, -math.inf
    im_lo, im_hi = math.inf, -math.inf
    for r in range(1, pair.n + 1):
        bc = pair.constants(r)
        consts.append(bc)
        s = pair.s_direct(r, thetas)
        re, im = s.real, s.imag
        re_lo, re_hi = min(re_lo, re.min()), max(re_hi, re.max())
        im_lo, im_hi = min(im_lo, im.min()), max(im_hi, im.max())
        for kind, vals, bound, sense in (
                ("re_upper", re, bc.c1, +1), ("re_lower", re, bc.c2, -1),
                ("im_upper", im, IM_HI, +1), ("im_lower", im, IM_LO, -1)):
            bad = vals >= bound if sense > 0 else vals <= bound
            for idx in np.nonzero(bad)[0]:
                violations.append(Violation(
                    r, float(thetas[idx]), kind, float(vals[idx]), bound,
                    float(abs(vals[idx] - bound))))
    return TheoremSReport(pair.w_period, pair.v_period, tuple(consts),
                          tuple(violations), (re_lo, re_hi), (im_lo, im_hi))


# -- Corollary 3.4 envelope ---------------------------------------------------

class Envelope(NamedTuple):
    M: float
    a_r: int
    b_r: int
    K1: float
    K2: float
    K2_spec_variant: float   # the -13.02/2 version (not a sound envelope)


def envelope(M: float, a_r: int) -> Envelope:
    """Computable envelopes for cos t Im S + sin t Re S under b_r >= M a_r.

    On the arc cos t in [-1/2, 1/2] and sin t in [sqrt3/2, 1], so
    K1 = 15/2 + max(C1, sqrt3/2 C1) and K2 = -15/2 + min(C2, sqrt3/2 C2).
    Both are positive for M >= e^55.
    """
    if M < 1 or a_r < 2:
        raise ValueError("need M >= 1 and a_r >= 2")
    b_r = math.ceil(M * a_r)
    bc = bound_constants(1, a_r, b_r)
    s32 = math.sqrt(3) / 2
    k1 = IM_HI / 2 + max(bc.c1, s32 * bc.c1)
    k2 = -IM_HI / 2 + min(bc.c2, s32 * bc.c2)
    k2_spec = -abs(IM_LO) / 2 + min(bc.c2, s32 * bc.c2)
    return Envelope(M, a_r, b_r, k1, k2, k2_spec)


# -- Theorem 4.3 comparison harness -------------------------------------------

class ComparisonReport(NamedTuple):
    w_period: tuple[int, ...]
    v_period: tuple[int, ...]
    re_nor_w: float
    re_nor_v: float
    mu: float                # Re f(v) - Re f(w)
    lam: float               # log eps_v - log eps_w
    ordered: bool            # Re f^nor(w) < Re f^nor(v)
    min_ratio: float         # min_r b_r / a_r
    below_guarantee: bool    # min_ratio < e^55: empirical regime
    condition_holds: bool    # Re f^nor(golden) < c(0)
    golden_value: float
    c0: float
    bracket: tuple[float, float] | None   # ((pi/3) n K2, (pi/3) n K1) if applicable
    bracket_holds: bool | None


def comparison_check(f: modfun.FourierSeries, w_period, v_period,
                     tol: float = 1e-10, prec: int = 128) -> ComparisonReport:
    from . import cyclevalue

    wp = minuscf.validate_period(w_period)
    vp = minuscf.validate_period(v_period)
    if len(wp) % len(vp) != 0:
        raise ValueError("v's period length must divide w's")
    cw = cyclevalue.value_kernel(f, wp, tol, prec)
    cv_ = cyclevalue.value_kernel(f, vp, tol, prec)
    golden = cyclevalue.value_kernel(f, (3,), tol, prec)
    c0 = float(f.constant_term())
    mu = float(cv_.raw.real - cw.raw.real)
    lam = float(cv_.two_log_eps - cw.two_log_eps) / 2
    ratios = [vp[r % len(vp)] / wp[r] for r in range(len(wp))]
    min_ratio = min(ratios)
    bracket = None
    bracket_holds = None
    if min_ratio >= E55:
        env = min((envelope(min_ratio, a) for a in wp), key=lambda e: e.K2)
        bracket = ((math.pi / 3) * len(wp) * env.K2,
                   (math.pi / 3) * len(wp) * env.K1)
        bracket_holds = bracket[0] < lam < bracket[1]
    return ComparisonReport(
        wp, vp, float(cw.normalized.real), float(cv_.normalized.real),
        mu, lam, float(cw.normalized.real) < float(cv_.normalized.real),
        min_ratio, min_ratio < E55,
        float(golden.normalized.real) < c0, float(golden.normalized.real), c0,
        bracket, bracket_holds)


# -- lemma sweeps --------------------------------------------------------------

class SweepResult(NamedTuple):
    name: str
    points: int
    violations: int
    extremes: tuple[float, float]
    worst_margin: float      # smallest distance to a bound (>= 0 when clean)


_EPS = 1e-12     # closed-inequality slack: corners attain the bounds exactly


def _theta_grid(step: float) -> np.ndarray:
    t = np.arange(math.pi / 3, 2 * math.pi / 3 + step / 2, step)
    t[-1] = min(t[-1], 2 * math.pi / 3)
    return t


def _bounds_sweep(name: str, fn, xs: np.ndarray, ys: np.ndarray,
                  thetas: np.ndarray, lo: float, hi: float) -> SweepResult:
    worst_lo, worst_hi = math.inf, -math.inf
    bad = 0
    total = 0
    for x in xs:
        vals = fn(x, ys[:, None], thetas[None, :])
        total += vals.size
        worst_lo = min(worst_lo, float(vals.min()))
        worst_hi = max(worst_hi, float(vals.max()))
        bad += int((vals < lo - _EPS).sum() + (vals > hi + _EPS).sum())
    margin = min(worst_lo - lo, hi - worst_hi)
    return SweepResult(name, total, bad, (worst_lo, worst_hi), margin)


def lemma32_ii(step: float = 1e-2, theta_step: float = 1e-2) -> SweepResult:
    """-1.4 < F < 0.2 on |x|, |y| <= 1."""
    g = np.arange(-1, 1 + step / 2, step)
    return _bounds_sweep("F bounds on |x|,|y|<=1", F, g, g,
                         _theta_grid(theta_step), -1.4, 0.2)


def lemma32_iii(step: float = 1e-2, theta_step: float = 1e-2) -> SweepResult:
    """-0.5 <= F <= 0.2 on 1 <= |x|, |y| <= 2 (corner x=y=1 attains -0.5)."""
    g = np.concatenate([np.arange(-2, -1 + step / 2, step),
                        np.arange(1, 2 + step / 2, step)])
    return _bounds_sweep("F bounds on 1<=|x|,|y|<=2", F, g, g,
                         _theta_grid(theta_step), -0.5, 0.2)


def lemma33_iii(step: float = 1e-2, theta_step: float = 1e-2) -> SweepResult:
    """|G| <= sqrt(3)/2 on |x|, |y| <= 1, attained at G(0,0,.)."""
    g = np.arange(-1, 1 + step / 2, step)
    s32 = math.sqrt(3) / 2
    return _bounds_sweep("G bounds on |x|,|y|<=1", G, g, g,
                         _theta_grid(theta_step), -s32, s32)


def _monotone_sweep(name: str, fn, xs: np.ndarray, ys: np.ndarray,
                    theta_step: float, sense: int) -> SweepResult:
    """Finite-difference sign of fn along theta: sense=-1 decreasing, +1 increasing."""
    thetas = _theta_grid(theta_step)
    bad = 0
    total = 0
    worst = math.inf
    for x in xs:
        vals = fn(x, ys[:, None], thetas[None, :])
        d = np.diff(vals, axis=-1) * sense
        total += d.size
        bad += int((d < -_EPS).sum())
        worst = min(worst, float(d.min()))
    return SweepResult(name, total, bad, (worst, math.inf), worst)


def lemma32_i(x_step: float = 0.5, theta_step: float = 1e-3,
              hi: float = 60.0) -> SweepResult:
    """F decreasing in theta for x, y in [2, hi]; increasing on [-hi, -2]."""
    g = np.arange(2, hi + x_step / 2, x_step)
    dec = _monotone_sweep("F decreasing on (2,inf)^2", F, g, g, theta_step, -1)
    inc = _monotone_sweep("F increasing on (-inf,-2)^2", F, -g, -g, theta_step, +1)
    return SweepResult("F monotone (3.2 i)", dec.points + inc.points,
                       dec.violations + inc.violations,
                       (min(dec.extremes[0], inc.extremes[0]), math.inf),
                       min(dec.worst_margin, inc.worst_margin))


def lemma33_i(x_step: float = 0.5, theta_step: float = 1e-3,
              hi: float = 60.0) -> SweepResult:
    """G decreasing in theta on [2, hi]^2 and on [-hi, -2]^2."""
    g = np.arange(2, hi + x_step / 2, x_step)
    d1 = _monotone_sweep("G decreasing on (1,inf)^2", G, g, g, theta_step, -1)
    d2 = _monotone_sweep("G decreasing on (-inf,-1)^2", G, -g, -g, theta_step, -1)
    return SweepResult("G monotone (3.3 i)", d1.points + d2.points,
                       d1.violations + d2.violations,
                       (min(d1.extremes[0], d2.extremes[0]), math.inf),
                       min(d1.worst_margin, d2.worst_margin))


def lemma33_ii(x_step: float = 0.5, theta_step: float = 1e-3,
               hi: float = 60.0) -> SweepResult:
    """G increasing in theta for x in [2, hi], y in [-hi, -2]."""
    g = np.arange(2, hi + x_step / 2, x_step)
    return _monotone_sweep("G increasing (3.3 ii)", G, g, -g, theta_step, +1)


def lemma32_iv(x_step: float = 0.5, theta_step: float = 1e-2,
               hi: float = 60.0) -> SweepResult:
    """The explicit two-sided F bounds for x >= 2, y <= -2."""
    xs = np.arange(2, hi + x_step / 2, x_step)
    thetas = _theta_grid(theta_step)
    bad = 0
    total = 0
    worst = math.inf
    for x in xs:
        y = -xs[:, None]
        v = F(x, y, thetas[None, :])
        lo = (np.minimum(x * y - abs(x + y) / 2 - 0.5, x * y - 1)
              / (((x - 0.5) ** 2 + 0.75) * ((y + 0.5) ** 2 + 0.75)))
        hi_b = ((x * y + abs(x + y) / 2 - 0.5)
                / (((x + 0.5) ** 2 + 0.75) * ((y - 0.5) ** 2 + 0.75)))
        total += v.size
        bad += int(((v <= lo) | (v >= hi_b)).sum())
        worst = min(worst, float((v - lo).min()), float((hi_b - v).min()))
    return SweepResult("F two-sided (3.2 iv)", total, bad, (worst, math.inf), worst)
