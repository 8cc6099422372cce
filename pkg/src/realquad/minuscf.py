"""Minus ("-") continued fractions of real quadratic irrationals.

The expansion a0 - 1/(a1 - 1/(a2 - ...)) with integer digits a_i >= 2 for
i >= 1 is computed by the exact ceiling algorithm on (P, Q) states, so period
detection is a plain state repetition and never a float comparison.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from mpmath import mp

from .quadfield import Mobius, QuadIrr, T_INV, V_INV, apply_mobius


class DegeneratePeriodError(ValueError):
    """All-2s periods encode the parabolic fixed point 1; they carry no geodesic."""


class MinusCF(NamedTuple):
    """preperiod digits followed by one period (a_1, ..., a_n), each a_i >= 2."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digits(self, count: int) -> list[int]:
        """First `count` digits of the full expansion."""
        out = list(self.preperiod)
        i = 0
        while len(out) < count:
            out.append(self.period[i % len(self.period)])
            i += 1
        return out[:count]


def validate_period(period: Iterable[int]) -> tuple[int, ...]:
    p = tuple(int(a) for a in period)
    if not p:
        raise ValueError("empty period")
    if any(a < 2 for a in p):
        raise ValueError(f"period digits must be >= 2, got {p}")
    if all(a == 2 for a in p):
        raise DegeneratePeriodError("period of all 2s is degenerate")
    return p


def primitive_period(period: Iterable[int]) -> tuple[int, ...]:
    """The shortest repeating block: (7, 7) describes the same point as (7,)."""
    p = validate_period(period)
    n = len(p)
    for m in range(1, n + 1):
        if n % m == 0 and p[:m] * (n // m) == p:
            return p[:m]
    return p


def _step(P: int, Q: int, D: int) -> tuple[int, int, int]:
    """One exact digit step: a = ceil(x), x' = 1/(a - x)."""
    a = QuadIrr(P, Q, D).ceil()
    P1 = a * Q - P
    Q1 = (P1 * P1 - D) // Q
    return a, P1, Q1


def expand(x: QuadIrr, max_steps: int = 1_000_000) -> MinusCF:
    """Minus-CF expansion of x, split exactly at the first repeated state."""
    P, Q, D = x
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (P, Q) not in seen:
        if len(digits) > max_steps:
            raise RuntimeError("period not found within step budget")
        seen[(P, Q)] = len(digits)
        a, P, Q = _step(P, Q, D)
        digits.append(a)
    start = seen[(P, Q)]
    return MinusCF(tuple(digits[:start]), tuple(digits[start:]))


def digit_matrix(a: int) -> Mobius:
    """The Mobius map z -> a - 1/z."""
    return Mobius(a, -1, 1, 0)


def period_matrix(period: Iterable[int]) -> Mobius:
    m = None
    for a in period:
        m = digit_matrix(a) if m is None else m @ digit_matrix(a)
    assert m is not None
    return m


def from_period(period: Iterable[int]) -> QuadIrr:
    """The purely periodic w > 1 with conjugate in (0, 1) for a given period.

    Solves the fixed-point quadratic of the digit Mobius product exactly.
    """
    p = validate_period(period)
    m = period_matrix(p)
    # m21 w^2 + (m22 - m11) w - m12 = 0; take the larger root
    disc = m.trace * m.trace - 4
    w = QuadIrr(m.m11 - m.m22, 2 * m.m21, disc)
    assert is_purely_periodic(w)
    return w


def is_purely_periodic(x: QuadIrr) -> bool:
    """x > 1 with Galois conjugate strictly inside (0, 1)."""
    return x.floor() >= 1 and x.conjugate().floor() == 0


def hyperbolic_word(w: QuadIrr, max_steps: int = 10_000_000) -> tuple[tuple[str, ...], int]:
    """Word in T^-1/V^-1 carrying w - 1 around its cycle, and the cycle length.

    Starting from w0 = w - 1 the step is T^-1 when w_i >= 1 and V^-1 otherwise,
    all exact; the word composes (last letter first) to the automorph of w - 1.
    """
    if not is_purely_periodic(w):
        raise ValueError(f"{w} is not purely periodic")
    w0 = apply_mobius(T_INV, w)
    word: list[str] = []
    cur = w0
    while True:
        if cur.floor() >= 1:
            cur = apply_mobius(T_INV, cur)
            word.append("T^-1")
        else:
            cur = apply_mobius(V_INV, cur)
            word.append("V^-1")
        if cur == w0:
            return tuple(word), len(word)
        if len(word) >= max_steps:
            raise RuntimeError("orbit did not close within step budget")


def word_product(word: Iterable[str]) -> Mobius:
    """Compose a hyperbolic word A_l ... A_1 (letters applied first on the right)."""
    letters = {"T^-1": T_INV, "V^-1": V_INV}
    m = None
    for name in word:
        a = letters[name]
        m = a if m is None else a @ m
    assert m is not None
    return m


class OrbitPoint(NamedTuple):
    r: int
    k: int
    w: QuadIrr
    w_conj: QuadIrr


class OrbitTable(NamedTuple):
    """Kernel orbit: w_{r,k} = k - 1/u_r over digits r and 1 <= k <= a_r - 1."""

    period: tuple[int, ...]
    points: tuple[OrbitPoint, ...]

    def __len__(self) -> int:
        return len(self.points)


def orbit_table(period: Iterable[int]) -> OrbitTable:
    # a repeated block would wrap the cycle several times; the kernel orbit is
    # the single loop of the primitive period
    p = primitive_period(period)
    n = len(p)
    points: list[OrbitPoint] = []
    for r in range(1, n + 1):
        rot = p[r % n:] + p[:r % n]          # period starting at a_{r+1}
        u = from_period(rot)
        for k in range(1, p[r - 1]):
            w_rk = apply_mobius(Mobius(k, -1, 1, 0), u)   # k - 1/u_r
            wt_rk = w_rk.conjugate()
            if w_rk.floor() != k - 1:
                raise AssertionError(f"w_({r},{k}) escaped ({k - 1}, {k})")
            if wt_rk.floor() != -(p[r - 1] - k):
                raise AssertionError(f"w~_({r},{k}) escaped its unit interval")
            points.append(OrbitPoint(r, k, w_rk, wt_rk))
    table = OrbitTable(p, tuple(points))
    assert len(table) == sum(a - 1 for a in p)
    return table


# -- Lagrange-spectrum point estimate ---------------------------------------

def nu_estimate(x: QuadIrr, q_max: int, q_min: int = 1, prec: int = 128) -> float:
    """min over q_min <= q <= q_max of q * ||q x||.

    With q_min = 1 this is the literal running minimum (non-increasing in
    q_max); a tail window such as q_min = isqrt(q_max) discards the small-q
    transients and estimates the liminf nu(x) itself.
    """
    if q_max < 10:
        raise ValueError("q_max must be >= 10")
    if not 1 <= q_min <= q_max:
        raise ValueError("need 1 <= q_min <= q_max")
    work = max(prec, 64 + q_max.bit_length() + 8)
    with mp.workprec(work):
        xv = x.to_mpf(work)
        best = mp.inf
        for q in range(q_min, q_max + 1):
            qx = q * xv
            v = q * abs(qx - mp.nint(qx))
            if v < best:
                best = v
    return float(best)


def nu_digit_bound(x: QuadIrr) -> float:
    """The minus-CF digit bound inf_r 1/a_r over the period (reported, not asserted)."""
    cf = expand(x)
    return 1.0 / max(cf.period)
