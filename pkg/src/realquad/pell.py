"""Pell equation t^2 - D u^2 = 4, fundamental units and geodesic lengths.

The production path runs the minus-CF of a root of discriminant D once around
its cycle; the period matrix is the fundamental automorph and hands over the
minimal (t, u) exactly, no matter how large the unit is.  A direct u-scan
backs this up for small solutions (see tests).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from mpmath import mp

from .quadfield import Mobius, QForm, QuadIrr, is_square
from . import minuscf


class PellSolution(NamedTuple):
    t: int
    u: int
    D: int

    def eps_log(self, prec: int = 128):
        """log((t + u sqrt(D)) / 2) at `prec` bits."""
        with mp.workprec(prec + 10):
            v = mp.log((self.t + self.u * mp.sqrt(self.D)) / 2)
        with mp.workprec(prec):
            return +v


def _check_D(D: int) -> None:
    if D <= 0 or is_square(D):
        raise ValueError(f"D = {D} must be positive and non-square")


@lru_cache(maxsize=None)
def pell_fundamental(D: int) -> PellSolution:
    """Smallest positive (t, u) with t^2 - D u^2 = 4."""
    _check_D(D)
    if D % 4 in (2, 3):
        # solutions have t, u both even; they biject onto x^2 - D y^2 = 1,
        # i.e. onto the Pell-4 solutions of discriminant 4D
        t4, u4 = pell_fundamental(4 * D)[:2]
        return PellSolution(t4, 2 * u4, D)
    b = D % 2
    w = QuadIrr(b, 2, D)                      # root of [1, -b, (b^2 - D)/4]
    cf = minuscf.expand(w)
    m = minuscf.period_matrix(cf.period)
    u0 = minuscf.from_period(cf.period)       # the cycle's purely periodic point
    a = u0.form().a
    t = abs(m.trace)
    u, rem = divmod(abs(m.m21), abs(a))
    assert rem == 0, "period matrix is not an automorph"
    assert t * t - D * u * u == 4, "period matrix does not solve Pell"
    return PellSolution(t, u, D)


def pell_brute(D: int, u_max: int = 2_000_000) -> PellSolution | None:
    """Direct scan over u; the trust anchor for small fundamental solutions."""
    _check_D(D)
    for u in range(1, u_max + 1):
        t2 = D * u * u + 4
        t = math.isqrt(t2)
        if t * t == t2:
            return PellSolution(t, u, D)
    return None


def automorph(f: QForm, s: PellSolution) -> Mobius:
    """The generator [[ (t-bu)/2, -cu ], [ au, (t+bu)/2 ]] of the stabilizer of
    the roots of f."""
    if s.D != f.disc:
        raise ValueError(f"Pell solution for D={s.D} paired with form of disc {f.disc}")
    t, u = s.t, s.u
    if (t - f.b * u) % 2 != 0:
        raise ValueError("inconsistent parity: (t - b u) must be even")
    return Mobius((t - f.b * u) // 2, -f.c * u, f.a * u, (t + f.b * u) // 2)


def geodesic_length(D: int, prec: int = 128):
    """2 log eps_D, the length of the closed geodesic of discriminant D."""
    s = pell_fundamental(D)
    with mp.workprec(prec):
        return 2 * s.eps_log(prec)
