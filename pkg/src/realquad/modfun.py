"""Modular functions as truncated q-expansions with certified tail bounds.

j is built exactly as E4^3 / Delta in integer power-series arithmetic.  A
series carries a tail model |c(n)| <= A exp(B sqrt(n)) so every evaluation
with Im z >= sqrt(3)/2 reports a sound truncation error.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple, Sequence

from mpmath import mp


class TailBoundError(ValueError):
    """The certified tail exceeds the requested tolerance; raise N_trunc."""


class FourierSeries(NamedTuple):
    """q-expansion sum_{n >= -m} c(n) q^n truncated at N_trunc.

    coeffs[i] is c(i - pole_order); tail model |c(n)| <= tail_a * e^(tail_b sqrt(n)).
    """

    pole_order: int
    coeffs: tuple
    tail_a: float
    tail_b: float

    @property
    def n_trunc(self) -> int:
        return len(self.coeffs) - 1 - self.pole_order

    def c(self, n: int):
        i = n + self.pole_order
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def constant_term(self):
        return self.c(0)


def constant_term(f: FourierSeries):
    return f.constant_term()


def constant_series(value=1) -> FourierSeries:
    return FourierSeries(0, (value,), 0.0, 0.0)


def from_coeffs(pole_order: int, coeffs: Sequence, tail_a: float, tail_b: float) -> FourierSeries:
    if pole_order < 0:
        raise ValueError("pole_order must be >= 0")
    return FourierSeries(pole_order, tuple(coeffs), float(tail_a), float(tail_b))


# -- exact integer series for j ---------------------------------------------

def _series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        top = n - i
        for j, bj in enumerate(b[: top + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


def _euler_product(n: int) -> list[int]:
    """prod_{k>=1} (1 - q^k) mod q^(n+1), by the pentagonal number theorem."""
    e = [0] * (n + 1)
    e[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        s = -1 if k % 2 else 1
        if g1 <= n:
            e[g1] += s
        if g2 <= n:
            e[g2] += s
        k += 1
    return e


def _sigma3(n: int) -> int:
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=8)
def eisenstein_e4(n_trunc: int) -> tuple:
    return tuple([1] + [240 * _sigma3(n) for n in range(1, n_trunc + 1)])


@lru_cache(maxsize=8)
def delta_over_q(n_trunc: int) -> tuple:
    """Delta / q = prod (1 - q^n)^24, exact integers."""
    n = n_trunc
    e = _euler_product(n)
    e2 = _series_mul(e, e, n)
    e4 = _series_mul(e2, e2, n)
    e8 = _series_mul(e4, e4, n)
    e16 = _series_mul(e8, e8, n)
    return tuple(_series_mul(e16, e8, n))


@lru_cache(maxsize=8)
def j_series(n_trunc: int = 64) -> FourierSeries:
    """j = E4^3 / Delta with exact integer coefficients c(-1..n_trunc)."""
    if n_trunc < 1:
        raise ValueError("n_trunc must be >= 1")
    n = n_trunc + 1
    e4 = list(eisenstein_e4(n))
    e43 = _series_mul(_series_mul(e4, e4, n), e4, n)
    den = list(delta_over_q(n))
    # exact power-series division: (j q) * (Delta/q) = E4^3
    jq = [0] * (n + 1)
    for i in range(n + 1):
        acc = e43[i]
        for k in range(i):
            acc -= jq[k] * den[i - k]
        jq[i] = acc          # den[0] == 1
    # j has c(n) = jq[n+1]; the classical coefficient bound is e^(4 pi sqrt n)
    return FourierSeries(1, tuple(jq[: n_trunc + 2]), 1.0, 4 * math.pi)


# -- evaluation ---------------------------------------------------------------

_ARC_IM = math.sqrt(3) / 2


def tail_bound(f: FourierSeries, q_abs):
    """Sound bound on |sum_{n > N_trunc} c(n) q^n| from the declared tail model."""
    if f.tail_a == 0:
        return mp.mpf(0)
    n1 = f.n_trunc + 1
    r = q_abs * mp.exp(mp.mpf(f.tail_b) / (2 * mp.sqrt(n1)))
    if r >= 1:
        return mp.inf
    return mp.mpf(f.tail_a) * mp.exp(mp.mpf(f.tail_b) * mp.sqrt(n1)) * q_abs ** n1 / (1 - r)


def eval_series(f: FourierSeries, z, prec: int = 128, tol: float | None = None):
    """(value, err) of f at z with Im z >= sqrt(3)/2; err is the certified tail.

    Raises TailBoundError when a requested tolerance cannot be certified at the
    current truncation.
    """
    with mp.workprec(prec + 10):
        z = mp.mpc(z)
        # small absolute grace so arc endpoints built at lower precision pass;
        # the tail bound below uses the actual |q|, so it stays sound
        if z.imag < mp.sqrt(3) / 2 - mp.mpf("1e-9"):
            raise ValueError(f"Im z = {z.imag} below sqrt(3)/2; tail bound invalid")
        q = mp.expjpi(2 * z)        # e^(2 pi i z)
        err = tail_bound(f, abs(q))
        if tol is not None and not err <= tol:
            raise TailBoundError(
                f"certified tail {err} exceeds tol {tol}; increase N_trunc")
        acc = mp.mpc(0)
        for i in range(len(f.coeffs) - 1, f.pole_order - 1, -1):
            acc = acc * q + f.coeffs[i]
        if f.pole_order > 0:
            qinv = 1 / q
            pole = mp.mpc(0)
            for i in range(f.pole_order):
                pole = pole * qinv + f.coeffs[i]
            acc += pole * qinv
    with mp.workprec(prec):
        return +acc, +err


def reduce_to_fundamental(z, prec: int = 128):
    """Translate z into the standard fundamental domain (so Im >= sqrt(3)/2)."""
    with mp.workprec(prec):
        z = mp.mpc(z)
        eps = mp.mpf(2) ** (-prec + 8)
        for _ in range(64 * prec):
            z = z - mp.nint(z.real)
            if abs(z) < 1 - eps:
                z = -1 / z
            else:
                return z
        raise RuntimeError("modular reduction did not terminate")


def reduce_with_matrix(z, prec: int = 128):
    """(gamma, gamma z) with gamma z in the fundamental domain, gamma integral."""
    from .quadfield import Mobius

    with mp.workprec(prec):
        z = mp.mpc(z)
        eps = mp.mpf(2) ** (-prec + 8)
        m11, m12, m21, m22 = 1, 0, 0, 1
        for _ in range(64 * prec):
            n = int(mp.nint(z.real))
            z = z - n
            m11, m12 = m11 - n * m21, m12 - n * m22
            if abs(z) < 1 - eps:
                z = -1 / z
                m11, m12, m21, m22 = m21, m22, -m11, -m12
            else:
                return Mobius(m11, m12, m21, m22), z
        raise RuntimeError("modular reduction did not terminate")


def eval_reduced(f: FourierSeries, z, prec: int = 128):
    """Evaluate a modular f anywhere in H by reducing z first."""
    return eval_series(f, reduce_to_fundamental(z, prec), prec)
