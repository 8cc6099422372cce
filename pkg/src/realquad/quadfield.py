"""Exact arithmetic for real quadratic irrationals and indefinite binary forms.

Numbers are held as (P + sqrt(D)) / Q with unbounded integers, canonicalized so
that two constructions of the same real compare equal field-wise.  All values
are immutable and hashable; every operation is pure.
"""

from __future__ import annotations

import math
import re
from collections import namedtuple

from mpmath import mp


class NotQuadraticError(ValueError):
    """Raised when an input does not describe a real quadratic irrational."""


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _canonical_triple(P: int, Q: int, D: int) -> tuple[int, int, int]:
    """Reduce (P, Q, D) to the unique canonical representative of (P+sqrt(D))/Q."""
    if Q == 0:
        raise NotQuadraticError("Q must be nonzero")
    if D <= 0 or is_square(D):
        raise NotQuadraticError(f"D = {D} must be positive and non-square")
    # enforce Q | D - P^2 by inflating with |Q|
    if (D - P * P) % Q != 0:
        P, Q, D = P * abs(Q), Q * abs(Q), D * Q * Q
    # primitive minimal polynomial a x^2 + b x + c, keeping sign(a) = sign(Q)
    # so that x = (-b + sqrt(disc)) / (2a) selects the right root
    a, b, c = Q, -2 * P, (P * P - D) // Q
    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    P2, Q2, D2 = -b, 2 * a, b * b - 4 * a * c
    # strip the largest square factor consistent with the normalization:
    # g valid iff g|P2, g|Q2, g^2|D2 and g*Q2 | (D2 - P2^2)
    base = math.gcd(P2, Q2)
    for gg in reversed(_divisors(base)):
        if gg == 1:
            break
        if D2 % (gg * gg) == 0 and (D2 - P2 * P2) % (gg * Q2) == 0:
            P2, Q2, D2 = P2 // gg, Q2 // gg, D2 // (gg * gg)
            break
    return P2, Q2, D2


class QuadIrr(namedtuple("QuadIrr", "P Q D")):
    """The real quadratic irrational (P + sqrt(D)) / Q, canonicalized."""

    __slots__ = ()

    def __new__(cls, P: int, Q: int, D: int):
        return super().__new__(cls, *_canonical_triple(int(P), int(Q), int(D)))

    # -- exact structure ---------------------------------------------------

    def conjugate(self) -> "QuadIrr":
        """Galois conjugate (P - sqrt(D)) / Q; an involution."""
        return QuadIrr(-self.P, -self.Q, self.D)

    def form(self) -> "QForm":
        """The primitive form [a, b, c] with self = (-b + sqrt(disc)) / (2a)."""
        a, b, c = self.Q, -2 * self.P, (self.P * self.P - self.D) // self.Q
        g = math.gcd(math.gcd(a, b), c)
        return QForm(a // g, b // g, c // g)

    @property
    def disc(self) -> int:
        """Discriminant of the minimal polynomial (4*D / square factor)."""
        return self.form().disc

    def floor(self) -> int:
        s = math.isqrt(self.D)
        if self.Q > 0:
            return (self.P + s) // self.Q
        return (-self.P - s - 1) // (-self.Q)

    def ceil(self) -> int:
        return self.floor() + 1  # always irrational

    def __lt__(self, other) -> bool:
        if isinstance(other, int):
            return self.floor() < other
        return NotImplemented

    def __gt__(self, other) -> bool:
        if isinstance(other, int):
            return self.floor() >= other
        return NotImplemented

    # -- numeric views -----------------------------------------------------

    def to_mpf(self, prec: int = 53):
        """Value as an mpf, correctly rounded to about 1 ulp at `prec` bits."""
        if prec < 53:
            raise ValueError("precision below 53 bits")
        with mp.workprec(prec + 10):
            v = (self.P + mp.sqrt(self.D)) / self.Q
        with mp.workprec(prec):
            return +v

    def __float__(self) -> float:
        return float(self.to_mpf(64))

    def __str__(self) -> str:
        return f"({self.P}+sqrt({self.D}))/{self.Q}"


class QForm(namedtuple("QForm", "a b c")):
    """Primitive integral binary quadratic form [a, b, c] of positive non-square
    discriminant."""

    __slots__ = ()

    def __new__(cls, a: int, b: int, c: int):
        a, b, c = int(a), int(b), int(c)
        if math.gcd(math.gcd(a, b), c) != 1:
            raise ValueError(f"form [{a},{b},{c}] is not primitive")
        d = b * b - 4 * a * c
        if d <= 0 or is_square(d):
            raise ValueError(f"discriminant {d} must be positive and non-square")
        return super().__new__(cls, a, b, c)

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def translate(self, k: int) -> "QForm":
        """Action of T^k: [a, b + 2ak, a k^2 + b k + c]."""
        return QForm(self.a, self.b + 2 * self.a * k,
                     self.a * k * k + self.b * k + self.c)

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


def roots_of_form(f: QForm) -> tuple[QuadIrr, QuadIrr]:
    """First and second root (-b +- sqrt(D)) / (2a); the pair order fixes the
    orientation convention (counterclockwise when a > 0)."""
    w = QuadIrr(-f.b, 2 * f.a, f.disc)
    return w, w.conjugate()


def galois_conjugate(x: QuadIrr) -> QuadIrr:
    return x.conjugate()


class Mobius(namedtuple("Mobius", "m11 m12 m21 m22")):
    """Integer matrix [[m11, m12], [m21, m22]] with determinant +1."""

    __slots__ = ()

    def __new__(cls, m11: int, m12: int, m21: int, m22: int):
        if m11 * m22 - m12 * m21 != 1:
            raise ValueError("determinant must be +1")
        return super().__new__(cls, m11, m12, m21, m22)

    def __matmul__(self, o: "Mobius") -> "Mobius":
        return Mobius(self.m11 * o.m11 + self.m12 * o.m21,
                      self.m11 * o.m12 + self.m12 * o.m22,
                      self.m21 * o.m11 + self.m22 * o.m21,
                      self.m21 * o.m12 + self.m22 * o.m22)

    def inverse(self) -> "Mobius":
        return Mobius(self.m22, -self.m12, -self.m21, self.m11)

    @property
    def trace(self) -> int:
        return self.m11 + self.m22

    def act_complex(self, z):
        """Fractional-linear action on a complex number."""
        return (self.m11 * z + self.m12) / (self.m21 * z + self.m22)


IDENTITY = Mobius(1, 0, 0, 1)
T = Mobius(1, 1, 0, 1)
S = Mobius(0, 1, -1, 0)
V = Mobius(1, 0, 1, 1)
T_INV = T.inverse()
V_INV = V.inverse()      # equals T^-1 S T^-1


def apply_mobius(m: Mobius, x: QuadIrr) -> QuadIrr:
    """Exact (m11 x + m12) / (m21 x + m22)."""
    P, Q, D = x
    A = m.m11 * P + m.m12 * Q
    C = m.m21 * P + m.m22 * Q
    E = m.m21
    # (A + m11 sqrt D)/(C + E sqrt D) rationalized; sqrt coefficient is Q*det = Q
    num_r = A * C - m.m11 * E * D
    den = C * C - E * E * D
    if Q > 0:
        return QuadIrr(num_r, den, Q * Q * D)
    return QuadIrr(-num_r, -den, Q * Q * D)


# -- text form -------------------------------------------------------------

_QUAD_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(-?\d+)$")
_SQRT_RE = re.compile(r"^sqrt\(\s*(\d+)\s*\)$")


def parse_quad(text: str) -> QuadIrr:
    """Parse "(P+sqrt(D))/Q" (also "(P-sqrt(D))/Q" and bare "sqrt(D)")."""
    t = text.strip().replace(" ", "")
    m = _SQRT_RE.match(t)
    if m:
        return QuadIrr(0, 1, int(m.group(1)))
    m = _QUAD_RE.match(t)
    if not m:
        raise NotQuadraticError(f"cannot parse quadratic irrational: {text!r}")
    P, sign, D, Q = int(m.group(1)), m.group(2), int(m.group(3)), int(m.group(4))
    if sign == "-":
        P, Q = -P, -Q
    return QuadIrr(P, Q, D)


def format_quad(x: QuadIrr) -> str:
    return str(x)
