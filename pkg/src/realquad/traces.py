"""Class groups of indefinite forms, traces of modular-function values, and the
discriminant scans.

Reduction theory: a form [a, b, c] of discriminant D is reduced when
0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b; the rho-step walks the
finite reduction cycles.  A class here is a cycle together with the cycle of
its negative [-a, -b, -c] (unoriented geodesics), which is the convention the
N^2 - 4 scan counts; representatives of distinct classes are in particular
inequivalent under the determinant-1 action.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, NamedTuple, Sequence

from mpmath import mp

from . import cyclevalue, minuscf, modfun, pell
from .quadfield import QForm, QuadIrr, is_square, roots_of_form


def _check_disc(D: int) -> None:
    if D <= 0 or D % 4 not in (0, 1) or is_square(D):
        raise ValueError(f"{D} is not a positive non-square discriminant")


def is_reduced(f: QForm) -> bool:
    D = f.disc
    b, a2 = f.b, 2 * abs(f.a)
    if b <= 0 or b * b >= D:
        return False
    return D < (a2 + b) ** 2 and (a2 <= b or (a2 - b) ** 2 < D)


def rho(f: QForm) -> QForm:
    """One reduction step [a,b,c] -> [c, b', (b'^2-D)/(4c)] with b' ~ -b mod 2|c|
    pushed into (sqrt(D) - 2|c|, sqrt(D))."""
    D = f.disc
    s = math.isqrt(D)
    mod = 2 * abs(f.c)
    bp = (-f.b) % mod
    bp += ((s - bp) // mod) * mod
    if bp <= s - mod:
        bp += mod
    cp, rem = divmod(bp * bp - D, 4 * f.c)
    assert rem == 0
    return QForm(f.c, bp, cp)


def reduce_form(f: QForm, max_steps: int = 100000) -> QForm:
    for _ in range(max_steps):
        if is_reduced(f):
            return f
        f = rho(f)
    raise RuntimeError("reduction did not terminate")


def reduced_forms(D: int) -> list[QForm]:
    """All reduced forms of discriminant D."""
    _check_disc(D)
    s = math.isqrt(D)
    out = []
    for b in range(2 - (D % 2), s + 1, 2):
        m4 = D - b * b            # = -4ac > 0
        if m4 % 4:
            continue
        m = m4 // 4
        a = 1
        while a * a <= m:
            if m % a == 0:
                for aa in {a, m // a}:
                    for sign in (1, -1):
                        try:
                            g = QForm(sign * aa, b, -sign * (m // aa))
                        except ValueError:
                            continue
                        if is_reduced(g):
                            out.append(g)
            a += 1
    return sorted(set(out))


def cycle_of(f: QForm) -> tuple[QForm, ...]:
    """The rho-cycle through a reduced form."""
    if not is_reduced(f):
        raise ValueError(f"{f} is not reduced")
    cyc = [f]
    g = rho(f)
    while g != f:
        cyc.append(g)
        g = rho(g)
    return tuple(cyc)


class ClassList(NamedTuple):
    D: int
    representatives: tuple[QForm, ...]
    h: int
    cycles: tuple[tuple[QForm, ...], ...]


def class_list(D: int) -> ClassList:
    """One representative per class (rho-cycles merged with their negatives)."""
    forms = reduced_forms(D)
    seen: set[QForm] = set()
    classes: list[tuple[QForm, ...]] = []
    for f in forms:
        if f in seen:
            continue
        cyc = cycle_of(f)
        neg = reduce_form(QForm(-f.a, -f.b, -f.c))
        members = set(cyc)
        if neg not in members:
            members |= set(cycle_of(neg))
        classes.append(tuple(sorted(members)))
        seen |= members
    reps = tuple(min(g for g in cls if g.a > 0) for cls in classes)
    return ClassList(D, reps, len(classes), tuple(classes))


def class_number_bruteforce(D: int) -> int:
    """Independent oracle: box-enumerate the reduced forms over all |a|, b <=
    sqrt(D), walk their cycles with a self-contained step, and count cycle
    orbits merged with their negatives.  Shares no code with class_list."""
    _check_disc(D)
    s = math.isqrt(D)

    def reduced(a: int, b: int, c: int) -> bool:
        t = 2 * abs(a)
        return (0 < b and b * b < D and (t + b) ** 2 > D
                and (t <= b or (t - b) ** 2 < D))

    def step(abc: tuple[int, int, int]) -> tuple[int, int, int]:
        a, b, c = abc
        mod = 2 * abs(c)
        bp = (-b) % mod
        bp += ((s - bp) // mod) * mod     # largest candidate <= floor(sqrt(D))
        return (c, bp, (bp * bp - D) // (4 * c))

    red: set[tuple[int, int, int]] = set()
    for a in range(-s, s + 1):
        if a == 0:
            continue
        for b in range(1, s + 1):
            if (b * b - D) % (4 * a) == 0:
                c = (b * b - D) // (4 * a)
                if math.gcd(math.gcd(a, b), c) == 1 and reduced(a, b, c):
                    red.add((a, b, c))

    comp: dict[tuple[int, int, int], int] = {}
    n_cycles = 0
    for f0 in sorted(red):
        if f0 in comp:
            continue
        idx, g = n_cycles, f0
        n_cycles += 1
        while g not in comp:
            comp[g] = idx
            g = step(g)

    parent = list(range(n_cycles))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for f0 in red:
        neg = (-f0[0], -f0[1], -f0[2])
        for _ in range(100000):
            if neg in comp:
                break
            neg = step(neg)
        i, j = find(comp[f0]), find(comp[neg])
        if i != j:
            parent[i] = j
    return len({find(i) for i in range(n_cycles)})


# -- traces -------------------------------------------------------------------

class TraceResult(NamedTuple):
    D: int
    h: int
    tr_f: complex
    tr_1: float
    ratio: complex


def trace(f: modfun.FourierSeries, D: int, tol: float = 1e-9,
          prec: int = 128) -> TraceResult:
    """Tr_D f = sum of f(w_Q) over class representatives; Tr_D 1 = h * 2 log eps."""
    cl = class_list(D)
    L = pell.geodesic_length(D, prec)
    with mp.workprec(prec):
        tr = mp.mpc(0)
        for rep in cl.representatives:
            tr += cyclevalue.value_direct(f, rep, tol, prec).raw
        tr1 = cl.h * L
        return TraceResult(D, cl.h, +tr, +tr1, +(tr / tr1))


def is_fundamental_discriminant(D: int) -> bool:
    if D <= 1 or is_square(D):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def fundamental_discriminants(limit: int) -> list[int]:
    return [D for D in range(5, limit + 1) if is_fundamental_discriminant(D)]


class RatioRow(NamedTuple):
    D: int
    h: int
    ratio_re: float
    ratio_im: float


def _ratio_row(args) -> RatioRow:
    f, D, tol, prec = args
    t = trace(f, D, tol, prec)
    return RatioRow(D, t.h, float(t.ratio.real), float(t.ratio.imag))


def ratio_scan(f: modfun.FourierSeries, d_list: Sequence[int],
               tol: float = 1e-6, prec: int = 128,
               workers: int = 1) -> list[RatioRow]:
    """Per-discriminant trace ratios Tr_D f / Tr_D 1 (they drift toward 720 for j)."""
    jobs = [(f, D, tol, prec) for D in d_list]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_ratio_row, jobs, chunksize=8))
    else:
        rows = [_ratio_row(j) for j in jobs]
    return sorted(rows)


def decile_trend(rows: Sequence[RatioRow], target: float = 720.0) -> tuple[float, float]:
    """Mean |ratio - target| over the bottom and top decile of D (top should win)."""
    rows = sorted(rows)
    k = max(1, len(rows) // 10)
    bottom = rows[:k]
    top = rows[-k:]
    mean = lambda rs: sum(abs(r.ratio_re - target) for r in rs) / len(rs)
    return mean(bottom), mean(top)


class ClassNumberRow(NamedTuple):
    N: int
    D: int
    h: int
    jnor: float
    gap720: float


def class_number_one_scan(n_max: int, tol: float = 1e-9, prec: int = 128,
                          f: modfun.FourierSeries | None = None) -> list[ClassNumberRow]:
    """For D = N^2 - 4: class number next to the normalized value at (N~).

    The values crowd toward 744 while trace averages sit near 720, which is
    the tension behind class numbers > 1 for most large N.
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    if f is None:
        f = modfun.j_series(64)
    rows = []
    for N in range(3, n_max + 1):
        D = N * N - 4
        if is_square(D):
            continue
        h = class_list(D).h
        cv = cyclevalue.value_kernel(f, (N,), tol, prec)
        re = float(cv.normalized.real)
        rows.append(ClassNumberRow(N, D, h, re, abs(re - 720.0)))
    return rows
