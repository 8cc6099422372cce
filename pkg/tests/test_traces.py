import random

import pytest
from mpmath import mp

from realquad import modfun
from realquad.cyclevalue import value_direct
from realquad.pell import pell_fundamental
from realquad.quadfield import QForm, apply_mobius, roots_of_form, T, V
from realquad.traces import (ClassList, class_list, class_number_bruteforce,
                             class_number_one_scan, cycle_of, decile_trend,
                             fundamental_discriminants,
                             is_fundamental_discriminant, is_reduced,
                             reduce_form, reduced_forms, rho, trace)

J = modfun.j_series(64)
ONE = modfun.constant_series(1)


def valid_discs(limit):
    import math
    for D in range(5, limit + 1):
        if D % 4 in (0, 1) and math.isqrt(D) ** 2 != D:
            yield D


def test_pinned_class_numbers():
    assert class_list(5).h == 1
    assert class_list(12).h == 1
    assert class_list(40).h == 2


def test_reduction_cycles_close_and_cover():
    for D in (5, 40, 316, 892):
        forms = reduced_forms(D)
        seen = set()
        for f in forms:
            if f in seen:
                continue
            cyc = cycle_of(f)
            assert all(is_reduced(g) for g in cyc)
            assert rho(cyc[-1]) == cyc[0]          # the cycle closes
            seen |= set(cyc)
        assert seen == set(forms)                  # cycles partition the forms


def test_every_form_reduces_into_a_stored_class():
    rng = random.Random(8)
    for D in (40, 145, 316):
        cl = class_list(D)
        members = {g for cls in cl.cycles for g in cls}
        for f in reduced_forms(D):
            # push f around by random translations/flips, then reduce back
            g = f
            for _ in range(rng.randint(1, 6)):
                g = g.translate(rng.randint(-3, 3))
            assert reduce_form(g) in members


def test_class_numbers_match_oracle_small():
    for D in valid_discs(500):
        assert class_list(D).h == class_number_bruteforce(D), D


def test_representatives_positive_leading_and_inequivalent():
    for D in (40, 60, 316, 1596):
        cl = class_list(D)
        assert len(cl.representatives) == cl.h
        assert all(f.a > 0 for f in cl.representatives)
        cycles = [set(cycle_of(f)) for f in cl.representatives]
        for i in range(len(cycles)):
            for k in range(i + 1, len(cycles)):
                assert not (cycles[i] & cycles[k])


def test_trace_of_constant_is_one():
    for D in (5, 40, 60):
        t = trace(ONE, D, 1e-10, 128)
        assert abs(complex(t.ratio) - 1) < 1e-10
        assert t.h == class_list(D).h


def test_trace_j_golden_class():
    t = trace(J, 5, 1e-10, 128)
    assert t.h == 1
    assert float(t.ratio.real) == pytest.approx(706.3248135408126, abs=1e-8)


def test_trace_is_class_invariant():
    # replacing a representative by a Gamma-translate moves the trace < 1e-9
    D = 40
    cl = class_list(D)
    base = sum(complex(value_direct(J, f, 1e-11, 128).raw)
               for f in cl.representatives)
    moved = 0
    for f in cl.representatives:
        g = reduce_form(f.translate(2))
        moved += complex(value_direct(J, g, 1e-11, 128).raw)
    assert abs(base - moved) < 1e-9


def test_trace_ratio_bounded_by_744():
    for D in (5, 13, 40, 316):
        t = trace(J, D, 1e-8, 128)
        assert 0 < float(t.ratio.real) <= 744 + 1e-6


def test_fundamental_discriminants():
    fds = fundamental_discriminants(60)
    assert fds == [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53,
                   56, 57, 60]
    assert not is_fundamental_discriminant(45)      # 45 = 9 * 5
    assert not is_fundamental_discriminant(20)      # 4 * 5 with 5 = 1 mod 4


def test_class_number_one_scan_rows():
    rows = class_number_one_scan(8, 1e-9, 128)
    byN = {r.N: r for r in rows}
    assert byN[3].D == 5 and byN[3].h == 1
    assert byN[4].D == 12 and byN[4].h == 1
    assert byN[8].h == 2
    assert byN[3].jnor == pytest.approx(706.3248135408126, abs=1e-8)
    assert byN[8].gap720 < byN[3].gap720


def test_decile_trend_helper():
    from realquad.traces import RatioRow
    rows = [RatioRow(D, 1, 700 + D / 100, 0.0) for D in range(10, 110, 10)]
    bottom, top = decile_trend(rows)
    assert top < bottom
