import random

import pytest
from mpmath import mp

from realquad import minuscf, modfun
from realquad.cyclevalue import (Kernel, arc_sin_integral,
                                 geodesic_endpoint_gap, kernel_symmetry_check,
                                 limit_scan, value_at, value_direct,
                                 value_kernel)
from realquad.quadfield import QForm, QuadIrr, Mobius, T, V, apply_mobius

J = modfun.j_series(64)
ONE = modfun.constant_series(1)


def random_period(rng, lo=2, hi=10, max_len=5):
    n = rng.randint(1, max_len)
    p = [rng.randint(lo, hi) for _ in range(n)]
    if all(a == 2 for a in p):
        p[rng.randrange(n)] = rng.randint(3, hi)
    return tuple(p)


def test_normalization_is_exact_for_constants():
    for p in ((3,), (2, 5), (4, 3, 7)):
        cv = value_kernel(ONE, p, 1e-13, 128)
        assert abs(complex(cv.normalized) - 1) < 1e-12
        assert abs(float(cv.raw.real) - float(cv.two_log_eps)) < 1e-12


def test_direct_constant_gives_length():
    cv = value_direct(ONE, QForm(1, -3, 1), 1e-13, 128)
    assert abs(complex(cv.normalized) - 1) < 1e-12


def test_golden_value():
    cv = value_kernel(J, (3,), 1e-12, 128)
    assert float(cv.normalized.real) == pytest.approx(706.3248135408126, abs=1e-9)
    assert abs(float(cv.normalized.imag)) < 1e-12


def test_dual_evaluators_agree():
    rng = random.Random(42)
    for _ in range(6):
        p = random_period(rng)
        k = value_kernel(J, p, 1e-11, 128)
        d = value_direct(J, minuscf.from_period(p).form(), 1e-11, 128)
        assert float(abs(k.raw - d.raw)) < 1e-9, p


def test_direct_on_a_negative_form_conjugates():
    plus = value_direct(J, QForm(1, -3, 1), 1e-12, 128)
    minus = value_direct(J, QForm(-1, 3, -1), 1e-12, 128)
    assert abs(complex(plus.raw) - complex(minus.raw).conjugate()) < 1e-9


def test_rotation_invariance():
    p = (2, 6, 3)
    base = value_kernel(J, p, 1e-12, 128)
    for i in (1, 2):
        rot = value_kernel(J, p[i:] + p[:i], 1e-12, 128)
        assert float(abs(rot.raw - base.raw)) < 1e-10


def test_value_at_matches_purely_periodic_representative():
    golden = value_at(J, QuadIrr(1, 2, 5), 1e-12, 128)
    period3 = value_kernel(J, (3,), 1e-12, 128)
    assert float(abs(golden.raw - period3.raw)) < 1e-12
    big = value_at(J, QuadIrr(101, 2, 101 ** 2 - 4), 1e-12, 128)
    p101 = value_kernel(J, (101,), 1e-12, 128)
    assert float(abs(big.raw - p101.raw)) < 1e-10


def test_gamma_invariance_under_random_mobius():
    rng = random.Random(5)
    x = QuadIrr(1, 2, 5)
    base = value_at(J, x, 1e-11, 128)
    for _ in range(10):
        m = Mobius(1, 0, 0, 1)
        for _ in range(rng.randint(1, 5)):
            m = m @ rng.choice([T, T.inverse(), V, V.inverse()])
        moved = value_at(J, apply_mobius(m, x), 1e-11, 128)
        assert float(abs(moved.raw - base.raw)) < 1e-9


def test_kernel_symmetry():
    assert kernel_symmetry_check(3, 1e-2, 128) < 1e-12
    assert kernel_symmetry_check(50, 1e-2, 128) < 1e-12


def test_kernel_pole_distance():
    k = Kernel(minuscf.orbit_table((2, 9, 4)))
    assert k.min_arc_distance() >= 3 ** 0.5 / 2 - 1e-12


def test_kernel_term_budget():
    import realquad.cyclevalue as cvmod
    old = cvmod.TERM_BUDGET
    cvmod.TERM_BUDGET = 10
    try:
        with pytest.raises(ValueError):
            Kernel(minuscf.orbit_table((14,)))
    finally:
        cvmod.TERM_BUDGET = old


def test_arc_integral_equals_constant_term():
    v, err = arc_sin_integral(J, 1e-12, 128)
    assert abs(float(v.real) - 744) < 1e-10
    v, _ = arc_sin_integral(ONE, 1e-12, 128)
    assert abs(float(v.real) - 1) < 1e-12


def test_limit_scan_rows():
    scan = limit_scan(J, [5, 20], 1e-10, 128)
    assert scan.c0 == 744
    assert scan.arc_gap < 1e-10
    assert scan.rows[0].gap > scan.rows[1].gap
    assert all(abs(r.im) < 1e-9 for r in scan.rows)
    with pytest.raises(ValueError):
        limit_scan(J, [2], 1e-10, 128)


def test_direct_endpoint_closes_loop():
    for f in (QForm(1, -3, 1), QForm(-1, 1, 1), QForm(2, -8, 3), QForm(3, -14, 5)):
        assert float(geodesic_endpoint_gap(f, 128)) < 1e-25


def test_reported_error_dominates_true_error():
    # compare a loose-tolerance run against a tight reference
    ref = value_kernel(J, (2, 7), 1e-16, 192)
    loose = value_kernel(J, (2, 7), 1e-6, 128)
    assert float(abs(loose.raw - ref.raw)) <= float(loose.quad_err) + 1e-12
