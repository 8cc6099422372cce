import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from realquad.minuscf import (DegeneratePeriodError, expand, from_period,
                              hyperbolic_word, is_purely_periodic,
                              nu_digit_bound, nu_estimate, orbit_table,
                              period_matrix, validate_period, word_product)
from realquad.quadfield import QuadIrr, apply_mobius


def test_expand_examples():
    assert expand(QuadIrr(1, 2, 5)) == ((2,), (3,))            # golden
    assert expand(QuadIrr(5, 2, 21)) == ((), (5,))             # (5~)
    assert expand(QuadIrr(3, 2, 5)) == ((), (3,))
    assert expand(QuadIrr(0, 1, 2)) == ((2,), (2, 4))          # sqrt(2)


def test_expand_rejects_rationals_via_type():
    with pytest.raises(Exception):
        expand(QuadIrr(1, 2, 9))   # square D rejected at construction


def test_from_period_examples():
    assert from_period([5]) == QuadIrr(5, 2, 21)
    assert from_period([3]) == QuadIrr(3, 2, 5)
    assert from_period([4]) == QuadIrr(2, 1, 3)                # 2 + sqrt(3)


def test_from_period_rejections():
    with pytest.raises(DegeneratePeriodError):
        from_period([2, 2, 2])
    with pytest.raises(ValueError):
        from_period([3, 1])
    with pytest.raises(ValueError):
        from_period([])


def test_purely_periodic_detection():
    assert is_purely_periodic(QuadIrr(3, 2, 5))
    assert not is_purely_periodic(QuadIrr(1, 2, 5))            # conj < 0
    assert not is_purely_periodic(QuadIrr(0, 1, 2))


def test_round_trip_battery():
    rng = random.Random(1234)
    for _ in range(1000):
        n = rng.randint(1, 6)
        p = [rng.randint(2, 12) for _ in range(n)]
        if all(a == 2 for a in p):
            p[rng.randrange(n)] = rng.randint(3, 12)
        w = from_period(p)
        cf = expand(w)
        assert cf.preperiod == ()
        assert from_period(cf.period) == w
        # the input period is a repetition of some rotation of the detected one
        dp = tuple(p)
        k, m = len(dp), len(cf.period)
        assert k % m == 0
        assert any((cf.period[i:] + cf.period[:i]) * (k // m) == dp
                   for i in range(m))


def test_rotation_gives_gamma_translate():
    p = (2, 5, 3)
    w = from_period(p)
    for i in range(1, 3):
        rot = from_period(p[i:] + p[:i])
        # same discriminant and same expansion cycle
        assert rot.disc == w.disc
        assert set(expand(rot).period) == set(expand(w).period)


def test_hyperbolic_word_examples():
    w = from_period([3])
    word, length = hyperbolic_word(w)
    assert word == ("T^-1", "V^-1")
    assert length == 2
    _, l6 = hyperbolic_word(from_period([6]))
    assert l6 == 5
    with pytest.raises(ValueError):
        hyperbolic_word(QuadIrr(1, 2, 5))


def test_word_product_fixes_base_point():
    from realquad.quadfield import T_INV

    for p in ([3], [2, 3], [4, 2, 5]):
        w = from_period(p)
        word, length = hyperbolic_word(w)
        m = word_product(word)
        wm1 = apply_mobius(T_INV, w)          # the cycle starts at w - 1
        assert apply_mobius(m, wm1) == wm1
        assert m.m11 * m.m22 - m.m12 * m.m21 == 1
        assert length == sum(a - 1 for a in p)


def test_orbit_table_structure():
    t = orbit_table([3])
    vals = sorted(float(pt.w) for pt in t.points)
    assert vals == pytest.approx([0.6180339887, 1.6180339887], abs=1e-9)
    assert all(pt.w_conj == pt.w.conjugate() for pt in t.points)

    t = orbit_table([2, 3])
    assert len(t) == 3
    for pt in t.points:
        assert pt.w.floor() == pt.k - 1


def test_orbit_table_symmetry_single_digit():
    # for period [N]: w_k = -w~_{N-k}
    N = 7
    t = orbit_table([N])
    w = {pt.k: pt.w for pt in t.points}
    wt = {pt.k: pt.w_conj for pt in t.points}
    for k in range(1, N):
        assert float(w[k]) == pytest.approx(-float(wt[N - k]), abs=1e-12)


def test_orbit_size_matches_word_length():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 4)
        p = [rng.randint(2, 9) for _ in range(n)]
        if all(a == 2 for a in p):
            p[0] = 5
        _, length = hyperbolic_word(from_period(p))
        assert length == len(orbit_table(p)) == sum(a - 1 for a in p)


def test_nu_estimate_golden_tail_window():
    g = QuadIrr(1, 2, 5)
    est = nu_estimate(g, 10 ** 4, q_min=math.isqrt(10 ** 4))
    assert abs(est - 1 / math.sqrt(5)) < 1e-3


def test_nu_estimate_running_min():
    w = from_period([101])
    assert nu_estimate(w, 100) <= 1 / 100
    g = QuadIrr(1, 2, 5)
    vals = [nu_estimate(g, q) for q in (10, 100, 1000)]
    assert vals[0] >= vals[1] >= vals[2]


def test_nu_digit_bound():
    assert nu_digit_bound(from_period([101])) == pytest.approx(1 / 101)
    assert nu_digit_bound(QuadIrr(1, 2, 5)) == pytest.approx(1 / 3)


periods = st.lists(st.integers(min_value=2, max_value=9), min_size=1,
                   max_size=4).filter(lambda p: any(a > 2 for a in p))


@given(periods)
@settings(max_examples=60, deadline=None)
def test_from_period_is_purely_periodic(p):
    w = from_period(p)
    assert is_purely_periodic(w)
    cf = expand(w)
    assert cf.preperiod == ()
    assert from_period(cf.period) == w
