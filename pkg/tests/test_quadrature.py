import pytest
from mpmath import mp

from realquad.quadrature import QuadratureError, gauss_legendre_nodes, integrate


def test_nodes_integrate_polynomials_exactly():
    xs, ws = gauss_legendre_nodes(8, 160)
    with mp.workprec(160):
        assert abs(sum(ws) - 2) < mp.mpf(2) ** (-150)
        # degree-15 monomial is exact for the 8-point rule
        val = sum(w * x ** 14 for x, w in zip(xs, ws))
        assert abs(val - mp.mpf(2) / 15) < mp.mpf(2) ** (-145)


def test_sine_integrals():
    with mp.workprec(160):
        v, err = integrate(lambda t: mp.sin(t), 0, mp.pi, 1e-20, 160)
        assert abs(v - 2) < 1e-20
        assert err < 1e-20
        v, err = integrate(lambda t: mp.sin(t), mp.pi / 3, 2 * mp.pi / 3,
                           1e-20, 160)
        assert abs(v - 1) < 1e-20


def test_error_estimate_is_honest():
    # mildly oscillatory integrand with a known value
    with mp.workprec(160):
        v, err = integrate(lambda t: mp.cos(10 * t), 0, 1, 1e-18, 160)
        assert abs(v - mp.sin(10) / 10) <= max(err, mp.mpf(1e-18))


def test_complex_integrand():
    v, _ = integrate(lambda t: mp.expjpi(t / mp.pi) ** 2, 0, mp.pi, 1e-18, 160)
    # int e^{2it} dt over [0, pi] = 0
    assert abs(v) < 1e-17


def test_breakpoints_respected():
    calls = []

    def f(t):
        calls.append(t)
        return mp.mpf(1)

    v, _ = integrate(f, 0, 2, 1e-12, 64, breakpoints=[1])
    assert abs(v - 2) < 1e-12
    assert any(t < 1 for t in calls) and any(t > 1 for t in calls)


def test_budget_exhaustion_raises_with_best_estimate():
    # |x|^(1/2) has a derivative singularity; a tiny panel budget must fail
    with pytest.raises(QuadratureError) as exc:
        integrate(lambda t: mp.sqrt(abs(t)), -1, 1, 1e-40, 128, max_panels=6)
    best = exc.value.value
    assert abs(best - mp.mpf(4) / 3) < 1e-2
    assert exc.value.err > 0
