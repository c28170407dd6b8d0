import random
from fractions import Fraction

import pytest

from padic_eis.arith import make_ring
from padic_eis.series import (
    LaurentSeries,
    ell_phi,
    exp0,
    log1,
    nth_root_series,
    phi_substitute,
    qdlog,
)
from padic_eis.utils.errors import NotUnitError, SeriesError


def _one_plus_p(spec, N):
    p = spec.p
    coeffs = [1 + p * random.randrange(spec.modulus)] + [p * random.randrange(spec.modulus) for _ in range(N - 1)]
    return LaurentSeries.from_coefficients(spec, coeffs, N=N)


def _unit_series(spec, N):
    lead = (random.randrange(1, spec.p),) + (0,) * (spec.d - 1)
    coeffs = [lead] + [tuple(random.randrange(spec.modulus) for _ in range(spec.d)) for _ in range(N - 1)]
    return LaurentSeries.from_coefficients(spec, coeffs, N=N)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_nth_root_series_powers_back(n):
    spec = make_ring(13, 1, 4)
    g = _unit_series(spec, 12)
    f = g ** n
    root = nth_root_series(f, n, residue_choice=g.coefficient(0))
    assert root.agrees_with(g)


def test_nth_root_series_with_valuation():
    spec = make_ring(7, 1, 3)
    f = LaurentSeries.from_coefficients(spec, [4, 1, 1], v=2, N=5)
    g = nth_root_series(f, 2)
    assert g.v == 1
    assert (g * g).agrees_with(f)
    with pytest.raises(SeriesError):
        nth_root_series(LaurentSeries.variable(spec, 4), 2)


def test_qdlog_of_power():
    spec = make_ring(7, 1, 3)
    q = LaurentSeries.variable(spec, 8)
    f = q * (1 - q)
    expected = 1 - q * (1 - q).inverse()
    assert qdlog(f).agrees_with(expected)


def test_log1_of_one_minus_q():
    spec = make_ring(7, 1, 4)
    f = LaurentSeries.from_coefficients(spec, [1, -1], N=7)
    lg = log1(f)
    assert lg.prec == 4
    assert lg[0] == 0
    for n in range(1, 7):
        assert lg[n] == Fraction(-1, n)


def test_log1_refuses_non_integral_coefficient():
    spec = make_ring(7, 1, 4)
    f = LaurentSeries.from_coefficients(spec, [1, -1], N=8)
    with pytest.raises(SeriesError):
        log1(f)


def test_log1_needs_constant_one_mod_p():
    spec = make_ring(7, 1, 4)
    with pytest.raises(SeriesError):
        log1(LaurentSeries.from_coefficients(spec, [2, 1], N=4))


@pytest.mark.parametrize("p", [5, 7])
def test_exp_inverts_log_on_p_small_input(p):
    spec = make_ring(p, 1, 5)
    for _ in range(100):
        f = _one_plus_p(spec, 10)
        assert exp0(log1(f)).agrees_with(f)


def test_log_is_additive():
    spec = make_ring(7, 1, 5)
    f, g = _one_plus_p(spec, 10), _one_plus_p(spec, 10)
    assert log1(f * g).agrees_with(log1(f) + log1(g))


def test_exp0_of_q_adic_input():
    spec = make_ring(7, 1, 4)
    q = LaurentSeries.variable(spec, 6)
    e = exp0(q)
    assert e[0] == 1 and e[1] == 1 and e[2] == Fraction(1, 2) and e[3] == Fraction(1, 6)


def test_phi_substitute_spreads_exponents():
    spec = make_ring(5, 1, 3)
    f = LaurentSeries.from_coefficients(spec, [1, 2, 3], N=3)
    g = phi_substitute(f)
    assert g.N == 5
    assert g.ints() == [1, 0, 0, 0, 0]
    spec2 = make_ring(5, 2, 3)
    h = LaurentSeries.from_coefficients(spec2, [spec2.generator, 1], N=2)
    ph = phi_substitute(h)
    assert ph.column(0) == spec2.frobenius_coords(spec2.generator)


def test_ell_phi_of_one_minus_q():
    p = 7
    spec = make_ring(p, 1, 4)
    N = 20
    f = LaurentSeries.from_coefficients(spec, [1, -1], N=N)
    ell = ell_phi(f)
    assert ell.prec == 3
    expected = LaurentSeries.from_coefficients(
        spec, [0] + [Fraction(1, j) if j % p else 0 for j in range(1, N)], N=N, prec=3
    )
    assert ell.agrees_with(expected)


def test_ell_phi_is_additive():
    spec = make_ring(11, 2, 4)
    f, g = _unit_series(spec, 15), _unit_series(spec, 15)
    assert ell_phi(f * g).agrees_with(ell_phi(f) + ell_phi(g))


def test_ell_phi_needs_unit():
    spec = make_ring(7, 1, 3)
    with pytest.raises(NotUnitError):
        ell_phi(LaurentSeries.from_coefficients(spec, [7, 1], N=3))
