import random
from fractions import Fraction

import pytest

from padic_eis.arith import make_ring
from padic_eis.series import (
    LaurentSeries,
    compose,
    polyval,
    power_substitute,
    rescale_root,
    reversion,
)
from padic_eis.series.kernels import SCHOOLBOOK_LIMIT, mul_integers
from padic_eis.utils.errors import NotUnitError, PrecisionError, SeriesError


def _random_series(spec, N, v=0, unit=True):
    coeffs = [tuple(random.randrange(spec.modulus) for _ in range(spec.d)) for _ in range(N - v)]
    if unit:
        coeffs[0] = (random.randrange(1, spec.p),) + coeffs[0][1:]
    return LaurentSeries.from_coefficients(spec, coeffs, v=v, N=N)


def test_basic_coefficients_and_valuation():
    spec = make_ring(7, 1, 3)
    f = LaurentSeries.from_dict(spec, {-1: 1, 0: 744, 2: -3}, N=5)
    assert f.v == -1
    assert f.valuation() == -1
    assert f[0] == 744
    assert f[2] == -3
    assert f.ints(signed=True) == [1, 744 % 343, 0, -3, 0, 0]
    with pytest.raises(SeriesError):
        f.column(5)


def test_add_uses_smaller_order():
    spec = make_ring(5, 1, 2)
    f = LaurentSeries.one(spec, 10)
    g = LaurentSeries.variable(spec, 4)
    s = f + g
    assert s.N == 4
    assert s.ints() == [1, 1, 0, 0]


def test_multiplication_keeps_relative_length():
    spec = make_ring(7, 1, 4)
    f = LaurentSeries.monomial(spec, 1, 3, 13)
    g = LaurentSeries.from_coefficients(spec, [1, 1, 1], v=-1, N=2)
    h = f * g
    assert h.v == 2
    assert h.length == 3


@pytest.mark.parametrize("d", [1, 2])
def test_inverse_is_two_sided(d):
    spec = make_ring(5, d, 3)
    f = _random_series(spec, 20)
    one = LaurentSeries.one(spec, 20)
    assert (f * f.inverse()).agrees_with(one)
    assert (f.inverse() * f).agrees_with(one)


def test_inverse_of_non_unit_raises():
    spec = make_ring(5, 1, 3)
    f = LaurentSeries.from_coefficients(spec, [5, 1, 1], N=3)
    with pytest.raises(NotUnitError):
        f.inverse()


def test_kronecker_matches_schoolbook():
    modulus = 11 ** 6
    a = [random.randrange(modulus) for _ in range(3 * SCHOOLBOOK_LIMIT)]
    b = [random.randrange(modulus) for _ in range(3 * SCHOOLBOOK_LIMIT)]
    length = len(a)
    expected = [0] * length
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < length:
                expected[i + j] += x * y
    assert mul_integers(a, b, length, modulus) == [c % modulus for c in expected]


def test_extension_multiplication_is_associative():
    spec = make_ring(7, 2, 3)
    f, g, h = (_random_series(spec, 2 * SCHOOLBOOK_LIMIT) for _ in range(3))
    assert ((f * g) * h).agrees_with(f * (g * h))


def test_pow_and_negative_pow():
    spec = make_ring(7, 1, 3)
    f = _random_series(spec, 15)
    assert (f ** 3).agrees_with(f * f * f)
    assert (f ** -2 * f ** 2).agrees_with(LaurentSeries.one(spec, 15))


def test_derivative_and_theta():
    spec = make_ring(7, 1, 3)
    f = LaurentSeries.from_coefficients(spec, [1, 2, 3, 4], N=4)
    assert f.derivative().ints(start=0) == [2, 6, 12]
    assert f.theta().ints() == [0, 2, 6, 12]


def test_with_prec_cannot_increase():
    spec = make_ring(7, 1, 3)
    f = LaurentSeries.one(spec, 4).with_prec(2)
    assert f.prec == 2
    with pytest.raises(PrecisionError):
        f.with_prec(3)


def test_divide_by_p_loses_a_digit():
    spec = make_ring(7, 1, 3)
    f = LaurentSeries.from_coefficients(spec, [7, 14], N=2)
    g = f.divide_by_p()
    assert g.prec == 2
    assert g.ints() == [1, 2]
    with pytest.raises(SeriesError):
        LaurentSeries.one(spec, 2).divide_by_p()


def test_polyval_and_compose():
    spec = make_ring(7, 1, 3)
    q = LaurentSeries.variable(spec, 6)
    g = q + q * q
    assert polyval([1, 2, Fraction(1, 2)], g).agrees_with(1 + g.scale(2) + (g * g).scale(Fraction(1, 2)))
    f = LaurentSeries.from_coefficients(spec, [1, 1, 1, 1, 1, 1], N=6)
    assert compose(f, g).agrees_with(polyval([1, 1, 1, 1, 1, 1], g))


def test_compose_needs_positive_valuation():
    spec = make_ring(7, 1, 3)
    with pytest.raises(SeriesError):
        compose(LaurentSeries.one(spec, 4), LaurentSeries.one(spec, 4))


def test_reversion_is_compositional_inverse():
    spec = make_ring(11, 1, 4)
    q = LaurentSeries.variable(spec, 12)
    for _ in range(100):
        f = _random_series(spec, 12, v=1)
        g = reversion(f)
        assert compose(f, g).agrees_with(q)
        assert compose(g, f).agrees_with(q)


@pytest.mark.parametrize("d", [1, 2])
def test_multiplication_commutes(d):
    spec = make_ring(5, d, 3)
    for _ in range(100):
        f = _random_series(spec, 10, v=random.randrange(-3, 3), unit=False)
        g = _random_series(spec, random.randrange(4, 12), v=random.randrange(-3, 3), unit=False)
        fg, gf = f * g, g * f
        assert (fg.v, fg.N) == (gf.v, gf.N)
        assert fg.comps == gf.comps


def test_power_substitute_and_rescale_root():
    spec = make_ring(5, 1, 2)
    f = LaurentSeries.from_coefficients(spec, [1, 2, 3], v=-1, N=2)
    g = power_substitute(f, 3)
    assert (g.v, g.N) == (-3, 6)
    assert g[-3] == 1 and g[0] == 2 and g[3] == 3 and g[1] == 0
    back = rescale_root(g, 3, collapse=True, label="q")
    assert back.agrees_with(f)
    with pytest.raises(SeriesError):
        rescale_root(LaurentSeries.variable(spec, 4), 2, collapse=True)


def test_extend_scalars_embeds():
    base = make_ring(7, 1, 3)
    ext = make_ring(7, 2, 3)
    f = _random_series(base, 8)
    F = f.extend_scalars(ext)
    assert F.spec == ext
    assert all(F.column(n)[0] == f.column(n)[0] and F.column(n)[1] == 0 for n in range(8))
