import pytest

from padic_eis.arith import make_ring
from padic_eis.qexp import (
    divisor_series,
    level1_series,
    tate_coeffs,
    tate_invariants,
    weierstrass_invariants,
)
from padic_eis.utils.errors import UserInputError


@pytest.fixture(scope="module")
def spec():
    # 7^10 exceeds twice every coefficient checked below
    return make_ring(7, 1, 10)


def test_divisor_series_values(spec):
    s3 = divisor_series(spec, 3, 5)
    s5 = divisor_series(spec, 5, 5)
    assert s3.ints() == [0, 1, 9, 28, 73]
    assert s5[2] == 33
    with pytest.raises(UserInputError):
        divisor_series(spec, 0, 5)


def test_j_expansion_leading_terms(spec):
    j = level1_series(spec, "j", 3)
    assert j.v == -1
    assert j.ints(signed=True) == [1, 744, 196884, 21493760]


def test_delta_and_eisenstein(spec):
    delta = level1_series(spec, "Delta", 6)
    assert delta.ints(start=0, signed=True) == [0, 1, -24, 252, -1472, 4830]
    e4 = level1_series(spec, "E4", 3)
    e6 = level1_series(spec, "E6", 3)
    assert e4.ints(signed=True) == [1, 240, 2160]
    assert e6.ints(signed=True) == [1, -504, -16632]
    with pytest.raises(UserInputError):
        level1_series(spec, "E8", 3)


def test_tate_coefficients(spec):
    a4, a6 = tate_coeffs(spec, 4)
    assert a4.ints(signed=True) == [0, -5, -45, -140]
    assert a6.ints(signed=True)[:3] == [0, -1, -23]


def test_j_two_ways_to_order_fifty():
    spec = make_ring(11, 1, 4)
    inv = tate_invariants(spec, 50)
    assert inv.j.agrees_with(level1_series(spec, "j", 50))
    assert inv.c4.agrees_with(level1_series(spec, "E4", 50))
    assert inv.disc.agrees_with(level1_series(spec, "Delta", 50))


def test_weierstrass_identity_on_tate_invariants():
    spec = make_ring(7, 1, 4)
    inv = tate_invariants(spec, 30)
    lhs = inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6
    assert lhs.agrees_with(inv.disc.scale(1728))


def test_weierstrass_invariants_on_integers():
    inv = weierstrass_invariants(0, 0, 0, -1, 0, with_j=False)
    assert inv.disc == 64
    assert inv.c4 == 48
    assert inv.j is None


def test_tate_invariants_keep_scalar_b2():
    spec = make_ring(7, 1, 4)
    inv = tate_invariants(spec, 20)
    assert inv.b2 == 1
    assert inv.c4.N == 20
    assert inv.c4.agrees_with(level1_series(spec, "E4", 20))
