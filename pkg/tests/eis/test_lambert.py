import random

import pytest
from sympy import divisor_sigma, divisors, mobius

from padic_eis.arith import make_ring
from padic_eis.eis import decomposition_from_table, default_basis, lambert_decompose, resum
from padic_eis.series import LaurentSeries
from padic_eis.utils.errors import RingError, SeriesError


def test_geometric_series_is_a_single_term():
    spec = make_ring(7, 1, 4)
    f = LaurentSeries.from_coefficients(spec, [0] + [1] * 19, N=20)
    dec = lambert_decompose(f)
    assert dec.a(1, 1) == 1
    assert all(dec.a(1, j) == 0 for j in range(2, 20))
    assert not dec.principal


def test_divisor_sum_gives_identity_coefficients():
    spec = make_ring(11, 1, 5)
    N = 40
    f = LaurentSeries.from_coefficients(spec, [0] + [int(divisor_sigma(n)) for n in range(1, N)], N=N)
    dec = lambert_decompose(f)
    assert [dec.a(1, j) for j in range(1, N)] == list(range(1, N))


def test_mobius_inversion_over_z_p():
    spec = make_ring(5, 1, 4)
    N = 30
    mu = {j: [(int(mobius(j // d)), d) for d in divisors(j)] for j in range(1, N)}
    for _ in range(100):
        c = [random.randrange(spec.modulus) for _ in range(N)]
        dec = lambert_decompose(LaurentSeries.from_coefficients(spec, c, N=N))
        for j in range(1, N):
            assert dec.a(1, j) == sum(s * c[d] for s, d in mu[j]) % spec.modulus
        assert dec.b(0) == c[0]


def test_principal_part_is_kept():
    spec = make_ring(7, 1, 3)
    f = LaurentSeries.from_dict(spec, {-2: 3, 0: 1, 1: 1}, N=10)
    dec = lambert_decompose(f)
    assert set(dec.principal) == {-2, 0}
    assert dec.b(-2) == 3


def test_round_trip_over_unramified_extension():
    spec = make_ring(7, 2, 3)
    N = 25
    for _ in range(100):
        coeffs = [tuple(random.randrange(spec.modulus) for _ in range(2)) for _ in range(N)]
        f = LaurentSeries.from_coefficients(spec, coeffs, N=N)
        dec = lambert_decompose(f)
        assert resum(dec).agrees_with(f)
        assert len(dec.table) == 2


def test_table_round_trip():
    random.seed(9)
    spec = make_ring(5, 2, 3)
    N = 20
    table = [[random.randrange(spec.modulus) for _ in range(N - 1)] for _ in range(2)]
    dec = decomposition_from_table(spec, table, N)
    again = lambert_decompose(resum(dec))
    assert [list(row) for row in again.table] == table


def test_other_basis_still_round_trips():
    random.seed(1)
    spec = make_ring(7, 2, 4)
    basis = default_basis(spec, exponent=5)
    coeffs = [tuple(random.randrange(spec.modulus) for _ in range(2)) for _ in range(15)]
    f = LaurentSeries.from_coefficients(spec, coeffs, N=15)
    assert resum(lambert_decompose(f, basis)).agrees_with(f)


def test_basis_and_range_errors():
    spec = make_ring(7, 2, 4)
    with pytest.raises(RingError):
        default_basis(spec, exponent=2)
    dec = lambert_decompose(LaurentSeries.one(spec, 5))
    with pytest.raises(SeriesError):
        dec.a(1, 5)
