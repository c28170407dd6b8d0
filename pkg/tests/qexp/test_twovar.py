import pytest

from padic_eis.arith import make_ring
from padic_eis.qexp import TwoVarSeries, tate_coeffs, tate_xy, theta_series
from padic_eis.series import LaurentSeries
from padic_eis.utils.errors import SeriesError


@pytest.fixture(scope="module")
def spec():
    return make_ring(7, 1, 4)


def test_constant_rows_satisfy_the_curve(spec):
    x0 = TwoVarSeries.monomial(spec, 1, 0, 1, 1, e=2)
    y0 = TwoVarSeries.monomial(spec, 1, 0, 2, 1, e=3)
    assert (y0 * y0 + x0 * y0 - x0 * x0 * x0).is_zero()


@pytest.mark.parametrize("N", [12, 30])
def test_weierstrass_identity(spec, N):
    x, y = tate_xy(spec, N)
    a4, a6 = tate_coeffs(spec, N)
    rel = y * y + x * y - x * x * x - x * a4 - TwoVarSeries.from_series(a6)
    assert rel.N == N
    assert rel.is_zero()


def test_theta_modulo_q_squared(spec):
    theta = theta_series(spec, 2)
    assert theta.row(0) == (0, {0: 1, 1: spec.modulus - 1})
    m = spec.modulus
    assert theta.row(1) == (0, {-1: m - 1, 0: 1, 1: m - 1, 2: 1})


def test_theta_involution(spec):
    theta = theta_series(spec, 30)
    assert theta.invert_u() == -theta.shift_u(-1)


def test_theta_quasi_periodicity(spec):
    theta = theta_series(spec, 30)
    shifted = theta.scale_u(1)
    assert 20 <= shifted.N < 30
    assert shifted.agrees_with(-theta.shift_u(-1))


def test_theta_quotient_is_q_periodic(spec):
    theta = theta_series(spec, 30)

    def at(c, s):
        return theta.scale_u(s, c, order=None if s else theta.N)

    lhs = at(2, 1) * at(3, 1) * at(6, 0) * at(1, 0)
    rhs = at(2, 0) * at(3, 0) * at(6, 1) * at(1, 1)
    assert lhs.N >= 20
    assert lhs.agrees_with(rhs)


def test_normal_form_cancels_denominators(spec):
    # (1 - u)^2 / (1 - u)^3 normalizes to 1 / (1 - u)
    f = TwoVarSeries.from_rows(spec, [(3, {0: 1, 1: -2, 2: 1})])
    assert f.row(0) == (1, {0: 1})


def test_evaluate_and_at_zero(spec):
    q = LaurentSeries.variable(spec, 8)
    g = TwoVarSeries.from_rows(spec, [(1, {0: 1}), (0, {1: 3})])
    assert g.at_zero().ints() == [1, 0]
    b = q.scale(2)
    value = g.evaluate(b)
    expected = ((1 - b).inverse() + q * b.scale(3)).truncate(2)
    assert value.agrees_with(expected)
    with pytest.raises(SeriesError):
        g.evaluate(LaurentSeries.one(spec, 4))


def test_specialize_matches_geometric_expansion(spec):
    # u / (1 - u) at u = q0^2
    g = TwoVarSeries.from_rows(spec, [(1, {1: 1})])
    val = g.specialize(2, 3, 3)
    assert val.ints(start=0) == [0, 0, 1]
    with pytest.raises(SeriesError):
        g.specialize(0, 3, 3)


def test_payload_shape(spec):
    payload = theta_series(spec, 3).to_payload()
    assert payload["N"] == 3 and payload["p"] == 7
    assert payload["rows"][0] == [0, [[0, 1], [1, spec.modulus - 1]]]
