import random

import pytest

from padic_eis.arith import make_ring
from padic_eis.qexp import TwoVarSeries, q0_power, xi_closed_value
from padic_eis.residue import (
    FactoredUnit,
    RegularUnit,
    ThetaQuotient,
    factor_theta_quotient,
    residue_of_pair,
    xi_rule_value,
)
from padic_eis.series import LaurentSeries
from padic_eis.utils.errors import SeriesError, UserInputError

N = 15


@pytest.fixture(scope="module")
def spec():
    return make_ring(7, 1, 4)


def _unit(spec, v=0):
    coeffs = [random.randrange(1, spec.p)] + [random.randrange(spec.modulus) for _ in range(N - 1)]
    return LaurentSeries.from_coefficients(spec, coeffs, v=v, N=v + N, label="q0")


def _small(spec):
    """A random element of (p, q0)."""
    coeffs = [spec.p * random.randrange(spec.modulus)] + [random.randrange(spec.modulus) for _ in range(N - 1)]
    return LaurentSeries.from_coefficients(spec, coeffs, N=N, label="q0")


def _regular(spec):
    roots = tuple((_small(spec), random.choice([-2, -1, 1, 2])) for _ in range(2))
    return RegularUnit(_unit(spec), roots)


def _twovar(spec):
    rows = [(0, {k: random.randrange(spec.modulus) for k in range(3)}) for _ in range(N)]
    rows[0][1][0] = random.randrange(1, spec.p)
    return TwoVarSeries.from_rows(spec, rows, label="q0")


def _random_unit(spec):
    return FactoredUnit(
        _unit(spec, v=random.randrange(-3, 4)),
        random.randrange(-3, 4),
        ((_regular(spec), random.choice([-1, 1, 2])), (_twovar(spec), random.choice([-1, 1]))),
        tuple((_small(spec), random.choice([-1, 1, 3])) for _ in range(2)),
    )


def test_scalar_pairs_are_trivial(spec):
    a = FactoredUnit.constant(_unit(spec, 2))
    b = FactoredUnit.constant(_unit(spec, -1))
    assert residue_of_pair(a, b).agrees_with(LaurentSeries.one(spec, N, "q0"))


def test_scalar_against_u(spec):
    a = _unit(spec, 2)
    value = residue_of_pair(FactoredUnit.constant(a), FactoredUnit.u(spec, N))
    assert value.agrees_with(a)


def test_u_against_u_is_minus_one(spec):
    u = FactoredUnit.u(spec, N)
    assert residue_of_pair(u, u).agrees_with(-LaurentSeries.one(spec, N, "q0"))


def test_u_against_regular(spec):
    g = _regular(spec)
    value = residue_of_pair(FactoredUnit.u(spec, N), FactoredUnit.regular(g, N))
    assert value.agrees_with(g.at_zero().inverse())


def test_regular_against_antipolar(spec):
    g = _twovar(spec)
    b = _small(spec)
    value = residue_of_pair(FactoredUnit.regular(g, N), FactoredUnit.one_minus_over_u(b, N))
    g0 = g.at_zero().relabel("q0")
    assert value.agrees_with(g.evaluate(b) / g0)


def test_constant_against_antipolar_and_antipolar_pairs(spec):
    one = LaurentSeries.one(spec, N, "q0")
    a = FactoredUnit.constant(_unit(spec))
    b = FactoredUnit.one_minus_over_u(_small(spec), N)
    c = FactoredUnit.one_minus_over_u(_small(spec), N)
    assert residue_of_pair(a, b).agrees_with(one)
    assert residue_of_pair(b, c).agrees_with(one)
    assert residue_of_pair(FactoredUnit.u(spec, N), b).agrees_with(one)


def test_bilinearity(spec):
    for _ in range(5):
        F1, F2, G = (_random_unit(spec) for _ in range(3))
        lhs = residue_of_pair(F1 * F2, G)
        rhs = residue_of_pair(F1, G) * residue_of_pair(F2, G)
        assert lhs.agrees_with(rhs)


def test_antisymmetry(spec):
    for _ in range(5):
        F, G = _random_unit(spec), _random_unit(spec)
        product = residue_of_pair(F, G) * residue_of_pair(G, F)
        assert product.agrees_with(LaurentSeries.one(spec, N, "q0"))


def test_canonical_form_keeps_the_symbol(spec):
    F, G = _random_unit(spec), _random_unit(spec)
    doubled = F * F
    assert residue_of_pair(doubled.canonical(), G).agrees_with(residue_of_pair(doubled, G))


def test_malformed_antipolar_point_rejected(spec):
    with pytest.raises(SeriesError):
        FactoredUnit.one_minus_over_u(_unit(spec), N)


def test_factor_of_plain_theta(spec):
    F = factor_theta_quotient(spec, [(0, 1)], 3, 10)
    assert F.u_power == 0
    assert F.scalar.agrees_with(LaurentSeries.one(spec, 10, "q0"))
    (g, e), = F.regular_units
    assert e == 1
    assert [c.valuation() for c, _ in g.roots] == [0, 3, 6, 9]
    assert [b.valuation() for b, _ in F.antipolar] == [3, 6, 9]


def test_factor_normalizes_shifted_theta(spec):
    F = factor_theta_quotient(spec, [(3, 1)], 3, 10)
    assert F.u_power == -1
    assert F.scalar.agrees_with(-LaurentSeries.one(spec, 10, "q0"))


def test_section_value_matches_factored_theta(spec):
    f = ThetaQuotient(5, ((2, 5), (0, -5)), sign=1, u_power=2)
    value = f.section_value(spec, -3, 20)
    assert value.is_unit_led()
    with pytest.raises(SeriesError):
        f.section_value(spec, 5, 20)


@pytest.mark.parametrize("a,b,r", [(1, 2, 3), (1, 2, 5), (2, 3, 5)])
def test_rule_value_equals_closed_value(spec, a, b, r):
    rule = xi_rule_value(spec, a, b, r, 40)
    closed = xi_closed_value(spec, a, b, r, 40)
    assert rule.valuation() == closed.valuation() == a * (b - a) * (b - r)
    assert rule.agrees_with(closed)


@pytest.mark.slow
@pytest.mark.parametrize("a,b,r", [(1, 3, 4), (2, 5, 6)])
def test_rule_value_equals_closed_value_mod_eleven(a, b, r):
    spec = make_ring(11, 1, 4)
    assert xi_rule_value(spec, a, b, r, 30).agrees_with(xi_closed_value(spec, a, b, r, 30))


def test_rule_value_parameters(spec):
    with pytest.raises(UserInputError):
        xi_rule_value(spec, 1, 2, 7, 10)


def test_q0_power_relative_length(spec):
    x = q0_power(spec, -4, 12)
    assert (x.v, x.length) == (-4, 12)
