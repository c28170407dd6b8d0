"""Residue symbol of two factored units.

The symbol is bimultiplicative and antisymmetric ({F, G} {G, F} = 1); on the
generators it is

    {a, b} = 1                  {a, u} = a               {a, g} = 1
    {u, u} = -1                 {u, g} = g(0)^-1         {u, 1 - b/u} = 1
    {g, h} = 1                  {g, 1 - b/u} = g(0)^-1 g(b)
    {a, 1 - b/u} = 1            {1 - b/u, 1 - c/u} = 1

for scalars a, b, regular units g, h and b, c in (p, q0).
"""
from __future__ import annotations

import logging

from padic_eis.arith.ring import RingSpec
from padic_eis.qexp.theta_values import Q0, check_xi_parameters
from padic_eis.residue.factored import FactoredUnit, ThetaQuotient, value_at, value_at_zero
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import SeriesError

log = logging.getLogger(__name__)


def residue_of_pair(F: FactoredUnit, G: FactoredUnit) -> LaurentSeries:
    if F.spec != G.spec:
        raise SeriesError("factored units live over different rings")
    m, n = F.u_power, G.u_power
    terms: list[tuple[LaurentSeries, int]] = [(F.scalar, n), (G.scalar, -m)]
    for g, e in F.regular_units:
        g0 = value_at_zero(g)
        terms.append((g0, e * n))
        for b, k in G.antipolar:
            terms.append((value_at(g, b) / g0, e * k))
    for h, e in G.regular_units:
        h0 = value_at_zero(h)
        terms.append((h0, -e * m))
        for b, k in F.antipolar:
            terms.append((value_at(h, b) / h0, -e * k))
    length = min(F.scalar.length, G.scalar.length)
    result = LaurentSeries.one(F.spec, length, Q0)
    for value, k in terms:
        if k:
            result = result * value ** k
    if (m * n) % 2:
        result = -result
    log.debug("residue of pair expanded into %d generator symbols", len(terms))
    return result


def xi_rule_value(spec: RingSpec, a: int, b: int, r: int, N: int) -> LaurentSeries:
    """{f(u)/f(q0^-b), g(u)/g(q0^-a)} for f = (-u)^a theta(q0^a u)^r / theta(u)^r and
    g the same with a replaced by b."""
    check_xi_parameters(spec, a, b, r)

    def normalized(x: int, y: int) -> FactoredUnit:
        f = ThetaQuotient(r, ((x, r), (0, -r)), sign=(-1) ** x, u_power=x)
        return f.factor(spec, N).scaled(f.section_value(spec, -y, N).inverse())

    return residue_of_pair(normalized(a, b), normalized(b, a))
