"""Units of the Tate curve's function field in factored form.

A ``FactoredUnit`` is ``a * u^m * prod g_i(u)^(e_i) * prod (1 - b_j / u)^(f_j)``
with ``a`` a unit Laurent series in q0, ``g_i`` regular units (value at u = 0 a
unit power series) and ``b_j`` in the ideal (p, q0). Theta products are brought
into this form by ``ThetaQuotient.factor``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Union

from padic_eis.arith.ring import RingSpec
from padic_eis.qexp.theta_values import Q0, q0_power, theta_value
from padic_eis.qexp.twovar import TwoVarSeries
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import SeriesError

log = logging.getLogger(__name__)


def _one_minus(x: LaurentSeries, N: int) -> LaurentSeries:
    return LaurentSeries.one(x.spec, N, Q0) - x


def in_maximal_ideal(b: LaurentSeries) -> bool:
    """b in (p, q0): a power series whose constant term is divisible by p."""
    w = b.valuation()
    if w is None or w >= 1:
        return True
    return w == 0 and not b.coefficient(0).is_unit()


@dataclass(frozen=True, eq=False)
class RegularUnit:
    """lead * prod (1 - c u)^e for power series c."""

    lead: LaurentSeries
    roots: tuple[tuple[LaurentSeries, int], ...] = ()

    def __post_init__(self):
        if self.lead.valuation() != 0 or not self.lead.is_unit_led():
            raise SeriesError("a regular unit needs a unit constant term")
        for c, _ in self.roots:
            w = c.valuation()
            if w is not None and w < 0:
                raise SeriesError("regular roots must be power series in q0")

    def at_zero(self) -> LaurentSeries:
        return self.lead

    def evaluate(self, b: LaurentSeries) -> LaurentSeries:
        if not in_maximal_ideal(b):
            raise SeriesError("evaluation point must lie in (p, q0)")
        value = self.lead
        N = self.lead.N
        for c, e in self.roots:
            value = value * _one_minus(c * b, N) ** e
        return value


Regular = Union[RegularUnit, TwoVarSeries]


def value_at_zero(g: Regular) -> LaurentSeries:
    if isinstance(g, TwoVarSeries):
        return g.at_zero().relabel(Q0)
    return g.at_zero()


def value_at(g: Regular, b: LaurentSeries) -> LaurentSeries:
    if isinstance(g, TwoVarSeries):
        return g.evaluate(b.relabel(g.label)).relabel(Q0)
    return g.evaluate(b)


@dataclass(frozen=True, eq=False)
class FactoredUnit:
    scalar: LaurentSeries
    u_power: int = 0
    regular_units: tuple[tuple[Regular, int], ...] = ()
    antipolar: tuple[tuple[LaurentSeries, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.scalar.is_unit_led():
            raise SeriesError("the scalar part must be a unit-led Laurent series")
        for g, _ in self.regular_units:
            g0 = value_at_zero(g)
            if g0.valuation() != 0 or not g0.is_unit_led():
                raise SeriesError("regular units need a unit value at u = 0")
        for b, _ in self.antipolar:
            if not in_maximal_ideal(b):
                raise SeriesError("antipolar factors 1 - b/u need b in (p, q0)")

    @property
    def spec(self) -> RingSpec:
        return self.scalar.spec

    # -- constructors ---------------------------------------------------------------

    @classmethod
    def constant(cls, a: LaurentSeries) -> "FactoredUnit":
        return cls(a.relabel(Q0))

    @classmethod
    def u(cls, spec: RingSpec, N: int) -> "FactoredUnit":
        return cls(LaurentSeries.one(spec, N, Q0), 1)

    @classmethod
    def regular(cls, g: Regular, N: int) -> "FactoredUnit":
        return cls(LaurentSeries.one(value_at_zero(g).spec, N, Q0), 0, ((g, 1),))

    @classmethod
    def one_minus_over_u(cls, b: LaurentSeries, N: int) -> "FactoredUnit":
        """1 - b / u."""
        return cls(LaurentSeries.one(b.spec, N, Q0), 0, (), ((b.relabel(Q0), 1),))

    # -- group law ---------------------------------------------------------------

    def __mul__(self, other: "FactoredUnit") -> "FactoredUnit":
        if not isinstance(other, FactoredUnit):
            return NotImplemented
        return FactoredUnit(
            self.scalar * other.scalar,
            self.u_power + other.u_power,
            self.regular_units + other.regular_units,
            self.antipolar + other.antipolar,
        )

    def inverse(self) -> "FactoredUnit":
        return self ** -1

    def __truediv__(self, other: "FactoredUnit") -> "FactoredUnit":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FactoredUnit":
        return FactoredUnit(
            self.scalar ** n,
            self.u_power * n,
            tuple((g, e * n) for g, e in self.regular_units if e * n),
            tuple((b, e * n) for b, e in self.antipolar if e * n),
        )

    def scaled(self, c: LaurentSeries) -> "FactoredUnit":
        """Multiply the scalar part by a unit of the base."""
        return replace(self, scalar=self.scalar * c.relabel(Q0))

    def canonical(self) -> "FactoredUnit":
        """Merge repeated roots and antipolar points; fold regular leads into the scalar."""
        scalar = self.scalar
        roots: dict[tuple, list] = {}
        others: list[tuple[Regular, int]] = []
        for g, e in self.regular_units:
            if isinstance(g, RegularUnit):
                scalar = scalar * g.lead ** e
                for c, k in g.roots:
                    slot = roots.setdefault(c.key(), [c, 0])
                    slot[1] += k * e
            else:
                others.append((g, e))
        points: dict[tuple, list] = {}
        for b, e in self.antipolar:
            slot = points.setdefault(b.key(), [b, 0])
            slot[1] += e
        merged = tuple((c, k) for c, k in sorted(roots.values(), key=lambda s: s[0].key()) if k)
        regular: list[tuple[Regular, int]] = []
        if merged:
            one = LaurentSeries.one(self.spec, scalar.length, Q0)
            regular.append((RegularUnit(one, merged), 1))
        regular.extend(others)
        antipolar = tuple((b, e) for b, e in sorted(points.values(), key=lambda s: s[0].key()) if e)
        return FactoredUnit(scalar, self.u_power, tuple(regular), antipolar)


@dataclass(frozen=True)
class ThetaQuotient:
    """sign * q0^q0_exp * u^u_power * prod theta(q0^m u)^e, with q = q0^r."""

    r: int
    thetas: tuple[tuple[int, int], ...]
    sign: int = 1
    u_power: int = 0
    q0_exp: int = 0

    def factor(self, spec: RingSpec, N: int) -> FactoredUnit:
        """Expand every theta factor; arguments outside 0 <= m < r are normalized first.

        Products are cut where the factors become 1 modulo q0^N.
        """
        r = self.r
        scalar = q0_power(spec, self.q0_exp, N)
        if self.sign < 0:
            scalar = -scalar
        u_power = self.u_power
        regular: list[tuple[Regular, int]] = []
        antipolar: list[tuple[LaurentSeries, int]] = []
        one = LaurentSeries.one(spec, N, Q0)
        for M, e in self.thetas:
            if not e:
                continue
            s, m = divmod(M, r)
            if s:
                # theta(q^s w) = (-1)^s q^(-s(s-1)/2) w^(-s) theta(w), w = q0^m u
                norm = q0_power(spec, -r * s * (s - 1) // 2 - m * s, N)
                if s % 2:
                    norm = -norm
                scalar = scalar * norm ** e
                u_power -= s * e
            roots = tuple((q0_power(spec, r * n + m, N), 1) for n in range(0, -(-(N - m) // r)))
            regular.append((RegularUnit(one, roots), e))
            n = 1
            while r * n - m < N:
                antipolar.append((q0_power(spec, r * n - m, N), e))
                n += 1
        return FactoredUnit(scalar, u_power, tuple(regular), tuple(antipolar))

    def section_value(self, spec: RingSpec, k: int, N: int) -> LaurentSeries:
        """The value at u = q0^k."""
        value = q0_power(spec, self.q0_exp + k * self.u_power, N)
        if self.sign < 0:
            value = -value
        for M, e in self.thetas:
            if e:
                value = value * theta_value(spec, M + k, self.r, N) ** e
        return value


def factor_theta_quotient(spec: RingSpec, exponents, r: int, N: int) -> FactoredUnit:
    """prod theta(q0^m u)^e for ``exponents`` = [(m, e), ...]."""
    return ThetaQuotient(r, tuple((int(m), int(e)) for m, e in exponents)).factor(spec, N)
