"""Singular fibers of catalog surfaces and the Tate uniformization near them."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import sympy as sp
from sympy.ntheory import n_order

from padic_eis.arith.ring import RingElem, RingSpec, make_ring, teichmuller_root
from padic_eis.config import cfg
from padic_eis.qexp.level1 import level1_series, tate_invariants
from padic_eis.series.laurent import LaurentSeries, compose, polyval, power_substitute, reversion
from padic_eis.series.transcendental import nth_root_series
from padic_eis.surfaces.catalog import WeierstrassFamily, t
from padic_eis.utils.errors import ExtensionRequired, FiberTableMismatch, SurfaceError

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class FiberLocation:
    kind: Literal["zero", "unity", "infinity"]
    index: int = 0

    @property
    def label(self) -> str:
        if self.kind == "zero":
            return "D0"
        if self.kind == "infinity":
            return "Dinf"
        return f"D{self.index}"


ZERO = FiberLocation("zero")
INFINITY = FiberLocation("infinity")


@dataclass(frozen=True)
class FiberData:
    location: FiberLocation
    kodaira: str
    r: int
    ord_c4: int
    ord_disc: int

    @property
    def multiplicative(self) -> bool:
        return self.r > 0


def kodaira_type(ord_c4: int, ord_disc: int) -> str:
    """Fiber type of a minimal model from orders of c4 and the discriminant (p >= 5)."""
    if ord_disc == 0:
        return "smooth"
    if ord_c4 == 0:
        return f"I{ord_disc}"
    if ord_c4 == 2 and ord_disc > 6:
        return f"I{ord_disc - 6}*"
    table = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}
    if ord_disc not in table:
        raise SurfaceError(f"no Kodaira type for ord(c4)={ord_c4}, ord(disc)={ord_disc}")
    return table[ord_disc]


def _ord_zero(expr) -> int:
    poly = sp.Poly(expr, t)
    return min(m[0] for m in poly.monoms())


def _ord_unity(expr, k: int) -> int:
    poly = sp.Poly(expr, t)
    cyc = sp.Poly(t ** k - 1, t)
    n = 0
    while True:
        quo, rem = sp.div(poly, cyc)
        if not rem.is_zero:
            return n
        poly, n = quo, n + 1


def _chi(family: WeierstrassFamily) -> int:
    weights = (1, 2, 3, 4, 6)
    chi = 1
    for w, a in zip(weights, family.a):
        if a != 0:
            chi = max(chi, -(-sp.Poly(a, t).degree() // w))
    return chi


def _ord_infinity(expr, weight: int, chi: int) -> int:
    return weight * chi - sp.Poly(expr, t).degree()


def fiber_scan(family: WeierstrassFamily) -> list[FiberData]:
    """Fiber types at t = 0, at each t = zeta_k^i and at infinity, checked against the catalog."""
    inv = family.invariants
    k = family.k
    chi = _chi(family)
    zero = FiberData(ZERO, "", 0, _ord_zero(inv.c4), _ord_zero(inv.disc))
    unity = (_ord_unity(inv.c4, k), _ord_unity(inv.disc, k))
    inf = (_ord_infinity(inv.c4, 4, chi), _ord_infinity(inv.disc, 12, chi))
    found = [
        _typed(ZERO, zero.ord_c4, zero.ord_disc),
        *(_typed(FiberLocation("unity", i), *unity) for i in range(1, k + 1)),
        _typed(INFINITY, *inf),
    ]
    expected = {"zero": family.zero_type(), "unity": "I1", "infinity": family.infinity_type()}
    for fiber in found:
        if fiber.kodaira != expected[fiber.location.kind]:
            raise FiberTableMismatch(
                f"{family.name} k={family.k}: computed {fiber.kodaira} at {fiber.location.label}, "
                f"catalog says {expected[fiber.location.kind]}"
            )
    log.debug("%s k=%d fibers: %s", family.name, k, ", ".join(f"{f.location.label}={f.kodaira}" for f in found))
    return found


def _typed(location: FiberLocation, ord_c4: int, ord_disc: int) -> FiberData:
    kind = kodaira_type(ord_c4, ord_disc)
    r = ord_disc if ord_c4 == 0 else 0
    return FiberData(location, kind, r, ord_c4, ord_disc)


def multiplicative_order(family: WeierstrassFamily, location: FiberLocation) -> int:
    inv = family.invariants
    if location.kind == "zero":
        c4, disc = _ord_zero(inv.c4), _ord_zero(inv.disc)
    elif location.kind == "unity":
        c4, disc = _ord_unity(inv.c4, family.k), _ord_unity(inv.disc, family.k)
    else:
        raise SurfaceError("the fiber at infinity is never multiplicative in the catalog")
    if c4 != 0 or disc == 0:
        raise SurfaceError(f"{location.label} is not a multiplicative fiber of {family.name}")
    return disc


# -- local rings ----------------------------------------------------------------------


def root_degree(family: WeierstrassFamily, location: FiberLocation, p: int) -> int:
    """Residue degree needed to hold the location t = zeta_k^i."""
    if location.kind != "unity":
        return 1
    m = family.k // math.gcd(location.index, family.k)
    return 1 if m == 1 else int(n_order(p, m))


def fiber_value(family: WeierstrassFamily, location: FiberLocation, spec: RingSpec) -> RingElem:
    if location.kind == "zero":
        return spec.element(0)
    if location.kind == "unity":
        if spec.order % family.k == 0:
            return teichmuller_root(spec, family.k) ** location.index
        g = math.gcd(location.index, family.k)
        m = family.k // g
        if m == 1:
            return spec.element(1)
        return teichmuller_root(spec, m) ** (location.index // g)
    raise SurfaceError("t = infinity has no value in the ring")


def fibers_ring(family: WeierstrassFamily, locations, p: int, M: int, degree: int = 1) -> RingSpec:
    d = degree
    for loc in locations:
        d = math.lcm(d, root_degree(family, loc, p))
    if d > cfg.max_extension_degree:
        raise ExtensionRequired(
            f"fibers need residue degree {d} > max_extension_degree={cfg.max_extension_degree}",
            minimal_degree=d,
        )
    return make_ring(p, d, M)


# -- Tate parameter ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LocalExpansion:
    family: str
    location: FiberLocation
    spec: RingSpec
    theta: RingElem
    r: int
    a_inv: RingElem
    # q as a series in t_i = t - theta
    q_of_t: LaurentSeries
    # t_i as a series in q_i, q_i^r = q
    t_of_q: LaurentSeries

    @property
    def t_series(self) -> LaurentSeries:
        """t = theta + t_i(q_i)."""
        return self.t_of_q + self.theta


def tate_parameter(w: LaurentSeries) -> LaurentSeries:
    """The Tate parameter q with 1/j(q) = w, for a series w of positive valuation."""
    spec = w.spec
    N = w.N
    jinv = level1_series(spec, "Delta", N) / level1_series(spec, "E4", N) ** 3
    return compose(reversion(jinv), w)


def tate_period(family: WeierstrassFamily, location: FiberLocation, spec: RingSpec, N: int) -> LocalExpansion:
    """Tate parameter of the fiber at ``location`` and its inverse t_i(q_i) to order q_i^N."""
    r = multiplicative_order(family, location)
    theta = fiber_value(family, location, spec)
    order = N + r - 1
    T = LaurentSeries.variable(spec, order, "t") + theta
    w = polyval(family.coefficients("disc"), T) / polyval(family.coefficients("c4"), T) ** 3
    if w.valuation() != r:
        raise SurfaceError(f"1/j has order {w.valuation()} at {location.label}, expected {r}")
    q_t = tate_parameter(w).relabel("t")
    a_inv = q_t.coefficient(r).inverse()
    if r == 1:
        t_q = reversion(q_t)
    else:
        unit = q_t.shift(-r)
        q_i = nth_root_series(unit, r).shift(1)
        t_q = reversion(q_i)
    log.debug("Tate period at %s of %s over %s: r=%d, a=%s", location.label, family.name, spec.label(), r, a_inv)
    return LocalExpansion(family.name, location, spec, theta, r, a_inv, q_t, t_q.relabel("q"))


def differential_ratio(family: WeierstrassFamily, local: LocalExpansion) -> LaurentSeries:
    """lambda with dX/Y = lambda du/u, from lambda^2 = mu^2 (c6_T c4_f) / (c6_f c4_T)."""
    spec = local.spec
    tq = local.t_series
    N = tq.N
    c4f = polyval(family.coefficients("c4"), tq)
    c6f = polyval(family.coefficients("c6"), tq)
    inv = tate_invariants(spec, -(-N // local.r) + 1)
    c4T = power_substitute(inv.c4, local.r).truncate(N).relabel(tq.label)
    c6T = power_substitute(inv.c6, local.r).truncate(N).relabel(tq.label)
    mu = family.mu
    lam2 = (c6T * c4f / (c6f * c4T)).scale(mu * mu)
    choice = 1 if lam2.coefficient(0) == 1 else None
    lam = nth_root_series(lam2, 2, residue_choice=choice)
    if not (lam ** 4 * c4f).agrees_with(c4T.scale(mu ** 4)):
        raise SurfaceError(f"lambda^4 c4 check failed at {local.location.label}")
    return lam
