"""Elliptic surfaces over P^1_t known to the toolkit.

ex1:  3Y^2 + X^3 + (3X + 4t^k)^2 = 0
ex2:  3Y^2 = 2X^3 - 3X^2 + t^k
k3:   ex1 with k = 4

Each model is rescaled once to a long Weierstrass form in (x, y), with
dX/Y = mu * dx/(2y):

ex1:  X = -x/3, Y = y/9   gives y^2 = x^3 - 27x^2 + 216 s x - 432 s^2,  mu = -6
ex2:  X = x/6,  Y = y/18  gives y^2 = x^3 - 9x^2 + 108 s,               mu = 6

with s = t^k. Only c4, c6, the discriminant, j and mu are used downstream.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import sympy as sp

from padic_eis.qexp.weierstrass import WeierstrassInvariants, weierstrass_invariants
from padic_eis.utils.errors import CatalogError, UserInputError

log = logging.getLogger(__name__)

t = sp.Symbol("t")
X = sp.Symbol("X")

FAMILY_NAMES = ("ex1", "ex2", "k3")

# fiber type at t = infinity by k mod period
INFINITY_TYPES: dict[str, tuple[int, dict[int, str]]] = {
    "ex1": (3, {1: "IV*", 2: "IV", 0: "smooth"}),
    "ex2": (6, {1: "II*", 2: "IV*", 3: "I0*", 4: "IV", 5: "II", 0: "smooth"}),
}


@dataclass(frozen=True)
class WeierstrassFamily:
    name: str
    k: int
    a: tuple[sp.Expr, sp.Expr, sp.Expr, sp.Expr, sp.Expr]
    mu: int
    invariants: WeierstrassInvariants
    # Y^2 = cartier_poly(X, t) in the original coordinates
    cartier_poly: sp.Expr
    holomorphic_step: int
    zero_order: int
    split_field: str

    @property
    def shape(self) -> str:
        return "ex1" if self.name == "k3" else self.name

    @property
    def genus(self) -> int:
        """Number of holomorphic forms t^m dt dX/Y (k = step * ell + a, 1 <= a <= step)."""
        return (self.k - 1) // self.holomorphic_step

    @property
    def j(self) -> sp.Expr:
        return sp.factor(self.invariants.j)

    def coefficients(self, which: str) -> list[int]:
        """Integer coefficients of c4, c6 or disc as a polynomial in t, lowest degree first."""
        expr = getattr(self.invariants, which)
        poly = sp.Poly(expr, t)
        return [int(c) for c in reversed(poly.all_coeffs())]

    def infinity_type(self) -> str:
        period, table = INFINITY_TYPES[self.shape]
        return table[self.k % period]

    def zero_type(self) -> str:
        return f"I{self.zero_order}"


def _invariants(a) -> WeierstrassInvariants:
    inv = weierstrass_invariants(*a, with_j=False)
    inv = inv.map(sp.expand)
    return WeierstrassInvariants(
        inv.b2, inv.b4, inv.b6, inv.b8, inv.c4, inv.c6, inv.disc, sp.cancel(inv.c4 ** 3 / inv.disc)
    )


@lru_cache(maxsize=64)
def family_catalog(name: str, k: int | None = None) -> WeierstrassFamily:
    if name not in FAMILY_NAMES:
        raise CatalogError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")
    if name == "k3":
        if k not in (None, 4):
            raise UserInputError("the k3 family is ex1 with k = 4")
        k = 4
    if k is None or k < 1:
        raise UserInputError(f"family {name} needs k >= 1, got {k}")
    s = t ** k
    if name in ("ex1", "k3"):
        a = (sp.Integer(0), sp.Integer(-27), sp.Integer(0), 216 * s, -432 * s ** 2)
        fam = WeierstrassFamily(
            name, k, a, -6, _invariants(a),
            sp.Rational(-1, 3) * (X ** 3 + (3 * X + 4 * s) ** 2),
            3, 3 * k, "Q(sqrt(-3), zeta_k)",
        )
    else:
        a = (sp.Integer(0), sp.Integer(-9), sp.Integer(0), sp.Integer(0), 108 * s)
        fam = WeierstrassFamily(
            name, k, a, 6, _invariants(a),
            sp.Rational(1, 3) * (2 * X ** 3 - 3 * X ** 2 + s),
            6, k, "Q(sqrt(-1), zeta_k)",
        )
    lhs = sp.expand(fam.invariants.c4 ** 3 - fam.invariants.c6 ** 2 - 1728 * fam.invariants.disc)
    if lhs != 0:
        raise CatalogError(f"{name}: c4^3 - c6^2 != 1728 disc")
    log.debug("catalog %s k=%d: j = %s", name, k, fam.j)
    return fam
