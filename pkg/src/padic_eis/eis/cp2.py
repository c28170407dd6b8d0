"""Search for an n making a_j - b_j + n c_j vanish at the multiples of p.

The congruences are taken modulo p^2 for j = i p (1 <= i < p) and modulo p^4
for j = p^2. Each one cuts out a residue class of n (or nothing, or every n);
the check holds exactly when the classes have no common member.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Mapping, Union

from padic_eis.arith.ring import vp
from padic_eis.eis.lambert import LambertDecomposition
from padic_eis.utils.errors import PrecisionError, UserInputError

log = logging.getLogger(__name__)

Table = Union[LambertDecomposition, Mapping[int, int]]


@dataclass(frozen=True)
class CongruenceClass:
    j: int
    e: int
    status: Literal["vacuous", "empty", "class"]
    residue: int = 0
    exponent: int = 0


@dataclass(frozen=True)
class CP2Result:
    p: int
    holds: bool
    witness: int | None
    classes: tuple[CongruenceClass, ...]

    @property
    def modulus(self) -> int:
        return self.p ** max((c.exponent for c in self.classes if c.status == "class"), default=0)


def _lookup(table: Table, j: int) -> int:
    if isinstance(table, LambertDecomposition):
        if table.spec.d != 1:
            raise UserInputError("the C(p)-2 check needs decompositions over Z_p")
        return table.a(1, j)
    try:
        return int(table[j])
    except KeyError as exc:
        raise PrecisionError(f"no coefficient for j={j}") from exc


def _precision(table: Table, default: int) -> int:
    return table.prec if isinstance(table, LambertDecomposition) else default


def congruence_class(A: int, C: int, p: int, e: int, j: int) -> CongruenceClass:
    """Solutions n of A + n C == 0 mod p^e."""
    m = p ** e
    A %= m
    C %= m
    if C == 0:
        return CongruenceClass(j, e, "vacuous" if A == 0 else "empty")
    v = vp(C, p)
    if A and vp(A, p) < v:
        return CongruenceClass(j, e, "empty")
    k = e - v
    mk = p ** k
    r = (-(A // p ** v) * pow((C // p ** v) % mk, -1, mk)) % mk if k else 0
    return CongruenceClass(j, e, "class", r, k)


def cp2_check(a: Table, b: Table, c: Table, p: int, prec: int = 4) -> CP2Result:
    """Decide whether no n in Z_p solves every congruence; returns the classes either way."""
    available = min(_precision(t, prec) for t in (a, b, c))
    targets = [(i * p, 2) for i in range(1, p)] + [(p * p, 4)]
    classes: list[CongruenceClass] = []
    for j, e in targets:
        if e > available:
            raise PrecisionError(f"j={j} needs coefficients modulo p^{e}, only p^{available} known")
        A = _lookup(a, j) - _lookup(b, j)
        classes.append(congruence_class(A, _lookup(c, j), p, e, j))
    holds = False
    residue, exponent = 0, 0
    for cls in classes:
        if cls.status == "empty":
            log.debug("j=%d admits no n", cls.j)
            holds = True
            break
        if cls.status == "vacuous":
            continue
        low = min(exponent, cls.exponent)
        if (residue - cls.residue) % p ** low:
            log.debug("j=%d contradicts n == %d mod p^%d", cls.j, residue, exponent)
            holds = True
            break
        if cls.exponent > exponent:
            residue, exponent = cls.residue, cls.exponent
    witness = None if holds else residue
    log.info("C(p)-2 at p=%d: %s", p, "holds" if holds else f"fails with n == {residue} mod p^{exponent}")
    return CP2Result(p, holds, witness, tuple(classes))
