"""Eisenstein-type predicates on a Lambert decomposition.

(E1): no b_j with j < 0, and b_0 in Z_p.
(E2)^(n): a_ij in j^2 Z_p for every basis index i and 1 <= j <= n.
For p not dividing j the second condition is empty.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Union

from padic_eis.arith.ring import RingElem, vp
from padic_eis.eis.lambert import LambertDecomposition, lambert_decompose
from padic_eis.series.laurent import LaurentSeries

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class E2Failure:
    i: int
    j: int
    found: int
    required: int


@dataclass(frozen=True)
class EisVerdict:
    e1_ok: bool
    e2_failures: tuple[E2Failure, ...]
    certified_n: int
    n_max: int
    status: Literal["pass", "fail", "uncertified"]
    principal_terms: tuple[int, ...] = ()
    uncertified: tuple[int, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def e1_holds(dec: LambertDecomposition) -> tuple[bool, tuple[int, ...]]:
    """(E1) and the exponents of the offending principal terms."""
    negative = tuple(sorted(j for j in dec.principal if j < 0))
    b0 = dec.b0_coordinates()
    one = dec.basis[0] == 1
    if one:
        integral = not any(b0[1:])
    else:
        integral = not any(dec.principal.get(0, dec.spec.zero)[1:])
    return not negative and integral, negative


def e2_status(x: int, j: int, p: int, prec: int) -> tuple[str, int, int]:
    """Decide a in j^2 Z_p from a known modulo p^prec: (state, found, required)."""
    need = 2 * vp(j, p)
    x %= p ** prec
    if x == 0:
        return ("ok" if need <= prec else "unknown"), prec, need
    found = vp(x, p)
    return ("ok" if found >= need else "fail"), found, need


def eisenstein_report(
    f: Union[LaurentSeries, LambertDecomposition],
    n_max: int,
    basis: tuple[RingElem, ...] | None = None,
) -> EisVerdict:
    dec = f if isinstance(f, LambertDecomposition) else lambert_decompose(f, basis)
    p = dec.spec.p
    e1_ok, negative = e1_holds(dec)
    top = min(n_max, dec.N - 1)
    failures: list[E2Failure] = []
    unknown: list[int] = []
    for j in range(p, top + 1, p):
        for i in range(1, dec.spec.d + 1):
            state, found, need = e2_status(dec.a(i, j), j, p, dec.prec)
            if state == "fail":
                failures.append(E2Failure(i, j, found, need))
            elif state == "unknown" and (not unknown or unknown[-1] != j):
                unknown.append(j)
    certified_n = unknown[0] - 1 if unknown else top
    if not e1_ok or failures:
        status = "fail"
    elif unknown or top < n_max:
        status = "uncertified"
        log.warning(
            "Eisenstein verdict uncertified beyond n=%d (requested %d, precision p^%d)",
            certified_n, n_max, dec.prec,
        )
    else:
        status = "pass"
    log.debug("Eisenstein verdict %s: %d E2 failures, certified to n=%d", status, len(failures), certified_n)
    return EisVerdict(e1_ok, tuple(failures), certified_n, n_max, status, negative, tuple(unknown))
