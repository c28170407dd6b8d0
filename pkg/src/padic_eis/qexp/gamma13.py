"""Eisenstein series for Gamma_1(3) and the series derived from them.

E1, E3a and E3b are Lambert sums twisted by the character mod 3; ``t`` is the
fourth root of E3a / E1^3 with constant term 1, and ``g``, ``f1``, ``f2`` are
-27 t E3b / 4 divided by 1, t - 1 and t + 1.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from sympy import divisors

from padic_eis.arith.ring import RingSpec
from padic_eis.series.laurent import LaurentSeries
from padic_eis.series.transcendental import nth_root_series
from padic_eis.utils.errors import UserInputError

log = logging.getLogger(__name__)

GAMMA13_NAMES = ("E1", "E3a", "E3b", "t", "f1", "f2", "g")


def chi3(n: int) -> int:
    """The nontrivial character mod 3."""
    return (0, 1, -1)[n % 3]


@lru_cache(maxsize=None)
def _twisted_sums(N: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    e1 = [0] * N
    e3a = [0] * N
    e3b = [0] * N
    for n in range(1, N):
        for d in divisors(n):
            d = int(d)
            e1[n] += chi3(d)
            e3a[n] += chi3(d) * d * d
            e3b[n] += chi3(n // d) * d * d
    return tuple(e1), tuple(e3a), tuple(e3b)


@lru_cache(maxsize=64)
def gamma13_series(spec: RingSpec, name: str, N: int) -> LaurentSeries:
    if name in ("E1", "E3a", "E3b"):
        e1, e3a, e3b = _twisted_sums(N)
        if name == "E1":
            coeffs = [1] + [6 * c for c in e1[1:]]
        elif name == "E3a":
            coeffs = [1] + [-9 * c for c in e3a[1:]]
        else:
            coeffs = list(e3b)
        return LaurentSeries.from_coefficients(spec, coeffs, v=0, N=N)
    if name == "t":
        ratio = gamma13_series(spec, "E3a", N) / gamma13_series(spec, "E1", N) ** 3
        return nth_root_series(ratio, 4, residue_choice=1)
    if name in ("g", "f1", "f2"):
        # t - 1 has valuation one, so the quotients are built one order higher
        t = gamma13_series(spec, "t", N + 1)
        base = (t * gamma13_series(spec, "E3b", N + 1)).scale(Fraction(-27, 4))
        if name == "g":
            return base.truncate(N)
        return (base / (t - 1 if name == "f1" else t + 1)).truncate(N)
    raise UserInputError(f"unknown Gamma_1(3) series {name!r}; expected one of {GAMMA13_NAMES}")
