"""Level-one q-expansions and the Tate curve coefficients."""
from __future__ import annotations

import logging
from functools import lru_cache

from sympy import divisor_sigma

from padic_eis.arith.ring import RingSpec
from padic_eis.qexp.weierstrass import WeierstrassInvariants, weierstrass_invariants
from padic_eis.series.cache import cached
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import UserInputError

log = logging.getLogger(__name__)

LEVEL1_NAMES = ("E4", "E6", "Delta", "j")


@lru_cache(maxsize=None)
def _sigma_table(k: int, N: int) -> tuple[int, ...]:
    return (0,) + tuple(int(divisor_sigma(n, k)) for n in range(1, N))


def divisor_series(spec: RingSpec, k: int, N: int, label: str = "q") -> LaurentSeries:
    """sum_{n>=1} sigma_k(n) q^n."""
    if k < 1:
        raise UserInputError(f"divisor_series needs k >= 1, got {k}")
    return LaurentSeries.from_coefficients(spec, _sigma_table(k, N), v=0, N=N, label=label)


def _eisenstein(spec: RingSpec, k: int, factor: int, N: int) -> LaurentSeries:
    sig = _sigma_table(k, N)
    return LaurentSeries.from_coefficients(spec, [1] + [factor * s for s in sig[1:]], v=0, N=N)


def _euler_product(spec: RingSpec, N: int) -> LaurentSeries:
    """prod_{n>=1} (1 - q^n) from the pentagonal number theorem."""
    terms: dict[int, int] = {0: 1}
    k = 1
    while k * (3 * k - 1) // 2 < N:
        sign = -1 if k % 2 else 1
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e < N:
                terms[e] = sign
        k += 1
    return LaurentSeries.from_dict(spec, terms, N, v=0)


def _delta(spec: RingSpec, N: int) -> LaurentSeries:
    return (_euler_product(spec, max(N - 1, 1)) ** 24).shift(1).truncate(N)


@lru_cache(maxsize=64)
def level1_series(spec: RingSpec, name: str, N: int) -> LaurentSeries:
    """E4, E6, Delta = q prod (1-q^n)^24, or j = E4^3/Delta, all to order q^N."""
    if name == "E4":
        return _eisenstein(spec, 3, 240, N)
    if name == "E6":
        return _eisenstein(spec, 5, -504, N)
    if name == "Delta":
        return cached("Delta", spec, N, lambda: _delta(spec, N))
    if name == "j":
        e4 = level1_series(spec, "E4", N + 2)
        delta = level1_series(spec, "Delta", N + 2)
        return (e4 ** 3 / delta).truncate(N)
    raise UserInputError(f"unknown level-one series {name!r}; expected one of {LEVEL1_NAMES}")


def tate_coeffs(spec: RingSpec, N: int) -> tuple[LaurentSeries, LaurentSeries]:
    """(a4, a6) of y^2 + xy = x^3 + a4 x + a6."""
    s3 = _sigma_table(3, N)
    s5 = _sigma_table(5, N)
    a4 = LaurentSeries.from_coefficients(spec, [-5 * s for s in s3], v=0, N=N)
    a6 = LaurentSeries.from_coefficients(
        spec, [-((5 * x + 7 * y) // 12) for x, y in zip(s3, s5)], v=0, N=N
    )
    return a4, a6


@lru_cache(maxsize=32)
def tate_invariants(spec: RingSpec, N: int) -> WeierstrassInvariants:
    """c4, c6, discriminant and j of the Tate curve, each to order q^N."""
    a4, a6 = tate_coeffs(spec, N + 2)
    inv = weierstrass_invariants(1, 0, 0, a4, a6)
    return inv.map(lambda f: f.truncate(N))
