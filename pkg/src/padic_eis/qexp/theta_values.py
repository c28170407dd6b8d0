"""One-variable theta values, the S(alpha) products and the closed symbol value.

Throughout, ``q0`` is the uniformizer of the base and ``q = q0^r``. Series are
returned with relative length ``N`` (coefficients known for ``N`` exponents
above the valuation).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

from padic_eis.arith.ring import RingSpec, vp
from padic_eis.series.cache import blob_digest, cached
from padic_eis.series.codec import encode_series
from padic_eis.series.laurent import LaurentSeries
from padic_eis.series.transcendental import ell_phi
from padic_eis.utils.errors import NotUnitError, SeriesError, UserInputError

log = logging.getLogger(__name__)

Q0 = "q0"


def _one_minus_powers(spec: RingSpec, exponents: list[int], N: int) -> LaurentSeries:
    """prod (1 - q0^k) over ``exponents`` (all >= 1), modulo q0^N."""
    m = spec.modulus
    a = [0] * N
    if N:
        a[0] = 1
    for k in exponents:
        for i in range(N - 1, k - 1, -1):
            a[i] = (a[i] - a[i - k]) % m
    return LaurentSeries.from_coefficients(spec, a, v=0, N=N, label=Q0)


def q0_power(spec: RingSpec, k: int, N: int) -> LaurentSeries:
    """q0^k with relative length N."""
    return LaurentSeries.monomial(spec, 1, k, k + N, Q0)


def theta_value(spec: RingSpec, m: int, r: int, N: int) -> LaurentSeries:
    """theta(q0^m) for q = q0^r.

    ``m`` is first reduced to ``0 < m' < r`` with
    theta(q^s w) = (-1)^s q^(-s(s-1)/2) w^(-s) theta(w).
    """
    if r < 1:
        raise UserInputError(f"r must be positive, got {r}")
    s, mm = divmod(m, r)
    if mm == 0:
        raise SeriesError(f"theta vanishes at q0^{m} when r = {r}")
    exps = [mm]
    n = 1
    while r * n - mm < N:
        exps.append(r * n - mm)
        if r * n + mm < N:
            exps.append(r * n + mm)
        n += 1
    unit = _one_minus_powers(spec, [k for k in exps if k < N], N)
    shift = -r * s * (s - 1) // 2 - mm * s
    if s % 2:
        unit = -unit
    return unit.shift(shift)


def s_alpha_series(alpha: LaurentSeries, r: int, N: int) -> LaurentSeries:
    """prod_{k>=1} ((1 - alpha q^k) / (1 - alpha^-1 q^k))^k with q = q0^r."""
    w = alpha.valuation()
    if w is None or not alpha.is_unit_led():
        raise NotUnitError("S(alpha) needs a unit-led alpha")
    if abs(w) >= r:
        raise SeriesError(f"S(alpha) needs |v(alpha)| < r, got v = {w} and r = {r}")
    alpha = alpha.relabel(Q0)
    name = f"S_alpha:{blob_digest(encode_series(alpha))}:r={r}"
    return cached(name, alpha.spec, N, lambda: _s_alpha_product(alpha, w, r, N))


def _s_alpha_product(alpha: LaurentSeries, w: int, r: int, N: int) -> LaurentSeries:
    spec = alpha.spec
    inv = alpha.inverse()
    one = LaurentSeries.one(spec, N, Q0)
    total = one
    k = 1
    while r * k - abs(w) < N:
        num = (one - alpha.shift(r * k)).truncate(N)
        den = (one - inv.shift(r * k)).truncate(N)
        total = (total * (num / den) ** k).truncate(N)
        k += 1
    return total


def check_xi_parameters(spec: RingSpec, a: int, b: int, r: int) -> None:
    if not 0 < a < b < r:
        raise UserInputError(f"need 0 < a < b < r, got a={a}, b={b}, r={r}")
    if (6 * r) % spec.p == 0:
        raise UserInputError(f"p = {spec.p} divides 6r = {6 * r}")


def xi_closed_value(spec: RingSpec, a: int, b: int, r: int, N: int) -> LaurentSeries:
    """The closed theta/S expression for the symbol attached to (a, b, r)."""
    check_xi_parameters(spec, a, b, r)
    theta = {m: theta_value(spec, m, r, N) for m in {a, b, b - a}}
    S = {m: s_alpha_series(q0_power(spec, m, N), r, N) for m in {a, b, b - a}}
    core = (theta[b] ** b / (theta[b - a] ** (b - a) * theta[a] ** a)) ** r
    core = core * (S[b] / (S[b - a] * S[a])) ** (r * r)
    if (a * (r - b)) % 2:
        core = -core
    log.debug("closed value for (a, b, r) = (%d, %d, %d) to relative order %d", a, b, r, N)
    return core.truncate(N).shift(a * (b - a) * (b - r))


@dataclass(frozen=True)
class DlogIntegrality:
    status: Literal["pass", "fail", "uncertified"]
    first_failure: int | None = None
    certified_prec: int = 0
    order: int = 0
    uncertified: tuple[int, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check_dlog_integrality(h: LaurentSeries) -> DlogIntegrality:
    """Every q0^j coefficient of ell_phi(h) must be divisible by j (1 <= j < N)."""
    ell = ell_phi(h)
    p = h.spec.p
    P = ell.prec
    unknown: list[int] = []
    for j in range(1, ell.N):
        col = ell.column(j)
        need = vp(j, p)
        if need <= P:
            if any(x % p ** need for x in col):
                log.debug("dlog integrality fails at j=%d", j)
                return DlogIntegrality("fail", j, P, ell.N)
        elif any(x % p ** P for x in col):
            return DlogIntegrality("fail", j, P, ell.N)
        else:
            unknown.append(j)
    if unknown:
        log.warning("dlog integrality uncertified at %d indices (first %d)", len(unknown), unknown[0])
        return DlogIntegrality("uncertified", None, P, ell.N, tuple(unknown))
    return DlogIntegrality("pass", None, P, ell.N)
