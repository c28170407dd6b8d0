"""Report builders shared by the CLI and the manifest runner."""
from __future__ import annotations

import logging
from fractions import Fraction

from padic_eis.arith.ring import make_ring
from padic_eis.config import cfg
from padic_eis.eis.lambert import lambert_decompose
from padic_eis.eis.verdict import eisenstein_report
from padic_eis.series.cache import CacheKey, SeriesCache
from padic_eis.qexp import GAMMA13_NAMES, LEVEL1_NAMES, gamma13_series, level1_series
from padic_eis.qexp.theta_values import check_dlog_integrality, xi_closed_value
from padic_eis.residue.rules import xi_rule_value
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import UserInputError
from padic_eis.utils.schema import (
    DecompositionReport,
    E2FailurePayload,
    ResidueReport,
    SeriesPayload,
)

log = logging.getLogger(__name__)

SERIES_NAMES = LEVEL1_NAMES + GAMMA13_NAMES


def _signed(x: int, m: int) -> int:
    return x - m if x > m // 2 else x


def named_series(name: str, p: int, d: int = 1, M: int | None = None, N: int = 50,
                 cache: SeriesCache | None = None) -> LaurentSeries:
    M = M or cfg.precision.working
    spec = make_ring(p, d, M)
    if name in LEVEL1_NAMES:
        build = lambda: level1_series(spec, name, N)  # noqa: E731
    elif name in GAMMA13_NAMES:
        build = lambda: gamma13_series(spec, name, N)  # noqa: E731
    else:
        raise UserInputError(f"unknown series {name!r}; expected one of {', '.join(SERIES_NAMES)}")
    cache = cache or SeriesCache()
    return cache.get_or_build(CacheKey.for_spec(name, spec, N), spec, build)


def series_payload(name: str, f: LaurentSeries) -> SeriesPayload:
    m = f.modulus
    return SeriesPayload(
        name=name, p=f.spec.p, d=f.spec.d, M=f.spec.M, N=f.N, v=f.v, label=f.label,
        coefficients=[[_signed(x, m) for x in f.column(n)] for n in range(f.v, f.N)],
        certified_precision=f.prec,
    )


def reduce_rational(value: str | int, p: int, M: int) -> int:
    """A rational literal such as ``-27/4`` as a signed residue mod p^M."""
    spec = make_ring(p, 1, M)
    return _signed(spec.from_rational(Fraction(value))[0], spec.modulus)


def decompose(name: str, p: int, d: int = 1, M: int | None = None, N: int = 50,
              n: int | None = None, cache: SeriesCache | None = None) -> DecompositionReport:
    f = named_series(name, p, d, M, N, cache)
    dec = lambert_decompose(f)
    verdict = eisenstein_report(dec, n if n is not None else N - 1)
    m = p ** dec.prec
    return DecompositionReport(
        name=name, p=p, d=d, M=f.spec.M, N=dec.N,
        principal={j: [_signed(x, m) for x in c] for j, c in sorted(dec.principal.items())},
        table=dec.signed_table(), e1_ok=verdict.e1_ok,
        e2_failures=[E2FailurePayload(i=e.i, j=e.j, found=e.found, required=e.required) for e in verdict.e2_failures],
        status=verdict.status, certified_n=verdict.certified_n, certified_precision=dec.prec,
    )


def residue(a: int, b: int, r: int, p: int, M: int | None = None, N: int = 40) -> ResidueReport:
    M = M or cfg.precision.working
    spec = make_ring(p, 1, M)
    rule = xi_rule_value(spec, a, b, r, N)
    closed = xi_closed_value(spec, a, b, r, N)
    agree = rule.agrees_with(closed)
    integral = check_dlog_integrality(rule)
    if not agree:
        log.warning("residue formulas disagree for (a, b, r) = (%d, %d, %d)", a, b, r)
    return ResidueReport(
        a=a, b=b, r=r, p=p, M=M, N=N, agree=agree, dlog_integral=integral.passed,
        dlog_status=integral.status,
        rule_value=series_payload("rule", rule).coefficients,
        closed_value=series_payload("closed", closed).coefficients,
    )
