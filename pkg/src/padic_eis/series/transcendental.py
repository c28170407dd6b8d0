"""Roots, logarithms, exponentials and Frobenius operators on truncated series."""
from __future__ import annotations

import logging
import math
from fractions import Fraction

from padic_eis.arith.ring import RingElem, nth_root, vp
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import NotUnitError, PrecisionError, SeriesError

log = logging.getLogger(__name__)


def nth_root_series(f: LaurentSeries, n: int, residue_choice=None) -> LaurentSeries:
    """g with g^n = f; the leading coefficient is the chosen root of f's leading coefficient."""
    w = f.valuation()
    if w is None or not f.is_unit_led():
        raise NotUnitError("root extraction needs a unit-led series")
    if w % n:
        raise SeriesError(f"{n} does not divide the valuation {w}")
    spec = f.spec
    u = f.strip().shift(-w)
    lead = nth_root(spec, u.coefficient(0), n, residue_choice)
    L = u.length
    inv_n = spec.element(Fraction(1, n))
    g = LaurentSeries.constant(spec, lead, 1, f.label).with_prec(u.prec)
    cur = 1
    while cur < L:
        cur = min(2 * cur, L)
        g = LaurentSeries.from_coefficients(
            spec, [g.coefficient(i) if i < g.N else 0 for i in range(cur)], N=cur, label=f.label,
            prec=u.prec,
        )
        correction = (u.truncate(cur) * (g ** (n - 1)).inverse() - g).scale(inv_n)
        g = (g + correction).truncate(cur)
    return g.shift(w // n)


def qdlog(f: LaurentSeries) -> LaurentSeries:
    """q f'/f for a unit-led series; qdlog(q^m u) = m + q u'/u."""
    if not f.is_unit_led():
        raise NotUnitError("qdlog needs a unit-led series")
    s = f.strip()
    return s.theta() / s


def derivative(f: LaurentSeries) -> LaurentSeries:
    """d/dq."""
    return f.derivative()


def _small_log(h1: LaurentSeries, prec: int, shift: int) -> LaurentSeries:
    """sum_k (-1)^(k+1) p^(k-shift) h1^k / k modulo p^(prec-shift).

    ``h1`` is (f - 1)/p, known modulo p^(prec-1). Terms whose p-power exceeds
    the output precision are dropped.
    """
    spec = h1.spec
    p = spec.p
    out_prec = prec - shift
    m = p ** out_prec
    total = LaurentSeries.zero(spec, h1.N, h1.label).lower_to(min(h1.v, 0)).lift_prec(out_prec)
    power = h1
    k = 1
    while k - shift - math.log(k, p) < out_prec:
        e = k - shift - vp(k, p)
        if e < out_prec:
            unit = k // p ** vp(k, p)
            c = (-1) ** (k + 1) * p ** e * pow(unit, -1, m)
            total = total + power.lift_prec(out_prec).scale(c % m).with_prec(out_prec)
        power = power * h1
        k += 1
    return total.with_prec(out_prec)


def _small_exp(f1: LaurentSeries, prec: int) -> LaurentSeries:
    """sum_k p^k f1^k / k! modulo p^prec for f = p*f1."""
    spec = f1.spec
    p = spec.p
    if p == 2:
        raise SeriesError("exp0 does not converge on 2-adic inputs of valuation 1")
    m = p ** prec
    total = LaurentSeries.one(spec, f1.N, f1.label).lower_to(min(f1.v, 0))
    power = f1
    k = 1
    fact = 1
    while k - (k - 1) / (p - 1) < prec + 1:
        fact *= k
        e = k - vp(fact, p)
        if e < prec:
            unit = fact // p ** vp(fact, p)
            c = p ** e * pow(unit, -1, m)
            total = total + power.lift_prec(prec).scale(c % m).with_prec(prec)
        power = power * f1
        k += 1
    return total.with_prec(prec)


def log1(f: LaurentSeries) -> LaurentSeries:
    """log f for f = 1 + (p-adically or q-adically small).

    When every coefficient of f - 1 is divisible by p the p-adic series is
    used and no digits are lost. Otherwise f must have constant term = 1 mod p
    and the q-adic route divides the coefficients of qdlog(f) by n, losing
    v_p(n) digits at each n divisible by p.
    """
    spec = f.spec
    p = spec.p
    if f.valuation() is None:
        raise SeriesError("log of zero")
    if f.valuation() < 0:
        raise SeriesError("log1 needs a power series")
    h = f - 1
    if all(x % p == 0 for c in h.comps for x in c):
        if f.prec < 2:
            raise PrecisionError("log1 needs at least two digits")
        return _small_log(h.divide_by_p(), f.prec, 0)
    c0 = f.coefficient(0)
    if any((c0 - 1).residue()):
        raise SeriesError("log1 needs constant term congruent to 1 mod p")
    const = _small_log(
        (LaurentSeries.constant(spec, c0, 1, f.label).with_prec(f.prec) - 1).divide_by_p(), f.prec, 0
    )
    dl = qdlog(f)
    loss = max((vp(n, p) for n in range(1, f.N)), default=0)
    out_prec = f.prec - loss
    if out_prec < 1:
        raise PrecisionError(f"log1 to order {f.N} needs more than {f.prec} digits")
    m_out = p ** out_prec
    cols = [const.column(0)]
    for n in range(1, f.N):
        col = dl.column(n)
        e = vp(n, p)
        if any(x % p ** e for x in col):
            raise SeriesError(f"log1 coefficient at q^{n} is not integral")
        inv = pow(n // p ** e, -1, m_out)
        cols.append(tuple((x // p ** e) * inv % m_out for x in col))
    return LaurentSeries.from_coefficients(spec, cols, v=0, N=f.N, label=f.label, prec=out_prec)


def exp0(f: LaurentSeries) -> LaurentSeries:
    """exp f for f with positive (p, q)-adic valuation; inverse of log1."""
    spec = f.spec
    p = spec.p
    if f.valuation() is not None and f.valuation() < 0:
        raise SeriesError("exp0 needs a power series")
    if all(x % p == 0 for c in f.comps for x in c):
        if f.prec < 2:
            raise PrecisionError("exp0 needs at least two digits")
        return _small_exp(f.divide_by_p(), f.prec)
    c0 = f.coefficient(0)
    if any(c0.residue()):
        raise SeriesError("exp0 needs constant term divisible by p")
    const = exp0(LaurentSeries.constant(spec, c0, 1, f.label).with_prec(f.prec))
    m = f.modulus
    coeffs: list[RingElem] = [RingElem(spec, spec.one)]
    digits = [f.prec]
    for n in range(1, f.N):
        acc = spec.zero
        for k in range(1, n + 1):
            term = spec.mul(spec.scale(k, f.column(k), m), coeffs[n - k].coords, m)
            acc = spec.add(acc, term, m)
        e = vp(n, p)
        if any(x % p ** e for x in acc):
            raise SeriesError(f"exp0 coefficient at q^{n} is not integral")
        digits.append(min(digits) - e)
        inv = pow(n // p ** e, -1, m)
        coeffs.append(RingElem(spec, tuple((x // p ** e) * inv % m for x in acc)))
    out_prec = min(digits)
    if out_prec < 1:
        raise PrecisionError(f"exp0 to order {f.N} needs more than {f.prec} digits")
    tail = LaurentSeries.from_coefficients(spec, coeffs, v=0, N=f.N, label=f.label, prec=out_prec)
    return tail * const.coefficient(0)


def phi_substitute(f: LaurentSeries) -> LaurentSeries:
    """phi(f): sigma on coefficients and q -> q^p; order becomes p * ceil(N/p)."""
    p = f.spec.p
    K = -(-f.N // p)
    lo = min(f.v, K)
    length = p * (K - lo)
    comps = [[0] * length for _ in range(f.spec.d)]
    for n in range(lo, K):
        col = f.spec.frobenius_coords(f.column(n), f.modulus)
        for k in range(f.spec.d):
            comps[k][(n - lo) * p] = col[k]
    return LaurentSeries._build(f.spec, p * lo, comps, p * K, f.label, f.prec)


def ell_phi(f: LaurentSeries) -> LaurentSeries:
    """(1/p) log(phi(f) / f^p) for a unit-led series; certified to one digit less."""
    if f.prec < 2:
        raise PrecisionError("ell_phi needs at least one guard digit")
    if not f.is_unit_led():
        raise NotUnitError("ell_phi needs a unit-led series")
    s = f.strip()
    u = s.shift(-s.v)
    g = phi_substitute(u).truncate(u.N) / u ** f.spec.p
    h = g - 1
    if any(x % f.spec.p for c in h.comps for x in c):
        raise SeriesError("phi(f)/f^p is not congruent to 1 mod p")
    return _small_log(h.divide_by_p(), f.prec, 1)
