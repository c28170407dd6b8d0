"""Truncated Laurent series over an unramified coefficient ring.

A ``LaurentSeries`` knows its coefficients for exponents ``v .. N-1`` and is
exact modulo ``(p^prec, q^N)``. Every operation reports the largest order
``N`` and the p-adic precision ``prec`` its inputs justify:

* add/sub: ``v = min``, ``N = min``;
* mul: both factors are stripped to their true valuation first, and the result
  keeps the smaller relative length (``N - v``);
* inverse: relative length is preserved;
* compose/reversion: see the functions below.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from padic_eis.arith.ring import RingElem, RingSpec
from padic_eis.series.kernels import (
    add_components,
    inverse_components,
    mul_components,
    neg_components,
)
from padic_eis.utils.errors import NotUnitError, PrecisionError, SeriesError

log = logging.getLogger(__name__)

Scalar = Union[int, Fraction, RingElem]


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    spec: RingSpec
    v: int
    comps: tuple[tuple[int, ...], ...]
    N: int
    label: str = "q"
    prec: int = field(default=0)

    def __post_init__(self):
        if self.prec <= 0 or self.prec > self.spec.M:
            object.__setattr__(self, "prec", self.spec.M)
        if len(self.comps) != self.spec.d:
            raise SeriesError(f"expected {self.spec.d} components, got {len(self.comps)}")
        length = max(self.N - self.v, 0)
        if any(len(c) != length for c in self.comps):
            raise SeriesError(f"component length does not match order: v={self.v}, N={self.N}")

    # -- construction --------------------------------------------------------------

    @classmethod
    def _build(cls, spec, v, comps, N, label="q", prec=None) -> "LaurentSeries":
        prec = prec or spec.M
        m = spec.p ** prec
        return cls(spec, v, tuple(tuple(x % m for x in c) for c in comps), N, label, prec)

    @classmethod
    def from_coefficients(
        cls,
        spec: RingSpec,
        coeffs: Iterable,
        v: int = 0,
        N: int | None = None,
        label: str = "q",
        prec: int | None = None,
    ) -> "LaurentSeries":
        cols = [spec.element(c).coords for c in coeffs]
        N = v + len(cols) if N is None else N
        length = N - v
        cols = cols[:length] + [spec.zero] * (length - len(cols))
        comps = [[col[k] for col in cols] for k in range(spec.d)]
        return cls._build(spec, v, comps, N, label, prec)

    @classmethod
    def from_dict(cls, spec: RingSpec, terms: Mapping[int, Scalar], N: int, label: str = "q",
                  v: int | None = None) -> "LaurentSeries":
        lo = min([e for e in terms if e < N] + [0]) if v is None else v
        cols = [spec.zero] * (N - lo)
        for e, c in terms.items():
            if lo <= e < N:
                cols[e - lo] = spec.add(cols[e - lo], spec.element(c).coords)
        return cls.from_coefficients(spec, cols, v=lo, N=N, label=label)

    @classmethod
    def zero(cls, spec: RingSpec, N: int, label: str = "q", v: int = 0) -> "LaurentSeries":
        v = min(v, N)
        return cls._build(spec, v, [[0] * (N - v) for _ in range(spec.d)], N, label)

    @classmethod
    def constant(cls, spec: RingSpec, c: Scalar, N: int, label: str = "q") -> "LaurentSeries":
        return cls.from_dict(spec, {0: c}, N, label, v=0)

    @classmethod
    def one(cls, spec: RingSpec, N: int, label: str = "q") -> "LaurentSeries":
        return cls.constant(spec, 1, N, label)

    @classmethod
    def monomial(cls, spec: RingSpec, c: Scalar, e: int, N: int, label: str = "q") -> "LaurentSeries":
        return cls.from_dict(spec, {e: c}, N, label, v=min(e, N))

    @classmethod
    def variable(cls, spec: RingSpec, N: int, label: str = "q") -> "LaurentSeries":
        return cls.monomial(spec, 1, 1, N, label)

    # -- inspection -----------------------------------------------------------------

    @property
    def modulus(self) -> int:
        return self.spec.p ** self.prec

    @property
    def length(self) -> int:
        return self.N - self.v

    def column(self, n: int) -> tuple[int, ...]:
        if n >= self.N:
            raise SeriesError(f"coefficient q^{n} is beyond the order q^{self.N}")
        if n < self.v:
            return self.spec.zero
        i = n - self.v
        return tuple(c[i] for c in self.comps)

    def coefficient(self, n: int) -> RingElem:
        return RingElem(self.spec, self.column(n))

    __getitem__ = coefficient

    def coefficients(self) -> list[RingElem]:
        return [self.coefficient(n) for n in range(self.v, self.N)]

    def ints(self, start: int | None = None, signed: bool = False) -> list[int]:
        """Integer coefficients from ``start`` (default ``v``) for series over Z/p^prec."""
        m = self.modulus
        out = []
        for n in range(self.v if start is None else start, self.N):
            col = self.column(n)
            if any(col[1:]):
                raise SeriesError(f"coefficient of q^{n} is not in Z/p^{self.prec}")
            x = col[0]
            out.append(x - m if signed and x > m // 2 else x)
        return out

    def valuation(self) -> int | None:
        for i in range(self.length):
            if any(c[i] for c in self.comps):
                return self.v + i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def leading(self) -> RingElem:
        w = self.valuation()
        if w is None:
            raise SeriesError("zero series has no leading coefficient")
        return self.coefficient(w)

    def is_unit_led(self) -> bool:
        w = self.valuation()
        return w is not None and self.spec.is_unit(self.column(w))

    def key(self) -> tuple:
        s = self.strip()
        return (s.spec.p, s.spec.d, s.v, s.N, s.prec, s.comps)

    # -- reshaping ----------------------------------------------------------------

    def strip(self) -> "LaurentSeries":
        w = self.valuation()
        if w is None or w == self.v:
            return self
        i = w - self.v
        return LaurentSeries(self.spec, w, tuple(c[i:] for c in self.comps), self.N, self.label, self.prec)

    def truncate(self, N: int) -> "LaurentSeries":
        if N >= self.N:
            return self
        v = min(self.v, N)
        comps = tuple(c[: N - v] for c in self.comps)
        return LaurentSeries(self.spec, v, comps, N, self.label, self.prec)

    def with_prec(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise certified precision {self.prec} to {prec}")
        return LaurentSeries._build(self.spec, self.v, self.comps, self.N, self.label, prec)

    def relabel(self, label: str) -> "LaurentSeries":
        return LaurentSeries(self.spec, self.v, self.comps, self.N, label, self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k."""
        return LaurentSeries(self.spec, self.v + k, self.comps, self.N + k, self.label, self.prec)

    def lower_to(self, v: int) -> "LaurentSeries":
        """Same series with explicit zero coefficients down to exponent ``v``."""
        if v >= self.v:
            return self
        pad = self.v - v
        return LaurentSeries(self.spec, v, tuple((0,) * pad + c for c in self.comps), self.N, self.label, self.prec)

    def extend_scalars(self, spec: RingSpec) -> "LaurentSeries":
        """Embed a series over Z/p^M into an unramified extension with the same p."""
        if spec.p != self.spec.p:
            raise SeriesError("extension must have the same residue characteristic")
        if self.spec.d != 1:
            if spec == self.spec:
                return self
            raise SeriesError("only series over Z/p^M can be extended")
        zeros = tuple((0,) * self.length for _ in range(spec.d - 1))
        prec = min(self.prec, spec.M)
        return LaurentSeries._build(spec, self.v, (self.comps[0],) + zeros, self.N, self.label, prec)

    def divide_by_p(self) -> "LaurentSeries":
        p = self.spec.p
        if self.prec < 2:
            raise PrecisionError("division by p needs at least two digits")
        if any(x % p for c in self.comps for x in c):
            raise SeriesError("series is not divisible by p")
        comps = tuple(tuple(x // p for x in c) for c in self.comps)
        return LaurentSeries(self.spec, self.v, comps, self.N, self.label, self.prec - 1)

    def lift_prec(self, prec: int) -> "LaurentSeries":
        """Reinterpret the stored representatives at a higher modulus (caller multiplies by p^k)."""
        return LaurentSeries(self.spec, self.v, self.comps, self.N, self.label, min(prec, self.spec.M))

    def map_columns(self, fn, N: int | None = None) -> "LaurentSeries":
        cols = [fn(n, self.column(n)) for n in range(self.v, self.N)]
        comps = [[col[k] for col in cols] for k in range(self.spec.d)]
        return LaurentSeries._build(self.spec, self.v, comps, self.N, self.label, self.prec)

    # -- comparison -----------------------------------------------------------------

    def _check_compatible(self, other: "LaurentSeries") -> None:
        a, b = self.spec, other.spec
        if a != b and not (a.p == b.p and a.d == b.d == 1):
            raise SeriesError(f"mismatched coefficient rings {a.label()} and {b.label()}")

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Coefficient agreement on the common range at the common precision."""
        self._check_compatible(other)
        m = self.spec.p ** min(self.prec, other.prec)
        hi = min(self.N, other.N)
        for n in range(min(self.v, other.v), hi):
            a = self.column(n)
            b = other.column(n)
            if any((x - y) % m for x, y in zip(a, b)):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    # -- arithmetic --------------------------------------------------------------------

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction, RingElem)):
            return LaurentSeries.constant(self.spec, other, max(self.N, 1), self.label)
        raise TypeError(f"cannot combine LaurentSeries with {type(other).__name__}")

    def __add__(self, other) -> "LaurentSeries":
        o = self._coerce(other)
        lo = min(self.v, o.v)
        hi = min(self.N, o.N)
        prec = min(self.prec, o.prec)
        if hi <= lo:
            return LaurentSeries.zero(self.spec, hi, self.label).with_prec(prec)
        a = self.lower_to(lo).truncate(hi)
        b = o.lower_to(lo).truncate(hi)
        comps = add_components([list(c) for c in a.comps], [list(c) for c in b.comps], self.spec.p ** prec)
        return LaurentSeries._build(self.spec, lo, comps, hi, self.label, prec)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        comps = neg_components([list(c) for c in self.comps], self.modulus)
        return LaurentSeries._build(self.spec, self.v, comps, self.N, self.label, self.prec)

    def __sub__(self, other) -> "LaurentSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentSeries":
        return self._coerce(other) + (-self)

    def scale(self, c: Scalar) -> "LaurentSeries":
        c = self.spec.element(c)
        m = self.modulus
        if self.spec.d == 1:
            k = c.coords[0]
            return LaurentSeries._build(self.spec, self.v, [[x * k for x in self.comps[0]]],
                                        self.N, self.label, self.prec)
        return self.map_columns(lambda n, col: self.spec.mul(col, c.coords, m))

    def _times(self, other: "LaurentSeries") -> "LaurentSeries":
        a = self.strip()
        b = other.strip()
        prec = min(a.prec, b.prec)
        va = a.valuation()
        vb = b.valuation()
        if va is None or vb is None:
            ea = a.N if va is None else va
            eb = b.N if vb is None else vb
            order = min(a.N + eb, b.N + ea)
            return LaurentSeries.zero(self.spec, order, self.label, v=order).with_prec(prec)
        length = min(a.length, b.length)
        comps = mul_components(self.spec, [list(c) for c in a.comps], [list(c) for c in b.comps],
                               length, self.spec.p ** prec)
        v = a.v + b.v
        return LaurentSeries._build(self.spec, v, comps, v + length, self.label, prec)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            self._check_compatible(other)
            return self._times(other)
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        a = self.strip()
        if not a.is_unit_led():
            raise NotUnitError("series with non-unit leading coefficient is not invertible")
        comps = inverse_components(self.spec, [list(c) for c in a.comps], a.length, a.modulus)
        return LaurentSeries._build(self.spec, -a.v, comps, -a.v + a.length, self.label, a.prec)

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(self.spec.element(other).inverse())
        return NotImplemented

    def __rtruediv__(self, other) -> "LaurentSeries":
        return self.inverse().scale(other)

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.inverse() ** (-n)
        base = self.strip()
        if n == 0:
            return LaurentSeries.one(self.spec, max(base.length, 1), self.label).with_prec(self.prec)
        result = None
        while n:
            if n & 1:
                result = base if result is None else result._times(base)
            n >>= 1
            if n:
                base = base._times(base)
        return result

    # -- coefficientwise operators ---------------------------------------------------

    def derivative(self) -> "LaurentSeries":
        """d/dq; exact."""
        cols = [self.spec.scale(n, self.column(n), self.modulus) for n in range(self.v, self.N)]
        comps = [[col[k] for col in cols] for k in range(self.spec.d)]
        return LaurentSeries._build(self.spec, self.v - 1, comps, self.N - 1, self.label, self.prec)

    def theta(self) -> "LaurentSeries":
        """q d/dq; exact."""
        return self.map_columns(lambda n, col: self.spec.scale(n, col, self.modulus))

    def frobenius(self) -> "LaurentSeries":
        """Apply the Frobenius of the coefficient ring to every coefficient."""
        return self.map_columns(lambda n, col: self.spec.frobenius_coords(col, self.modulus))

    def __repr__(self) -> str:
        shown = []
        for n in range(self.v, min(self.N, self.v + 6)):
            col = self.column(n)
            if any(col):
                c = col[0] if self.spec.d == 1 else list(col)
                shown.append(f"{c}*{self.label}^{n}")
        return f"LaurentSeries({' + '.join(shown) or '0'} + O({self.label}^{self.N}), p^{self.prec})"


# -- composition ---------------------------------------------------------------------


def polyval(coeffs: Sequence[Scalar], x: LaurentSeries) -> LaurentSeries:
    """Horner evaluation of sum(coeffs[i] * x^i) at a series."""
    if not coeffs:
        return LaurentSeries.zero(x.spec, x.N, x.label)
    acc = LaurentSeries.constant(x.spec, coeffs[-1], x.N, x.label)
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def compose(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """f(g) for v(g) >= 1.

    With w = v(g) the result is known to order ``min(w*N_f, w*v_f + N_g - w)``
    (``N_g`` when f starts at q^0); negative powers of f use the inverse of g.
    """
    f._check_compatible(g)
    w = g.valuation()
    if w is None or w < 1:
        raise SeriesError(f"inner series must have positive valuation, got {w}")
    g = g.strip()
    vf = f.valuation()
    if vf is None:
        order = w * f.N
        return LaurentSeries.zero(f.spec, order, g.label, v=order).with_prec(min(f.prec, g.prec))
    F = f.strip().shift(-vf)
    other = g.N if vf == 0 else w * vf + g.N - w
    order = min(w * f.N, other)
    inner_order = order - w * vf
    top = min(F.length - 1, max(-(-inner_order // w) - 1, 0))
    g_inner = g.truncate(max(inner_order, g.v + 1))
    acc = LaurentSeries.constant(f.spec, F.coefficient(top), inner_order, g.label)
    for i in range(top - 1, -1, -1):
        acc = (acc * g_inner + F.coefficient(i)).truncate(inner_order)
    if vf > 0:
        acc = acc * g ** vf
    elif vf < 0:
        acc = acc * g.inverse() ** (-vf)
    acc = acc.truncate(order)
    return acc.with_prec(min(acc.prec, f.prec, g.prec))


def reversion(f: LaurentSeries) -> LaurentSeries:
    """Compositional inverse g of f (v(f) = 1, unit leading coefficient): f(g) = q."""
    if f.valuation() != 1 or not f.is_unit_led():
        raise SeriesError("reversion needs v(f) = 1 with a unit leading coefficient")
    spec = f.spec
    N = f.N
    q = LaurentSeries.variable(spec, N, f.label)
    g = LaurentSeries.monomial(spec, f.coefficient(1).inverse(), 1, min(N, 2), f.label)
    df = f.derivative()
    cur = 2
    while cur < N:
        cur = min(2 * cur, N)
        g_cur = g.lower_to(1)
        g_cur = LaurentSeries.from_coefficients(
            spec, [g_cur.coefficient(n) if n < g_cur.N else 0 for n in range(1, cur)], v=1, N=cur,
            label=f.label, prec=f.prec,
        )
        num = compose(f.truncate(cur), g_cur) - q.truncate(cur)
        den = compose(df.truncate(cur - 1), g_cur)
        g = (g_cur - num * den.inverse()).truncate(cur)
    return g.truncate(N)


def power_substitute(f: LaurentSeries, k: int, label: str | None = None) -> LaurentSeries:
    """f(q^k); order becomes k*N."""
    if k < 1:
        raise SeriesError(f"power_substitute needs k >= 1, got {k}")
    if k == 1:
        return f if label is None else f.relabel(label)
    length = k * f.N - k * f.v
    comps = []
    for c in f.comps:
        out = [0] * length
        for i, x in enumerate(c):
            out[i * k] = x
        comps.append(tuple(out))
    return LaurentSeries(f.spec, k * f.v, tuple(comps), k * f.N, label or f.label, f.prec)


def rescale_root(f: LaurentSeries, r: int, collapse: bool = False, label: str | None = None) -> LaurentSeries:
    """Move between q and q_i = q^(1/r).

    Without ``collapse`` a series in q is re-expressed in q_i (exponents times r).
    With ``collapse`` a series in q_i whose exponents are multiples of r is read
    back as a series in q.
    """
    if r < 1:
        raise SeriesError(f"rescale_root needs r >= 1, got {r}")
    if not collapse:
        return power_substitute(f, r, label or f"{f.label}_i")
    v = -(-f.v // r)
    N = -(-f.N // r)
    cols = []
    for n in range(f.v, f.N):
        col = f.column(n)
        if n % r:
            if any(col):
                raise SeriesError(f"exponent {n} is not divisible by {r}")
            continue
        cols.append(col)
    return LaurentSeries.from_coefficients(f.spec, cols, v=v, N=N, label=label or f.label, prec=f.prec)
