"""Series in q whose coefficients are Laurent polynomials in u over (1 - u)^e.

Row ``n`` of a ``TwoVarSeries`` is a pair ``(e, P)`` standing for
``q^n * P(u) / (1 - u)^e`` with ``P`` a sparse Laurent polynomial (u-exponent ->
coefficient mod p^M). Rows are kept in normal form: ``P(1) != 0`` whenever
``e > 0``, and the zero row is ``(0, {})``.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from sympy import divisors

from padic_eis.arith.ring import RingElem, RingSpec, make_ring
from padic_eis.series.cache import cached
from padic_eis.series.laurent import LaurentSeries, polyval
from padic_eis.utils.errors import SchemaError, SeriesError

log = logging.getLogger(__name__)

Poly = dict[int, int]
Row = tuple[int, Poly]


def _clean(p: Mapping[int, int], m: int) -> Poly:
    return {k: c % m for k, c in p.items() if c % m}


def _poly_add(a: Poly, b: Poly, m: int) -> Poly:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return _clean(out, m)


def _poly_mul(a: Poly, b: Poly, m: int) -> Poly:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return _clean(out, m)


def _times_one_minus_u(a: Poly, k: int, m: int) -> Poly:
    for _ in range(k):
        out = dict(a)
        for e, c in a.items():
            out[e + 1] = out.get(e + 1, 0) - c
        a = _clean(out, m)
    return a


def _div_one_minus_u(a: Poly, m: int) -> Poly | None:
    """a / (1 - u) when a(1) = 0, else None."""
    if not a or sum(a.values()) % m:
        return None
    lo, hi = min(a), max(a)
    out: dict[int, int] = {}
    acc = 0
    for k in range(lo, hi):
        acc = (acc + a.get(k, 0)) % m
        if acc:
            out[k] = acc
    return out


def _normalize(row: Row, m: int) -> Row:
    e, poly = row
    poly = _clean(poly, m)
    if not poly:
        return (0, {})
    while e > 0:
        reduced = _div_one_minus_u(poly, m)
        if reduced is None:
            break
        poly, e = reduced, e - 1
    return (e, poly)


def _row_add(a: Row, b: Row, m: int) -> Row:
    ea, pa = a
    eb, pb = b
    e = max(ea, eb)
    pa = _times_one_minus_u(pa, e - ea, m)
    pb = _times_one_minus_u(pb, e - eb, m)
    return (e, _poly_add(pa, pb, m))


def _coerce_int(spec: RingSpec, c) -> int:
    return int(spec.element(c))


@dataclass(frozen=True, eq=False)
class TwoVarSeries:
    spec: RingSpec
    rows: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    label: str = "q"

    def __post_init__(self):
        if self.spec.d != 1:
            raise SeriesError("two-variable series are implemented over Z/p^M only")

    # -- construction -----------------------------------------------------------

    @classmethod
    def from_rows(cls, spec: RingSpec, rows: Iterable[Row], label: str = "q") -> "TwoVarSeries":
        m = spec.modulus
        frozen = []
        for row in rows:
            e, poly = _normalize(row, m)
            frozen.append((e, tuple(sorted(poly.items()))))
        return cls(spec, tuple(frozen), label)

    @classmethod
    def zero(cls, spec: RingSpec, N: int, label: str = "q") -> "TwoVarSeries":
        return cls.from_rows(spec, [(0, {})] * N, label)

    @classmethod
    def monomial(cls, spec: RingSpec, c, n: int, k: int, N: int, e: int = 0, label: str = "q") -> "TwoVarSeries":
        """c q^n u^k / (1 - u)^e."""
        rows: list[Row] = [(0, {})] * N
        if 0 <= n < N:
            rows[n] = (e, {k: _coerce_int(spec, c)})
        return cls.from_rows(spec, rows, label)

    @classmethod
    def constant(cls, spec: RingSpec, c, N: int, label: str = "q") -> "TwoVarSeries":
        return cls.monomial(spec, c, 0, 0, N, label=label)

    @classmethod
    def from_series(cls, f: LaurentSeries) -> "TwoVarSeries":
        """A power series in q with no u-dependence."""
        w = f.valuation()
        if w is not None and w < 0:
            raise SeriesError("from_series needs a power series")
        rows = [(0, {0: f.column(n)[0]}) for n in range(max(f.N, 0))]
        return cls.from_rows(f.spec, rows, f.label)

    # -- inspection -------------------------------------------------------------------

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def modulus(self) -> int:
        return self.spec.modulus

    def row(self, n: int) -> Row:
        e, items = self.rows[n]
        return e, dict(items)

    def _rows(self) -> list[Row]:
        return [self.row(n) for n in range(self.N)]

    def is_zero(self) -> bool:
        return all(not items for _, items in self.rows)

    def truncate(self, N: int) -> "TwoVarSeries":
        if N >= self.N:
            return self
        return TwoVarSeries(self.spec, self.rows[:N], self.label)

    def agrees_with(self, other: "TwoVarSeries") -> bool:
        n = min(self.N, other.N)
        return self.truncate(n).rows == other.truncate(n).rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoVarSeries):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    def min_u_degree(self) -> int:
        return min((k for _, items in self.rows for k, _ in items), default=0)

    def max_u_degree(self) -> int:
        return max((k for _, items in self.rows for k, _ in items), default=0)

    # -- arithmetic ---------------------------------------------------------------------

    def _coerce(self, other) -> "TwoVarSeries":
        if isinstance(other, TwoVarSeries):
            if other.spec != self.spec:
                raise SeriesError("mismatched coefficient rings")
            return other
        if isinstance(other, LaurentSeries):
            return TwoVarSeries.from_series(other)
        if isinstance(other, (int, Fraction, RingElem)):
            return TwoVarSeries.constant(self.spec, other, self.N, self.label)
        raise TypeError(f"cannot combine TwoVarSeries with {type(other).__name__}")

    def __add__(self, other) -> "TwoVarSeries":
        o = self._coerce(other)
        m = self.modulus
        N = min(self.N, o.N)
        rows = [_row_add(self.row(n), o.row(n), m) for n in range(N)]
        return TwoVarSeries.from_rows(self.spec, rows, self.label)

    __radd__ = __add__

    def __neg__(self) -> "TwoVarSeries":
        return self.scale(-1)

    def __sub__(self, other) -> "TwoVarSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TwoVarSeries":
        return self._coerce(other) - self

    def scale(self, c) -> "TwoVarSeries":
        k = _coerce_int(self.spec, c)
        rows = [(e, {u: x * k for u, x in poly.items()}) for e, poly in self._rows()]
        return TwoVarSeries.from_rows(self.spec, rows, self.label)

    def __mul__(self, other) -> "TwoVarSeries":
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        o = self._coerce(other)
        m = self.modulus
        N = min(self.N, o.N)
        a = self._rows()
        b = o._rows()
        out: list[Row] = []
        for n in range(N):
            acc: Row = (0, {})
            for i in range(n + 1):
                ea, pa = a[i]
                eb, pb = b[n - i]
                if pa and pb:
                    acc = _row_add(acc, (ea + eb, _poly_mul(pa, pb, m)), m)
            out.append(acc)
        return TwoVarSeries.from_rows(self.spec, out, self.label)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TwoVarSeries":
        if n < 0:
            raise SeriesError("negative powers of two-variable series are not supported")
        result = TwoVarSeries.constant(self.spec, 1, self.N, self.label)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- substitutions ----------------------------------------------------------------

    def shift_u(self, k: int) -> "TwoVarSeries":
        """Multiply by u^k."""
        rows = [(e, {u + k: x for u, x in poly.items()}) for e, poly in self._rows()]
        return TwoVarSeries.from_rows(self.spec, rows, self.label)

    def invert_u(self) -> "TwoVarSeries":
        """u -> 1/u, using 1 - 1/u = -(1 - u)/u."""
        rows = []
        for e, poly in self._rows():
            sign = -1 if e % 2 else 1
            rows.append((e, {e - u: sign * x for u, x in poly.items()}))
        return TwoVarSeries.from_rows(self.spec, rows, self.label)

    def scale_u(self, s: int, alpha=1, order: int | None = None) -> "TwoVarSeries":
        """u -> alpha * q^s * u on a series without (1 - u) denominators.

        The default order assumes the u-degree range widens by at most one from
        the last known row to the first unknown one, which holds for products of
        theta series.
        """
        if s == 0 and alpha == 1 and order is None:
            return self
        if any(e for e, _ in self.rows) and (s or alpha != 1):
            raise SeriesError("scale_u needs rows without (1 - u) denominators")
        m = self.modulus
        a = _coerce_int(self.spec, alpha)
        a_inv = pow(a, -1, m) if self.min_u_degree() < 0 else None
        if order is None:
            if s > 0:
                order = self.N - s * (max(0, -self.min_u_degree()) + 1)
            elif s < 0:
                order = self.N + s * (max(0, self.max_u_degree()) + 1)
            else:
                order = self.N
        order = min(order, self.N)
        if order < 0:
            raise SeriesError("scale_u leaves no known coefficients")
        out: list[dict[int, int]] = [dict() for _ in range(order)]
        for n, (_, poly) in enumerate(self._rows()):
            for k, c in poly.items():
                target = n + s * k
                if target >= order:
                    continue
                if target < 0:
                    raise SeriesError(f"scale_u sends q^{n} u^{k} to a negative q-power")
                factor = pow(a, k, m) if k >= 0 else pow(a_inv, -k, m)
                out[target][k] = out[target].get(k, 0) + c * factor
        return TwoVarSeries.from_rows(self.spec, [(0, p) for p in out], self.label)

    def at_zero(self) -> LaurentSeries:
        """The q-series obtained by setting u = 0."""
        cols = []
        for n in range(self.N):
            e, poly = self.row(n)
            if poly and min(poly) < 0:
                raise SeriesError(f"row q^{n} has negative u-powers; u = 0 is not defined")
            cols.append(poly.get(0, 0))
        return LaurentSeries.from_coefficients(self.spec, cols, v=0, N=self.N, label=self.label)

    def evaluate(self, b: LaurentSeries) -> LaurentSeries:
        """Substitute u = b for b in (p, q); the u-powers must be non-negative."""
        if b.valuation() is not None and b.valuation() < 0:
            raise SeriesError("evaluation point must be a power series")
        if b.valuation() == 0 and b.coefficient(0).is_unit():
            raise SeriesError("evaluation point must lie in (p, q)")
        order = min(self.N, b.N)
        total = LaurentSeries.zero(self.spec, order, self.label)
        one_minus_b = None
        for n in range(min(self.N, order)):
            e, poly = self.row(n)
            if not poly:
                continue
            if min(poly) < 0:
                raise SeriesError(f"row q^{n} has negative u-powers")
            coeffs = [poly.get(k, 0) for k in range(max(poly) + 1)]
            term = polyval(coeffs, b.truncate(order - n))
            if e:
                if one_minus_b is None:
                    one_minus_b = (1 - b).truncate(order).inverse()
                term = term * one_minus_b ** e
            total = total + term.shift(n)
        return total.truncate(order)

    def specialize(self, m: int, r: int, order: int, label: str = "q0") -> LaurentSeries:
        """u = q0^m and q = q0^r (m >= 1); the caller states the order it can justify."""
        if m < 1 or r < 1:
            raise SeriesError("specialize needs m >= 1 and r >= 1")
        if order > r * self.N:
            raise SeriesError(f"order {order} exceeds what {self.N} rows can justify")
        by_e: dict[int, dict[int, int]] = {}
        for n in range(self.N):
            e, poly = self.row(n)
            for k, c in poly.items():
                exp = r * n + m * k
                if exp < order:
                    bucket = by_e.setdefault(e, {})
                    bucket[exp] = bucket.get(exp, 0) + c
        if not by_e:
            return LaurentSeries.zero(self.spec, order, label)
        lo = min(0, min(exp for bucket in by_e.values() for exp in bucket))
        total = LaurentSeries.zero(self.spec, order, label, v=lo)
        geo = LaurentSeries.from_dict(self.spec, {0: 1, m: -1}, order - lo, label, v=0).inverse()
        for e, terms in sorted(by_e.items()):
            num = LaurentSeries.from_dict(self.spec, terms, order, label, v=lo)
            total = total + (num * geo ** e if e else num)
        return total.truncate(order)

    # -- serialization -------------------------------------------------------------

    def to_payload(self) -> dict:
        return {
            "label": self.label,
            "p": self.spec.p,
            "M": self.spec.M,
            "N": self.N,
            "rows": [[e, [list(t) for t in items]] for e, items in self.rows],
        }

    def __repr__(self) -> str:
        return f"TwoVarSeries(N={self.N}, p^{self.spec.M}, rows={list(self.rows[:3])}...)"


def tate_xy(spec: RingSpec, N: int) -> tuple[TwoVarSeries, TwoVarSeries]:
    """x(u), y(u) of the Tate curve; the divisor sums start at d = 1."""
    xs: list[Row] = [(2, {1: 1})]
    ys: list[Row] = [(3, {2: 1})]
    for d in range(1, N):
        px: dict[int, int] = {}
        py: dict[int, int] = {}
        for m in divisors(d):
            m = int(m)
            px[m] = px.get(m, 0) + m
            px[-m] = px.get(-m, 0) + m
            px[0] = px.get(0, 0) - 2 * m
            py[m] = py.get(m, 0) + m * (m - 1) // 2
            py[-m] = py.get(-m, 0) - m * (m + 1) // 2
            py[0] = py.get(0, 0) + m
        xs.append((0, px))
        ys.append((0, py))
    return TwoVarSeries.from_rows(spec, xs), TwoVarSeries.from_rows(spec, ys)


def theta_series(spec: RingSpec, N: int) -> TwoVarSeries:
    """(1 - u) prod_{n>=1} (1 - q^n u)(1 - q^n / u) modulo q^N."""
    return cached("theta", spec, N, lambda: _theta_rows(spec, N), encode_twovar, decode_twovar)


def _theta_rows(spec: RingSpec, N: int) -> TwoVarSeries:
    m = spec.modulus
    rows: list[dict[int, int]] = [dict() for _ in range(N)]
    if N:
        rows[0] = {0: 1, 1: m - 1}
    for n in range(1, N):
        for k in (1, -1):
            for i in range(N - 1, n - 1, -1):
                src = rows[i - n]
                if not src:
                    continue
                dst = rows[i]
                for e, c in src.items():
                    dst[e + k] = (dst.get(e + k, 0) - c) % m
    return TwoVarSeries.from_rows(spec, [(0, r) for r in rows])


# -- cache codec ------------------------------------------------------------------------

TWOVAR_CODEC_VERSION = 1


def encode_twovar(f: TwoVarSeries) -> bytes:
    """A JSON header line, then one JSON line ``[e, [[k, c], ...]]`` per q-exponent."""
    header = {
        "p": f.spec.p,
        "d": f.spec.d,
        "M": f.spec.M,
        "N": f.N,
        "label": f.label,
        "kind": "twovar",
        "version": TWOVAR_CODEC_VERSION,
    }
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps([e, [list(term) for term in items]]) for e, items in f.rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def decode_twovar(blob: bytes, spec: RingSpec | None = None) -> TwoVarSeries:
    """Inverse of ``encode_twovar``; raises SchemaError on any inconsistency."""
    try:
        head, *body = blob.decode("utf-8").splitlines()
        header = json.loads(head)
        parsed = [json.loads(line) for line in body]
    except (ValueError, UnicodeDecodeError) as e:
        raise SchemaError(f"unreadable two-variable series: {e}") from e
    if not isinstance(header, dict) or header.get("kind") != "twovar":
        raise SchemaError("not a two-variable series entry")
    if header.get("version") != TWOVAR_CODEC_VERSION:
        raise SchemaError(f"two-variable codec version {header.get('version')} != {TWOVAR_CODEC_VERSION}")
    try:
        p, d, M, N = (int(header[k]) for k in ("p", "d", "M", "N"))
        label = str(header["label"])
        rows = [(int(e), {int(k): int(c) for k, c in items}) for e, items in parsed]
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"incomplete two-variable series: {e}") from e
    if len(rows) != N:
        raise SchemaError(f"expected {N} rows, got {len(rows)}")
    spec = spec or make_ring(p, d, M)
    if (spec.p, spec.d, spec.M) != (p, d, M):
        raise SchemaError(f"series was written for {p}, {d}, {M}, not {spec.label()}")
    return TwoVarSeries.from_rows(spec, rows, label)
