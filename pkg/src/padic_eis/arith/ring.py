"""Unramified coefficient rings W(F_{p^d}) / p^M.

A ring is represented as ``Z/p^M[y]/(F)`` where ``F`` is the minimal polynomial
of a Teichmüller root of unity ``y``. With that choice the Frobenius lift is
``sigma(y) = y^p`` exactly, so its matrix on the power basis is obtained by
powering the generator.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Union

from sympy import factorint, isprime
from sympy.ntheory import multiplicity, nthroot_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from padic_eis.utils.errors import ExtensionRequired, NotUnitError, RingError

log = logging.getLogger(__name__)

Coords = tuple[int, ...]


def vp(n: int, p: int) -> Union[int, float]:
    """p-adic valuation of an integer; ``math.inf`` for zero."""
    if n == 0:
        return math.inf
    return int(multiplicity(p, abs(n)))


@dataclass(frozen=True)
class RingSpec:
    p: int
    d: int
    M: int
    minpoly: Coords  # monic, low to high, length d + 1
    frobenius_matrix: tuple[Coords, ...] = ()  # column j holds the coords of sigma(y^j)

    @cached_property
    def modulus(self) -> int:
        return self.p ** self.M

    @cached_property
    def order(self) -> int:
        """Order of the multiplicative group of the residue field."""
        return self.p ** self.d - 1

    @property
    def zero(self) -> Coords:
        return (0,) * self.d

    @property
    def one(self) -> Coords:
        return (1,) + (0,) * (self.d - 1)

    @property
    def generator(self) -> Coords:
        if self.d == 1:
            return (0,)
        return (0, 1) + (0,) * (self.d - 2)

    # -- coordinate arithmetic -------------------------------------------------

    def reduce(self, coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        return tuple(int(c) % m for c in coords)

    def add(self, a: Coords, b: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a: Coords, b: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        return tuple((-x) % m for x in a)

    def fold(self, w: list[int], modulus: int | None = None) -> Coords:
        """Reduce a polynomial in y of degree < 2d - 1 modulo the minimal polynomial."""
        m = modulus or self.modulus
        d = self.d
        mp = self.minpoly
        for e in range(len(w) - 1, d - 1, -1):
            c = w[e]
            if c:
                for k in range(d):
                    w[e - d + k] -= c * mp[k]
        return tuple(x % m for x in w[:d])

    def mul(self, a: Coords, b: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        if self.d == 1:
            return ((a[0] * b[0]) % m,)
        w = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    w[i + j] += x * y
        return self.fold(w, m)

    def scale(self, c: int, a: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        return tuple((c * x) % m for x in a)

    def power(self, a: Coords, n: int, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        if n < 0:
            return self.power(self.inverse(a, m), -n, m)
        result = tuple(x % m for x in self.one)
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base, m)
            n >>= 1
            if n:
                base = self.mul(base, base, m)
        return result

    def is_unit(self, a: Coords) -> bool:
        return any(x % self.p for x in a)

    def inverse(self, a: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        if not self.is_unit(a):
            raise NotUnitError(f"{a} is not a unit in {self.label()}")
        if self.d == 1:
            return (pow(a[0], -1, m),)
        x = self.power(a, self.order - 1, self.p)
        digits = 1
        while digits < self.M:
            digits *= 2
            ax = self.mul(a, x, m)
            two_minus = self.neg(ax, m)
            two_minus = ((two_minus[0] + 2) % m,) + two_minus[1:]
            x = self.mul(x, two_minus, m)
        return x

    def frobenius_coords(self, a: Coords, modulus: int | None = None) -> Coords:
        m = modulus or self.modulus
        if self.d == 1:
            return tuple(x % m for x in a)
        out = [0] * self.d
        for j, x in enumerate(a):
            if x:
                col = self.frobenius_matrix[j]
                for i in range(self.d):
                    out[i] += x * col[i]
        return tuple(c % m for c in out)

    def teichmuller_coords(self, a: Coords) -> Coords:
        """Teichmüller representative of the residue class of ``a``."""
        if not self.is_unit(a):
            return self.zero
        x = a
        q = self.p ** self.d
        for _ in range(self.M):
            x = self.power(x, q)
        return x

    # -- elements ----------------------------------------------------------------

    def from_int(self, n: int) -> Coords:
        return (n % self.modulus,) + (0,) * (self.d - 1)

    def from_rational(self, value: Fraction) -> Coords:
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise RingError(f"{value} is not p-integral for p={self.p}")
        num = value.numerator * pow(value.denominator, -1, self.modulus)
        return self.from_int(num)

    def element(self, value: "Scalar") -> "RingElem":
        if isinstance(value, RingElem):
            other = value.spec
            if other.p == self.p and other.d == self.d and other.minpoly == self.minpoly:
                return RingElem(self, self.reduce(value.coords))
            if other.p == self.p and other.d == 1:
                return RingElem(self, self.from_int(value.coords[0]))
            raise RingError(f"element of {other.label()} does not embed into {self.label()}")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return RingElem(self, self.from_int(value))
        if isinstance(value, Fraction):
            return RingElem(self, self.from_rational(value))
        if isinstance(value, (tuple, list)):
            if len(value) != self.d:
                raise RingError(f"expected {self.d} coordinates, got {len(value)}")
            return RingElem(self, self.reduce(value))
        raise RingError(f"cannot coerce {type(value).__name__} into {self.label()}")

    def label(self) -> str:
        return f"W(F_{self.p}^{self.d})/{self.p}^{self.M}"


Scalar = Union[int, Fraction, "RingElem", tuple, list]


@dataclass(frozen=True, eq=False)
class RingElem:
    spec: RingSpec
    coords: Coords

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.spec is not self.spec and other.spec != self.spec:
                raise RingError("mismatched rings")
            return other
        return self.spec.element(other)

    def __add__(self, other):
        if not isinstance(other, (RingElem, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return RingElem(self.spec, self.spec.add(self.coords, o.coords))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (RingElem, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return RingElem(self.spec, self.spec.sub(self.coords, o.coords))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self._coerce(other) - self

    def __neg__(self):
        return RingElem(self.spec, self.spec.neg(self.coords))

    def __mul__(self, other):
        if isinstance(other, (RingElem, int, Fraction)):
            o = self._coerce(other)
            return RingElem(self.spec, self.spec.mul(self.coords, o.coords))
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        return RingElem(self.spec, self.spec.power(self.coords, n))

    def inverse(self) -> "RingElem":
        return RingElem(self.spec, self.spec.inverse(self.coords))

    def __truediv__(self, other):
        if not isinstance(other, (RingElem, int, Fraction)):
            return NotImplemented
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self._coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RingElem)):
            try:
                o = self._coerce(other)
            except RingError:
                return False
            return self.coords == o.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.d, self.spec.M, self.coords))

    def __int__(self) -> int:
        if any(self.coords[1:]):
            raise RingError("element is not in Z/p^M")
        return self.coords[0]

    def is_unit(self) -> bool:
        return self.spec.is_unit(self.coords)

    def residue(self) -> Coords:
        return tuple(c % self.spec.p for c in self.coords)

    def signed(self) -> tuple[int, ...]:
        """Coordinates as balanced representatives in (-p^M/2, p^M/2]."""
        m = self.spec.modulus
        return tuple(c - m if c > m // 2 else c for c in self.coords)

    def __repr__(self) -> str:
        if self.spec.d == 1:
            return f"RingElem({self.coords[0]} mod {self.spec.p}^{self.spec.M})"
        return f"RingElem({list(self.coords)} in {self.spec.label()})"


# -- construction ----------------------------------------------------------------


def _least_irreducible(p: int, d: int) -> Coords:
    for tail in product(range(p), repeat=d):
        poly = [ZZ(1)] + [ZZ(c) for c in tail]
        if tail[-1] and gf_irreducible_p(poly, p, ZZ):
            return tuple(int(c) for c in reversed(poly))
    raise RingError(f"no irreducible polynomial of degree {d} over F_{p}")


def _poly_times_linear(spec: RingSpec, poly: list[Coords], root: Coords) -> list[Coords]:
    """Multiply a polynomial with ring coefficients by (X - root)."""
    out = [spec.zero] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = spec.add(out[i + 1], c)
        out[i] = spec.sub(out[i], spec.mul(c, root))
    return out


def _teichmuller_minpoly(draft: RingSpec) -> Coords:
    tau = draft.teichmuller_coords(draft.generator)
    poly: list[Coords] = [draft.one]
    conj = tau
    for _ in range(draft.d):
        poly = _poly_times_linear(draft, poly, conj)
        conj = draft.power(conj, draft.p)
    coeffs = []
    for c in poly:
        if any(c[1:]):
            raise RingError("Teichmüller minimal polynomial has non-integral coefficients")
        coeffs.append(c[0])
    return tuple(coeffs)


def _verify(spec: RingSpec) -> None:
    poly = [ZZ(c % spec.p) for c in reversed(spec.minpoly)]
    if not gf_irreducible_p(poly, spec.p, ZZ):
        raise RingError(f"minimal polynomial {spec.minpoly} is reducible mod {spec.p}")
    x = spec.generator
    for _ in range(spec.d):
        x = spec.frobenius_coords(x)
    if x != spec.generator:
        raise RingError("Frobenius does not have order d on the generator")


@lru_cache(maxsize=None)
def make_ring(p: int, d: int = 1, M: int = 1) -> RingSpec:
    """Build the coefficient ring W(F_{p^d}) / p^M."""
    if not isinstance(p, int) or not isprime(p) or p < 5:
        raise RingError(f"p must be a prime >= 5, got {p}")
    if d < 1 or M < 1:
        raise RingError(f"need d >= 1 and M >= 1, got d={d}, M={M}")
    if d == 1:
        return RingSpec(p, 1, M, (0, 1), ((1,),))
    draft = RingSpec(p, d, M, _least_irreducible(p, d))
    minpoly = _teichmuller_minpoly(draft)
    bare = RingSpec(p, d, M, minpoly)
    frob = tuple(bare.power(bare.generator, p * j) for j in range(d))
    spec = RingSpec(p, d, M, minpoly, frob)
    _verify(spec)
    log.debug("built %s with minpoly %s", spec.label(), minpoly)
    return spec


def residue_field(spec: RingSpec) -> RingSpec:
    """The residue field F_{p^d} in the same coordinates as ``spec``."""
    return make_ring(spec.p, spec.d, 1)


# -- Teichmüller roots -------------------------------------------------------------


def _element_order(field: RingSpec, a: Coords) -> int:
    n = field.order
    order = n
    for ell in factorint(n):
        while order % ell == 0 and field.power(a, order // ell) == field.one:
            order //= ell
    return order


@lru_cache(maxsize=None)
def primitive_element(field: RingSpec) -> Coords:
    """Least generator (in coordinate order) of the multiplicative group of a residue field."""
    for coords in product(range(field.p), repeat=field.d):
        if any(coords) and _element_order(field, coords) == field.order:
            return coords
    raise RingError(f"no primitive element in {field.label()}")


@lru_cache(maxsize=None)
def teichmuller_root(spec: RingSpec, m: int) -> RingElem:
    """Canonical primitive m-th root of unity: the least residue root, Hensel-lifted."""
    if m < 1 or spec.order % m:
        raise RingError(f"{m} does not divide {spec.p}^{spec.d} - 1")
    if m == 1:
        return RingElem(spec, spec.one)
    field = residue_field(spec)
    g = primitive_element(field)
    h = field.power(g, field.order // m)
    candidates = [field.power(h, k) for k in range(1, m + 1) if math.gcd(k, m) == 1]
    least = min(candidates)
    zeta = RingElem(spec, spec.teichmuller_coords(least))
    if zeta ** m != 1:
        raise RingError(f"Teichmüller lift of {least} is not an {m}-th root of unity")
    return zeta


def frobenius(spec: RingSpec, x: Scalar) -> RingElem:
    x = spec.element(x)
    return RingElem(spec, spec.frobenius_coords(x.coords))


def valuation(x: RingElem) -> Union[int, float]:
    """p-adic valuation; ``math.inf`` stands for "at least M"."""
    vals = [vp(c, x.spec.p) for c in x.coords if c]
    return min(vals) if vals else math.inf


def divides_k_squared(a: RingElem, k: int) -> bool | None:
    """Whether k^2 divides ``a``; ``None`` when precision cannot decide."""
    need = 2 * vp(k, a.spec.p)
    v = valuation(a)
    if v >= need:
        return True if v != math.inf or need <= a.spec.M else None
    return False


# -- roots ---------------------------------------------------------------------------


def _discrete_log(field: RingSpec, g: Coords, a: Coords) -> int:
    n = field.order
    step = math.isqrt(n) + 1
    table: dict[Coords, int] = {}
    cur = field.one
    for j in range(step):
        table.setdefault(cur, j)
        cur = field.mul(cur, g)
    giant = field.power(g, -step)
    gamma = a
    for i in range(step + 1):
        if gamma in table:
            return (i * step + table[gamma]) % n
        gamma = field.mul(gamma, giant)
    raise RingError("discrete logarithm not found")


def residue_roots(field: RingSpec, a: Coords, n: int) -> list[Coords]:
    """All n-th roots of ``a`` in the residue field, sorted."""
    if field.d == 1:
        roots = nthroot_mod(a[0] % field.p, n, field.p, all_roots=True) or []
        return sorted((int(r),) for r in roots)
    g = primitive_element(field)
    e = _discrete_log(field, g, a)
    order = field.order
    common = math.gcd(n, order)
    if e % common:
        return []
    base = (e // common) * pow(n // common, -1, order // common) % (order // common)
    x0 = field.power(g, base)
    omega = field.power(g, order // common)
    roots = []
    cur = x0
    for _ in range(common):
        roots.append(cur)
        cur = field.mul(cur, omega)
    return sorted(roots)


def minimal_root_degree(p: int, d: int, a: Coords, n: int, limit: int = 64) -> int:
    """Smallest multiple of d over whose residue field ``a`` acquires an n-th root."""
    field = make_ring(p, d, 1)
    order = _element_order(field, tuple(c % p for c in a))
    for j in range(1, limit + 1):
        q = p ** (d * j) - 1
        if (q // math.gcd(n, q)) % order == 0:
            return d * j
    raise RingError(f"no root of degree {n} within residue degree {d * limit}")


def nth_root(spec: RingSpec, a: Scalar, n: int, residue_choice: Scalar | None = None) -> RingElem:
    """Hensel lift of an n-th root of the unit ``a``."""
    a = spec.element(a)
    if n < 1 or n % spec.p == 0:
        raise RingError(f"root degree {n} must be positive and prime to p={spec.p}")
    if not a.is_unit():
        raise NotUnitError(f"{a} is not a unit")
    field = residue_field(spec)
    roots = residue_roots(field, a.residue(), n)
    if not roots:
        needed = minimal_root_degree(spec.p, spec.d, a.residue(), n)
        raise ExtensionRequired(
            f"no {n}-th root of {a} in the residue field of degree {spec.d}", minimal_degree=needed
        )
    if residue_choice is None:
        start = roots[0]
    else:
        start = tuple(c % spec.p for c in spec.element(residue_choice).coords)
        if start not in roots:
            raise RingError(f"residue choice {start} is not an {n}-th root of {a.residue()}")
    x = RingElem(spec, spec.reduce(start))
    for _ in range(spec.M.bit_length() + 1):
        x = x - (x ** n - a) / (n * x ** (n - 1))
    if x ** n != a:
        raise RingError("Newton iteration for the root did not converge")
    return x
