"""Lambert decomposition of a Laurent series over W(F_{p^d}).

Every f in R((q)) can be written uniquely as

    f = sum_{j <= 0} b_j q^j + sum_{j >= 1} sum_i a_ij zeta_i q^j / (1 - zeta_i q^j)

with a_ij in Z_p and b_j in R, for a Z_p-basis zeta_1..zeta_d of R made of
roots of unity. Expanding the geometric series, the coefficient of q^n is
b_n (n <= 0) or sum_{j | n} sum_i a_ij zeta_i^(n/j).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from padic_eis.arith.ring import Coords, RingElem, RingSpec, teichmuller_root
from padic_eis.eis.linalg import inverse_mod_pk
from padic_eis.series.laurent import LaurentSeries
from padic_eis.utils.errors import RingError, SeriesError

log = logging.getLogger(__name__)


def default_basis(spec: RingSpec, exponent: int = 1) -> tuple[RingElem, ...]:
    """Power basis 1, z, ..., z^(d-1) of z = tau^exponent, tau the canonical primitive (p^d - 1)-th root."""
    if math.gcd(exponent, spec.order) != 1:
        raise RingError(f"exponent {exponent} is not prime to {spec.order}")
    z = teichmuller_root(spec, spec.order) ** exponent
    return tuple(z ** i for i in range(spec.d))


@dataclass(frozen=True, eq=False)
class LambertDecomposition:
    spec: RingSpec
    basis: tuple[RingElem, ...]
    principal: dict[int, Coords]
    # table[i][j - 1] = a_{i+1, j} modulo p^prec
    table: tuple[tuple[int, ...], ...]
    N: int
    prec: int
    label: str = "q"
    _inverse: list[list[int]] = field(default_factory=list, repr=False)

    def a(self, i: int, j: int) -> int:
        """a_ij with the basis index i starting at 1."""
        if not 1 <= j < self.N:
            raise SeriesError(f"a_(i, {j}) is outside the decomposition range 1..{self.N - 1}")
        return self.table[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.a(i, j) for i in range(1, self.spec.d + 1))

    def b(self, j: int) -> RingElem:
        return RingElem(self.spec, self.principal.get(j, self.spec.zero))

    def b0_coordinates(self) -> tuple[int, ...]:
        """b_0 in the zeta-basis."""
        return _solve(self._inverse, self.principal.get(0, self.spec.zero), self.spec.p ** self.prec)

    def signed_table(self) -> list[list[int]]:
        m = self.spec.p ** self.prec
        return [[x - m if x > m // 2 else x for x in row] for row in self.table]


def _basis_matrix(spec: RingSpec, basis, prec: int) -> list[list[int]]:
    m = spec.p ** prec
    # column i holds the coordinates of zeta_i
    return [[basis[i].coords[k] % m for i in range(spec.d)] for k in range(spec.d)]


def _solve(inverse: list[list[int]], coords: Coords, m: int) -> tuple[int, ...]:
    return tuple(sum(x * c for x, c in zip(row, coords)) % m for row in inverse)


def _power_table(spec: RingSpec, basis, top: int, m: int) -> list[list[Coords]]:
    """zeta_i^k for 0 <= k <= top."""
    out = []
    for z in basis:
        cur = tuple(x % m for x in spec.one)
        row = [cur]
        for _ in range(top):
            cur = spec.mul(cur, z.coords, m)
            row.append(cur)
        out.append(row)
    return out


def lambert_decompose(f: LaurentSeries, basis: tuple[RingElem, ...] | None = None) -> LambertDecomposition:
    spec = f.spec
    basis = default_basis(spec) if basis is None else tuple(spec.element(z) for z in basis)
    if len(basis) != spec.d:
        raise RingError(f"a basis of {spec.label()} needs {spec.d} elements, got {len(basis)}")
    prec = f.prec
    p = spec.p
    m = p ** prec
    inverse = inverse_mod_pk(_basis_matrix(spec, basis, prec), p, prec)
    principal = {j: spec.reduce(f.column(j), m) for j in range(f.v, min(1, f.N)) if any(x % m for x in f.column(j))}
    N = f.N
    residual = [spec.reduce(f.column(n), m) if n >= f.v else spec.zero for n in range(max(N, 1))]
    powers = _power_table(spec, basis, max(N - 1, 0), m)
    table = [[0] * max(N - 1, 0) for _ in range(spec.d)]
    for j in range(1, N):
        a = _solve(inverse, residual[j], m)
        for i, x in enumerate(a):
            table[i][j - 1] = x
        if not any(a):
            continue
        for k in range(2, (N - 1) // j + 1):
            n = j * k
            acc = list(residual[n])
            for i, x in enumerate(a):
                if x:
                    z = powers[i][k]
                    for c in range(spec.d):
                        acc[c] -= x * z[c]
            residual[n] = tuple(c % m for c in acc)
    log.debug("Lambert decomposition to order %d over %s", N, spec.label())
    return LambertDecomposition(
        spec, basis, principal, tuple(tuple(row) for row in table), N, prec, f.label, inverse
    )


def resum(dec: LambertDecomposition) -> LaurentSeries:
    """The series whose Lambert decomposition is ``dec``."""
    spec = dec.spec
    m = spec.p ** dec.prec
    N = dec.N
    lo = min([0] + list(dec.principal))
    cols = [[0] * spec.d for _ in range(N - lo)]
    for j, coords in dec.principal.items():
        for c in range(spec.d):
            cols[j - lo][c] += coords[c]
    powers = _power_table(spec, dec.basis, max(N - 1, 0), m)
    for j in range(1, N):
        a = [dec.table[i][j - 1] for i in range(spec.d)]
        if not any(a):
            continue
        for k in range(1, (N - 1) // j + 1):
            col = cols[j * k - lo]
            for i, x in enumerate(a):
                if x:
                    z = powers[i][k]
                    for c in range(spec.d):
                        col[c] += x * z[c]
    return LaurentSeries.from_coefficients(
        spec, [tuple(c % m for c in col) for col in cols], v=lo, N=N, label=dec.label, prec=dec.prec
    )


def decomposition_from_table(
    spec: RingSpec,
    table,
    N: int,
    basis: tuple[RingElem, ...] | None = None,
    principal: dict[int, object] | None = None,
    label: str = "q",
) -> LambertDecomposition:
    """Build a decomposition from explicit a_ij (``table[i][j - 1]``) and b_j values."""
    basis = default_basis(spec) if basis is None else tuple(spec.element(z) for z in basis)
    m = spec.modulus
    rows = []
    for i in range(spec.d):
        row = list(table[i]) if i < len(table) else []
        row = [int(x) % m for x in row[: N - 1]] + [0] * max(N - 1 - len(row), 0)
        rows.append(tuple(row))
    prin = {j: spec.element(b).coords for j, b in (principal or {}).items() if j <= 0}
    inverse = inverse_mod_pk(_basis_matrix(spec, basis, spec.M), spec.p, spec.M)
    return LambertDecomposition(spec, basis, prin, tuple(rows), N, spec.M, label, inverse)
