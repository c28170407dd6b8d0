"""Linear algebra over Z/p^E and F_p.

Matrices are lists of integer rows. The Z/p^E routines use exact Python
integers; the F_p routines work on numpy int64 arrays, which is safe for the
primes this package accepts (p^2 fits comfortably in 64 bits).
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from padic_eis.arith.ring import vp
from padic_eis.utils.errors import CongruenceError

log = logging.getLogger(__name__)

Matrix = list[list[int]]


# -- Z/p^E ------------------------------------------------------------------------


def _min_valuation_entry(A: Matrix, start: int, p: int, E: int) -> tuple[int, int, int] | None:
    best = None
    for i in range(start, len(A)):
        row = A[i]
        for j in range(start, len(row)):
            x = row[j]
            if x:
                v = vp(x, p)
                if v < E and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        return best
    return best


def diagonalize(rows: Sequence[Sequence[int]], ncols: int, p: int, E: int) -> tuple[list[int], Matrix]:
    """Reduce ``rows`` over Z/p^E to diagonal form by unimodular row and column moves.

    Pivots are chosen with least p-valuation. Returns the pivot valuations
    ``s_0 <= s_1 <= ...`` and the column transform ``V`` (as a list of columns),
    so that the kernel is spanned by ``p^(E - s_i) V[i]`` and the remaining
    columns of ``V``.
    """
    m = p ** E
    A = [[int(x) % m for x in row] for row in rows]
    for row in A:
        if len(row) != ncols:
            raise CongruenceError(f"row of length {len(row)} in a system with {ncols} unknowns")
    V = [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    vals: list[int] = []
    r = 0
    while r < min(len(A), ncols):
        found = _min_valuation_entry(A, r, p, E)
        if found is None:
            break
        s, i, j = found
        A[r], A[i] = A[i], A[r]
        if j != r:
            for row in A:
                row[r], row[j] = row[j], row[r]
            V[r], V[j] = V[j], V[r]
        unit = (A[r][r] // p ** s) % m
        inv = pow(unit, -1, m)
        A[r] = [(x * inv) % m for x in A[r]]
        ps = p ** s
        for k in range(len(A)):
            if k != r and A[k][r]:
                f = A[k][r] // ps
                A[k] = [(x - f * y) % m for x, y in zip(A[k], A[r])]
        for c in range(r + 1, ncols):
            if A[r][c]:
                g = A[r][c] // ps
                A[r][c] = 0
                V[c] = [(x - g * y) % m for x, y in zip(V[c], V[r])]
        vals.append(s)
        r += 1
    return vals, V


def kernel_mod_pk(rows: Sequence[Sequence[int]], ncols: int, p: int, E: int) -> Matrix:
    """Generators of {x : rows . x == 0 mod p^E}, as integer vectors.

    Together with p^E times the unit vectors they generate the full solution
    lattice in Z_p^ncols.
    """
    if E <= 0 or not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    vals, V = diagonalize(rows, ncols, p, E)
    m = p ** E
    gens = [[(p ** (E - s) * x) % m for x in V[i]] for i, s in enumerate(vals)]
    gens.extend(V[len(vals):])
    log.debug("kernel mod %d^%d: %d pivots, %d generators", p, E, len(vals), len(gens))
    return gens


def solution_lattice(constraints: Sequence[tuple[Sequence[int], int]], ncols: int, p: int) -> Matrix:
    """Generators of {x in Z_p^ncols : c . x == 0 mod p^e for every (c, e)}.

    Each constraint is lifted to the common modulus p^E (E = max e) by
    multiplying it with p^(E - e).
    """
    active = [(c, e) for c, e in constraints if e > 0]
    if not active:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    E = max(e for _, e in active)
    rows = [[x * p ** (E - e) for x in c] for c, e in active]
    gens = kernel_mod_pk(rows, ncols, p, E)
    gens.extend([[p ** E * int(i == j) for i in range(ncols)] for j in range(ncols)])
    return gens


# -- F_p ----------------------------------------------------------------------------


def as_fp(rows, p: int, ncols: int | None = None) -> np.ndarray:
    A = np.array(rows, dtype=object)
    if A.size == 0:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    return (A % p).astype(np.int64).reshape(len(rows), -1)


def rref(rows, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p with the zero rows removed."""
    A = as_fp(rows, p, ncols).copy()
    nrows, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        for k in range(nrows):
            if k != r and A[k, c]:
                A[k] = (A[k] - A[k, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows, p: int) -> int:
    return len(rref(rows, p)[1])


def nullspace(rows, p: int, ncols: int) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0} over F_p."""
    R, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(ncols, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-R[i, f]) % p
        basis.append(x)
    if not basis:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


def in_span(vector, rows, p: int) -> bool:
    rows = [[int(x) for x in row] for row in rows]
    base = rank(rows, p) if rows else 0
    return rank(rows + [[int(x) for x in vector]], p) == base


def intersect(U, W, p: int, ncols: int) -> np.ndarray:
    """rref basis of the intersection of the row spaces of U and W."""
    U, _ = rref(U, p, ncols) if len(U) else (np.zeros((0, ncols), dtype=np.int64), [])
    W, _ = rref(W, p, ncols) if len(W) else (np.zeros((0, ncols), dtype=np.int64), [])
    if not len(U) or not len(W):
        return np.zeros((0, ncols), dtype=np.int64)
    # a U = b W  <=>  (a, b) . [U; -W] = 0
    stacked = np.vstack([U, (-W) % p])
    coeffs = nullspace(stacked.T, p, stacked.shape[0])
    if not len(coeffs):
        return np.zeros((0, ncols), dtype=np.int64)
    vectors = (coeffs[:, : len(U)] @ U) % p
    return rref(vectors, p, ncols)[0]


def same_span(U, W, p: int, ncols: int) -> bool:
    a = rref(U, p, ncols)[0] if len(U) else np.zeros((0, ncols), dtype=np.int64)
    b = rref(W, p, ncols)[0] if len(W) else np.zeros((0, ncols), dtype=np.int64)
    return a.shape == b.shape and bool(np.all(a == b))


def inverse_mod_pk(matrix: Sequence[Sequence[int]], p: int, E: int) -> Matrix:
    """Inverse of a square matrix over Z/p^E (Gauss-Jordan with unit pivots)."""
    m = p ** E
    n = len(matrix)
    A = [[int(x) % m for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c] % p), None)
        if pivot is None:
            raise CongruenceError("matrix is not invertible modulo p")
        A[c], A[pivot] = A[pivot], A[c]
        inv = pow(A[c][c], -1, m)
        A[c] = [(x * inv) % m for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % m for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]
