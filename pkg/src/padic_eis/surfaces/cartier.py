"""Cartier operator on holomorphic 2-forms in characteristic p.

For Y^2 = f(X, t) let sum_m a_m t^m be the coefficient of X^(p-1) in
f^((p-1)/2). On the basis t^i dt dX/Y (0 <= i < ell) the operator has the
matrix A[r][i] = a_(r p - i - 1), r = 1..ell.
"""
from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
import sympy as sp

from padic_eis.arith.ring import make_ring
from padic_eis.eis.linalg import nullspace
from padic_eis.surfaces.catalog import X, WeierstrassFamily, family_catalog, t
from padic_eis.utils.errors import UserInputError

log = logging.getLogger(__name__)


def check_prime(family: WeierstrassFamily, p: int) -> None:
    if p < 5 or not sp.isprime(p) or family.k % p == 0:
        raise UserInputError(f"p={p} must be a prime >= 5 not dividing 6k (k={family.k})")


@lru_cache(maxsize=128)
def hasse_coefficients(name: str, k: int, p: int) -> dict[int, int]:
    """t-degree -> coefficient of X^(p-1) in f^((p-1)/2), reduced mod p."""
    family = family_catalog(name, k)
    check_prime(family, p)
    num, den = sp.fraction(sp.together(family.cartier_poly))
    scale = pow(int(den) % p, -(p - 1) // 2, p) if int(den) % p else None
    if scale is None:
        raise UserInputError(f"p={p} divides the denominator of the Cartier polynomial")
    power = sp.Poly(num, X, t, modulus=p) ** ((p - 1) // 2)
    out: dict[int, int] = {}
    for (ex, et), c in power.terms():
        if ex == p - 1:
            value = int(c) * scale % p
            if value:
                out[et] = value
    return out


def cartier_matrix(family: WeierstrassFamily, p: int) -> np.ndarray:
    """ell x ell matrix over F_p of the Cartier operator."""
    a = hasse_coefficients(family.name, family.k, p)
    ell = family.genus
    A = np.zeros((ell, ell), dtype=np.int64)
    for r in range(1, ell + 1):
        for i in range(ell):
            A[r - 1, i] = a.get(r * p - i - 1, 0)
    return A


def kp_coefficient(p: int, k: int = 4) -> int:
    """Coefficient of X^(p-1) t^(p-1) in (-3(X^3 + (3X + 4t^k)^2))^((p-1)/2), over Z."""
    poly = sp.Poly(-3 * (X ** 3 + (3 * X + 4 * t ** k) ** 2), X, t)
    power = poly ** ((p - 1) // 2)
    return int(power.coeff_monomial(X ** (p - 1) * t ** (p - 1)))


def semilinear_fixed_points(A, p: int, d: int = 1) -> bool:
    """Whether A alpha^[p] = alpha has a nonzero solution alpha in F_(p^d)^ell.

    The map alpha -> A alpha^[p] is F_p-linear; it is written out on the basis
    e_j * g^c of F_(p^d)^ell (g the residue generator) and (map - id) is tested
    for a kernel.
    """
    A = np.asarray(A, dtype=np.int64) % p
    ell = A.shape[0]
    if ell == 0:
        return False
    if d == 1:
        M = (A - np.eye(ell, dtype=np.int64)) % p
        return len(nullspace(M, p, ell)) > 0
    field = make_ring(p, d, 1)
    n = ell * d
    cols = []
    for j in range(ell):
        for c in range(d):
            beta = tuple(int(x == c) for x in range(d))
            frob = field.frobenius_coords(beta)
            image = [0] * n
            for r in range(ell):
                entry = field.scale(int(A[r, j]), frob)
                for b in range(d):
                    image[r * d + b] = entry[b] % p
            image[j * d + c] = (image[j * d + c] - 1) % p
            cols.append(image)
    matrix = np.array(cols, dtype=np.int64).T
    found = len(nullspace(matrix, p, n)) > 0
    log.debug("semilinear system of size %d over F_%d^%d: fixed points=%s", ell, p, d, found)
    return found
