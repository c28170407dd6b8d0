import numpy as np
import pytest

from padic_eis.eis.linalg import (
    intersect,
    inverse_mod_pk,
    kernel_mod_pk,
    nullspace,
    rank,
    rref,
    same_span,
    solution_lattice,
)
from padic_eis.utils.errors import CongruenceError


def _dot(row, x):
    return sum(a * b for a, b in zip(row, x))


def test_kernel_generators_solve_the_system():
    rows = [[1, 7, 3], [7, 0, 14]]
    gens = kernel_mod_pk(rows, 3, 7, 2)
    assert gens
    for g in gens:
        for row in rows:
            assert _dot(row, g) % 49 == 0


def test_kernel_of_unit_equation_has_full_rank_generators():
    # x + 7y == 0 mod 49: (-7, 1) is primitive, x itself lies in 7 Z_p
    gens = kernel_mod_pk([[1, 7]], 2, 7, 2)
    assert any(g[1] % 7 for g in gens)
    assert all(g[0] % 7 == 0 for g in gens)


def test_solution_lattice_lifts_mixed_exponents():
    gens = solution_lattice([([1], 2)], 1, 7)
    assert all(g[0] % 49 == 0 for g in gens)
    gens = solution_lattice([([7], 1)], 1, 7)
    assert [1] in gens


def test_solution_lattice_without_constraints_is_everything():
    assert solution_lattice([], 2, 5) == [[1, 0], [0, 1]]


def test_rref_and_rank():
    R, pivots = rref([[2, 4, 1], [1, 2, 0]], 5, 3)
    assert pivots == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]
    assert rank([[1, 1], [2, 2]], 7) == 1


def test_nullspace_vectors_are_annihilated():
    rows = [[1, 2, 3], [0, 1, 4]]
    N = nullspace(rows, 7, 3)
    assert N.shape == (1, 3)
    assert not np.any((np.array(rows) @ N.T) % 7)


def test_intersection_of_planes():
    U = [[1, 0, 0], [0, 1, 0]]
    W = [[0, 1, 0], [0, 0, 1]]
    X = intersect(U, W, 11, 3)
    assert X.tolist() == [[0, 1, 0]]
    assert intersect(U, [], 11, 3).shape == (0, 3)


def test_same_span_ignores_generators():
    assert same_span([[1, 1], [1, 2]], [[1, 0], [0, 1]], 5, 2)
    assert not same_span([[1, 1]], [[1, 0]], 5, 2)


def test_inverse_mod_prime_power():
    A = [[1, 7], [3, 2]]
    inv = inverse_mod_pk(A, 7, 3)
    m = 343
    prod = [[sum(A[i][k] * inv[k][j] for k in range(2)) % m for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
    with pytest.raises(CongruenceError):
        inverse_mod_pk([[7, 0], [0, 1]], 7, 2)
