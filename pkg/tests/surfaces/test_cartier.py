import numpy as np
import pytest

from padic_eis.surfaces import (
    cartier_matrix,
    condition_checks,
    family_catalog,
    kp_coefficient,
    semilinear_fixed_points,
)
from padic_eis.utils.errors import UserInputError


def test_k3_kp_values():
    assert kp_coefficient(5) == 432
    assert kp_coefficient(7) == 0


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_cartier_entry_matches_kp(p):
    A = cartier_matrix(family_catalog("k3"), p)
    assert A.shape == (1, 1)
    assert int(A[0, 0]) == kp_coefficient(p) % p


def test_semilinear_systems():
    assert semilinear_fixed_points([[1]], 7)
    assert not semilinear_fixed_points([[0]], 7)
    assert not semilinear_fixed_points([[3]], 7)
    assert semilinear_fixed_points(np.eye(2, dtype=np.int64), 5)
    assert not semilinear_fixed_points([[0]], 7, d=2)
    assert semilinear_fixed_points([[1]], 7, d=2)
    assert not semilinear_fixed_points(np.zeros((0, 0)), 7)


def test_conditions_for_ex1():
    report = condition_checks(family_catalog("ex1", 5), 11)
    assert report.A_prime and report.B_prime
    smooth = condition_checks(family_catalog("ex1", 3), 7)
    assert not smooth.A_prime
    assert smooth.cartier == []


def test_conditions_for_k3_at_seven():
    report = condition_checks(family_catalog("k3"), 7)
    assert report.kp == 0
    assert report.cp1
    assert report.ordinary is False
    assert report.p_mod4_consistent


def test_bad_prime():
    with pytest.raises(UserInputError):
        condition_checks(family_catalog("ex1", 5), 5)
    with pytest.raises(UserInputError):
        condition_checks(family_catalog("ex1", 5), 9)


@pytest.mark.slow
def test_cp_holds_at_seven():
    from padic_eis.surfaces import check_cp

    report = check_cp(7)
    assert report.kp == 0
    assert report.cp1 and report.cp2 and report.holds
