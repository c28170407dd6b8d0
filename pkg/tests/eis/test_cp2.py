import pytest

from padic_eis.arith import make_ring
from padic_eis.eis import congruence_class, cp2_check, lambert_decompose
from padic_eis.qexp import gamma13_series
from padic_eis.utils.errors import PrecisionError


def _table(p, value):
    return {j: value(j) for j in [i * p for i in range(1, p)] + [p * p]}


def test_single_class_arithmetic():
    assert congruence_class(7, 7, 7, 2, 7).residue == 6
    assert congruence_class(7, 7, 7, 2, 7).exponent == 1
    assert congruence_class(1, 7, 7, 2, 7).status == "empty"
    assert congruence_class(49, 0, 7, 2, 7).status == "vacuous"


def test_holds_when_c_vanishes_but_a_and_b_differ():
    p = 5
    a = _table(p, lambda j: 1)
    b = _table(p, lambda j: 0)
    c = _table(p, lambda j: 0)
    result = cp2_check(a, b, c, p)
    assert result.holds
    assert result.witness is None


def test_fails_with_zero_witness_when_everything_agrees():
    p = 5
    a = _table(p, lambda j: j)
    c = _table(p, lambda j: 0)
    result = cp2_check(a, a, c, p)
    assert not result.holds
    assert result.witness == 0
    assert all(cls.status == "vacuous" for cls in result.classes)


def test_consistent_classes_give_a_witness():
    p = 5
    a = _table(p, lambda j: 1)
    b = _table(p, lambda j: 0)
    c = _table(p, lambda j: 1)
    result = cp2_check(a, b, c, p)
    assert not result.holds
    assert result.witness == p ** 4 - 1
    assert result.modulus == p ** 4


def test_conflicting_classes_hold():
    p = 5
    a = _table(p, lambda j: j // p)
    b = _table(p, lambda j: 0)
    c = _table(p, lambda j: 1)
    assert cp2_check(a, b, c, p).holds


def test_missing_precision():
    spec = make_ring(5, 1, 2)
    dec = lambert_decompose(gamma13_series(spec, "E1", 30))
    with pytest.raises(PrecisionError):
        cp2_check(dec, dec, dec, 5)


@pytest.mark.slow
def test_fiber_forms_at_seven():
    spec = make_ring(7, 1, 6)
    f1, f2, g = (lambert_decompose(gamma13_series(spec, name, 50)) for name in ("f1", "f2", "g"))
    result = cp2_check(f1, f2, g, 7)
    assert result.holds
