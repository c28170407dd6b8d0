import logging

import numpy as np
import pytest

from padic_eis.arith import make_ring
from padic_eis.eis import (
    FormExpansion,
    decomposition_from_table,
    eis_image,
    intersect_galois,
    power_map_permutation,
)
from padic_eis.utils.errors import PrecisionError, UserInputError


def _form(spec, name, a_p, residues, N=10):
    table = [[0] * (spec.p - 1) + [a_p]]
    return FormExpansion(name, (decomposition_from_table(spec, table, N),), residues)


def test_unit_coefficient_kills_the_residue():
    spec = make_ring(7, 1, 4)
    image = eis_image([_form(spec, "w", 1, (1,))], 7, 7)
    assert image.shape == (0, 1)


def test_divisible_coefficient_keeps_the_residue():
    spec = make_ring(7, 1, 4)
    image = eis_image([_form(spec, "w", 49, (1,))], 7, 7)
    assert image.tolist() == [[1]]


def test_combination_cancels_coefficients():
    spec = make_ring(7, 1, 4)
    forms = [_form(spec, "u", 1, (1, 0)), _form(spec, "w", 1, (0, 1))]
    assert eis_image(forms, 7, 7).tolist() == [[1, 6]]


def test_below_p_the_image_is_the_full_span(caplog):
    spec = make_ring(7, 1, 4)
    forms = [_form(spec, "u", 1, (1, 0)), _form(spec, "w", 1, (0, 1))]
    with caplog.at_level(logging.WARNING):
        image = eis_image(forms, 7, 5)
    assert image.tolist() == [[1, 0], [0, 1]]
    assert "full residue span" in caplog.text


def test_short_expansion_raises():
    spec = make_ring(7, 1, 4)
    with pytest.raises(PrecisionError):
        eis_image([_form(spec, "w", 49, (1,), N=8)], 7, 14)


def test_identity_permutation_is_a_no_op():
    span = np.array([[1, 2, 0], [0, 0, 1]])
    assert intersect_galois(span, [0, 1, 2], 5).tolist() == span.tolist()


def test_swap_keeps_only_symmetric_vectors():
    assert intersect_galois(np.array([[1, 0]]), [1, 0], 5).shape == (0, 2)
    assert intersect_galois(np.array([[1, 1]]), [1, 0], 5).tolist() == [[1, 1]]
    full = np.eye(3, dtype=np.int64)
    assert intersect_galois(full, [1, 2, 0], 7).shape == (3, 3)


def test_bad_permutation():
    with pytest.raises(UserInputError):
        intersect_galois(np.array([[1, 0]]), [0, 0], 5)


def test_power_map_on_roots_of_unity():
    assert power_map_permutation([1, 2, 3, 4], 5, 2) == [1, 3, 0, 2]
    with pytest.raises(UserInputError):
        power_map_permutation([1, 2], 5, 2)
