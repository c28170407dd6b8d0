import numpy as np
import pytest

from padic_eis.eis.linalg import same_span
from padic_eis.surfaces import bound_report, family_catalog, galois_permutations, parse_fibers

PAPER_SPAN = [[-4, 0, 0, -4, 1], [3, 3, 0, 1, 0], [1, -3, 1, 0, 0]]


def _relabel(vectors, a, k=5):
    out = []
    for v in vectors:
        w = [0] * k
        for i, x in enumerate(v, start=1):
            w[(a * i - 1) % k] = x
        out.append(w)
    return out


def test_galois_group_is_closed():
    fam = family_catalog("ex1", 5)
    perms = galois_permutations(fam, parse_fibers(fam, "unity"), [2])
    assert len(perms) == 4
    assert [0, 1, 2, 3, 4] in perms


@pytest.mark.slow
def test_ex1_bound_at_eleven():
    report = bound_report(family_catalog("ex1", 5), 11, n=99, embeddings=[2], exclude=[[1, 1, 1, 1, 1]])
    assert report.valid
    assert report.bound == 3
    ours = np.array(report.eis_image_basis)
    assert any(same_span(ours, _relabel(PAPER_SPAN, a), 11, 5) for a in range(1, 5))
    assert report.intersected_bound == 1
    assert report.intersected_basis == [[1, 1, 1, 1, 1]]
    assert report.excluded[0].excluded is False


@pytest.mark.slow
def test_k3_excludes_difference_of_fibers():
    report = bound_report(family_catalog("k3"), 7, n=49, fibers="4,2", exclude=[[1, -1]])
    assert report.forms == ["dt dX/Y", "dt/(t-1) dX/Y", "dt/(t+1) dX/Y"]
    assert report.excluded[0].excluded


def test_bound_reports_the_precision_its_expansions_keep():
    report = bound_report(family_catalog("k3"), 7, n=10, fibers="4,2", M=4)
    assert 1 <= report.certified_precision <= 4
