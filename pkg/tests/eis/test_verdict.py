import logging

from padic_eis.arith import make_ring
from padic_eis.eis import (
    decomposition_from_table,
    default_basis,
    e2_status,
    eisenstein_report,
    lambert_decompose,
    resum,
)
from padic_eis.eis.verdict import E2Failure
from padic_eis.qexp import gamma13_series
from padic_eis.series import LaurentSeries


def test_e3b_is_eisenstein_at_seven():
    spec = make_ring(7, 1, 6)
    verdict = eisenstein_report(gamma13_series(spec, "E3b", 99), n_max=98)
    assert verdict.status == "pass"
    assert verdict.passed
    assert verdict.certified_n == 98


def test_unit_coefficient_at_p_fails():
    spec = make_ring(7, 1, 4)
    dec = decomposition_from_table(spec, [[0] * 6 + [1]], N=20)
    verdict = eisenstein_report(dec, n_max=19)
    assert verdict.status == "fail"
    assert verdict.e2_failures == (E2Failure(1, 7, 0, 2),)


def test_constant_passes():
    spec = make_ring(7, 1, 4)
    verdict = eisenstein_report(LaurentSeries.constant(spec, 5, 30), n_max=29)
    assert verdict.e1_ok
    assert verdict.status == "pass"


def test_pole_breaks_first_condition():
    spec = make_ring(5, 1, 3)
    f = LaurentSeries.from_dict(spec, {-1: 1, 0: 2}, N=12)
    verdict = eisenstein_report(f, n_max=11)
    assert not verdict.e1_ok
    assert verdict.principal_terms == (-1,)
    assert verdict.status == "fail"


def test_insufficient_precision_is_uncertified(caplog):
    spec = make_ring(7, 1, 3)
    with caplog.at_level(logging.WARNING):
        verdict = eisenstein_report(LaurentSeries.one(spec, 60), n_max=59)
    assert verdict.status == "uncertified"
    assert verdict.certified_n == 48
    assert verdict.uncertified == (49,)
    assert "uncertified" in caplog.text


def test_short_series_is_uncertified():
    spec = make_ring(7, 1, 4)
    verdict = eisenstein_report(LaurentSeries.one(spec, 10), n_max=30)
    assert verdict.status == "uncertified"
    assert verdict.certified_n == 9


def test_e2_status_states():
    assert e2_status(49, 7, 7, 4)[0] == "ok"
    assert e2_status(7, 7, 7, 4) == ("fail", 1, 2)
    assert e2_status(0, 49, 7, 3)[0] == "unknown"


def test_verdict_does_not_depend_on_basis():
    spec = make_ring(7, 2, 4)
    N = 16
    good = [[0] * (N - 1), [0] * (N - 1)]
    good[0][6] = 49
    good[1][13] = 98
    bad = [row[:] for row in good]
    bad[1][6] = 3
    for table, expected in ((good, "pass"), (bad, "fail")):
        f = resum(decomposition_from_table(spec, table, N))
        for exponent in (1, 5):
            verdict = eisenstein_report(f, n_max=N - 1, basis=default_basis(spec, exponent))
            assert verdict.status == expected


def test_verdict_is_stable_under_extension():
    small = make_ring(7, 1, 6)
    big = make_ring(7, 2, 6)
    f = gamma13_series(small, "E3b", 50)
    assert eisenstein_report(f, 49).status == "pass"
    assert eisenstein_report(f.extend_scalars(big), 49).status == "pass"
    assert lambert_decompose(f.extend_scalars(big)).a(2, 7) == 0
