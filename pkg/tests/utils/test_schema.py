import json

import pytest
from pydantic import BaseModel

from padic_eis.utils.errors import CatalogError, ExtensionRequired, FiberTableMismatch, RingError, SchemaError
from padic_eis.utils.schema import CPReport, JobResult, ReproduceReport, load_report, write_report


class _Table(BaseModel):
    rows: list[dict]


def test_json_is_sorted_and_loads_back(tmp_path):
    report = CPReport(p=7, kp=0, cp1=True, cp2=True, holds=True)
    path = write_report(report, tmp_path, "cp")
    text = path.read_text()
    keys = list(json.loads(text))
    assert keys == sorted(keys)
    again = load_report(path, CPReport)
    assert again.comparable() == report.comparable()
    assert "generated_at" not in report.comparable()


def test_csv_from_rows(tmp_path):
    path = write_report(_Table(rows=[{"k": 5, "p": 11, "bound": 3}]), tmp_path, "t", fmt="csv")
    assert path.read_text().splitlines() == ["k,p,bound", "5,11,3"]


def test_csv_without_rows_and_unknown_format(tmp_path):
    with pytest.raises(SchemaError):
        write_report(CPReport(p=7, kp=0, cp1=True, cp2=True, holds=True), tmp_path, "cp", fmt="csv")
    with pytest.raises(SchemaError):
        write_report(CPReport(p=7, kp=0, cp1=True, cp2=True, holds=True), tmp_path, "cp", fmt="xml")


def test_load_rejects_garbage(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(SchemaError):
        load_report(path, CPReport)


def test_reproduce_report_passed():
    ok = JobResult(id="a", command="series", status="pass")
    bad = JobResult(id="b", command="bound", status="error", message="boom")
    assert ReproduceReport(manifest="m", results=[ok]).passed
    assert not ReproduceReport(manifest="m", results=[ok, bad]).passed


def test_error_hierarchy():
    exc = ExtensionRequired("need more", minimal_degree=4)
    assert isinstance(exc, RingError) and exc.minimal_degree == 4
    assert issubclass(FiberTableMismatch, CatalogError)
