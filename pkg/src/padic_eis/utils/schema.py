from __future__ import annotations

import datetime as _dt
import json
import pathlib
from typing import Any, Literal

import pandas as pd
from pydantic import BaseModel, Field

from padic_eis.utils.errors import SchemaError

# excluded when reports are compared
VOLATILE_FIELDS = {"generated_at"}


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


class Report(BaseModel):
    generated_at: str = Field(default_factory=_now)

    def comparable(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude=VOLATILE_FIELDS)


class SeriesPayload(Report):
    name: str
    p: int
    d: int
    M: int
    N: int
    v: int
    label: str = "q"
    # one coordinate tuple per exponent v..N-1, signed residues mod p^certified_precision
    coefficients: list[list[int]]
    certified_precision: int


class E2FailurePayload(BaseModel):
    i: int
    j: int
    found: int
    required: int


class DecompositionReport(Report):
    name: str
    p: int
    d: int
    M: int
    N: int
    principal: dict[int, list[int]] = Field(default_factory=dict)
    # table[i][j - 1] = a_(i+1, j)
    table: list[list[int]]
    e1_ok: bool
    e2_failures: list[E2FailurePayload] = Field(default_factory=list)
    status: Literal["pass", "fail", "uncertified"]
    certified_n: int
    certified_precision: int


class ResidueReport(Report):
    a: int
    b: int
    r: int
    p: int
    M: int
    N: int
    agree: bool
    dlog_integral: bool
    dlog_status: Literal["pass", "fail", "uncertified"]
    rule_value: list[list[int]]
    closed_value: list[list[int]]


class CPReport(Report):
    p: int
    kp: int
    cp1: bool
    cp2: bool
    holds: bool
    witness: int | None = None
    classes: list[dict[str, Any]] = Field(default_factory=list)


class JobResult(BaseModel):
    id: str
    command: str
    status: Literal["pass", "fail", "error"]
    provenance: str = ""
    expected: Any = None
    actual: Any = None
    message: str = ""
    seconds: float = 0.0


class ReproduceReport(Report):
    manifest: str
    results: list[JobResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)


def write_report(model: BaseModel, out_dir: pathlib.Path, stem: str, fmt: str = "json") -> pathlib.Path:
    """Write ``model`` as sorted-key JSON, or as CSV when it carries a ``rows`` table."""
    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = out_dir / f"{stem}.json"
        data = model.model_dump(mode="json")
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path
    if fmt == "csv":
        rows = getattr(model, "rows", None)
        if rows is None:
            raise SchemaError(f"{type(model).__name__} has no tabular form")
        path = out_dir / f"{stem}.csv"
        pd.DataFrame([r.model_dump(mode="json") if isinstance(r, BaseModel) else r for r in rows]).to_csv(
            path, index=False
        )
        return path
    raise SchemaError(f"unknown output format {fmt!r}")


def load_report(path: pathlib.Path, model: type[BaseModel]) -> BaseModel:
    try:
        return model.model_validate_json(pathlib.Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise SchemaError(f"cannot read {model.__name__} from {path}: {exc}") from exc
