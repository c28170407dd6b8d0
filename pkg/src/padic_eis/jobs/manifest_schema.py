from __future__ import annotations

import json
import pathlib
from typing import Any, Literal

import sympy as sp
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from padic_eis.surfaces.catalog import FAMILY_NAMES
from padic_eis.utils.errors import ManifestError

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

Command = Literal["series", "decompose", "bound", "check-cp", "check-conditions", "residue"]


class Fixture(BaseModel):
    value: Any
    provenance: str = Field(min_length=1)


class Job(BaseModel):
    id: str = Field(min_length=1)
    command: Command
    p: int
    family: str | None = None
    k: int | None = None
    series: str | None = None
    d: int = Field(default=1, ge=1, le=24)
    n: int | None = Field(default=None, ge=1)
    N: int | None = Field(default=None, ge=1)
    M: int | None = Field(default=None, ge=1, le=64)
    fibers: str = "unity"
    embeddings: list[int] = Field(default_factory=list)
    exclude: list[list[int]] = Field(default_factory=list)
    a: int | None = None
    b: int | None = None
    r: int | None = None
    fixture: str | None = None

    @field_validator("p")
    @classmethod
    def _prime(cls, p: int) -> int:
        if p < 5 or not sp.isprime(p):
            raise ValueError(f"p={p} must be a prime >= 5")
        return p

    @model_validator(mode="after")
    def _parameters(self) -> "Job":
        if self.command in ("bound", "check-conditions"):
            if self.family not in FAMILY_NAMES:
                raise ValueError(f"job {self.id}: unknown family {self.family!r}")
            k = 4 if self.family == "k3" and self.k is None else self.k
            if k is None or k < 1:
                raise ValueError(f"job {self.id}: family {self.family} needs k >= 1")
            if k % self.p == 0:
                raise ValueError(f"job {self.id}: p={self.p} divides 6k with k={k}")
            self.k = k
        if self.command in ("series", "decompose") and not self.series:
            raise ValueError(f"job {self.id}: {self.command} needs a series name")
        if self.command == "residue" and None in (self.a, self.b, self.r):
            raise ValueError(f"job {self.id}: residue needs a, b and r")
        return self


class Manifest(BaseModel):
    name: str
    description: str = ""
    fixtures: str = "published_core.json"
    cache_dir: str | None = None
    jobs: list[Job] = Field(default_factory=list)

    @field_validator("jobs")
    @classmethod
    def _unique_ids(cls, jobs: list[Job]) -> list[Job]:
        seen: set[str] = set()
        for job in jobs:
            if job.id in seen:
                raise ValueError(f"duplicate job id {job.id!r}")
            seen.add(job.id)
        return jobs


def fixtures_path(manifest: Manifest, base: pathlib.Path | None = None,
                  manifest_path: pathlib.Path | None = None) -> pathlib.Path:
    """Locate the fixture file next to the manifest, then among the bundled fixtures."""
    candidate = pathlib.Path(manifest.fixtures)
    if candidate.is_absolute():
        return candidate
    own = manifest_path.resolve() if manifest_path else None
    for root in filter(None, (base, DATA_DIR / "fixtures")):
        found = root / candidate
        if found.is_file() and found.resolve() != own:
            return found
    raise ManifestError(f"fixture file {manifest.fixtures} not found")


def load_fixtures(path: pathlib.Path) -> dict[str, Fixture]:
    try:
        raw = json.loads(pathlib.Path(path).read_text(encoding="utf-8"))
        return {key: Fixture.model_validate(v) for key, v in raw.items()}
    except (OSError, ValueError) as e:
        raise ManifestError(f"cannot read fixtures from {path}: {e}") from e


def load_manifest(path: pathlib.Path | str) -> tuple[Manifest, dict[str, Fixture]]:
    """Parse a manifest, resolve its fixture file and check every fixture reference."""
    path = pathlib.Path(path)
    if not path.exists() and (DATA_DIR / "manifests" / f"{path.name}").exists():
        path = DATA_DIR / "manifests" / path.name
    try:
        manifest = Manifest.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ManifestError(f"cannot read manifest {path}: {e}") from e
    except ValidationError as e:
        raise ManifestError(f"invalid manifest {path}: {e}") from e
    fixtures = load_fixtures(fixtures_path(manifest, path.parent, path)) if manifest.jobs else {}
    missing = [job.id for job in manifest.jobs if job.fixture and job.fixture not in fixtures]
    if missing:
        raise ManifestError(f"unresolved fixture references in jobs {', '.join(missing)}")
    return manifest, fixtures
