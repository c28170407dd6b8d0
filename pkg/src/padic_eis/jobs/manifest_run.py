"""Run a manifest of jobs and diff the outcomes against bundled fixtures."""
from __future__ import annotations

import logging
import math
import pathlib
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from rich.console import Console
from rich.table import Table

from padic_eis.config import cfg
from padic_eis.eis.congruence import translate_span
from padic_eis.eis.linalg import same_span
from padic_eis.series.cache import SeriesCache
from padic_eis.jobs.commands import decompose, named_series, reduce_rational, residue, series_payload
from padic_eis.jobs.manifest_schema import Fixture, Job, load_manifest
from padic_eis.surfaces import (
    bound_report,
    check_cp,
    condition_checks,
    family_catalog,
    galois_permutations,
    parse_fibers,
)
from padic_eis.utils.errors import UserInputError
from padic_eis.utils.schema import JobResult, ReproduceReport

log = logging.getLogger(__name__)


def _subset_matches(expected: dict, actual: dict) -> bool:
    return all(actual.get(key) == value for key, value in expected.items())


def _basis_matches(job: Job, basis: list[list[int]], expected: list[list[int]]) -> bool:
    """Span equality, allowing the relabelling of zeta-fibers by any zeta -> zeta^a."""
    family = family_catalog(job.family, job.k)
    selection = parse_fibers(family, job.fibers)
    s = len(selection)
    units = [a for a in range(1, family.k) if math.gcd(a, family.k) == 1] or [1]
    try:
        perms = galois_permutations(family, selection, units)
    except UserInputError:
        perms = [list(range(s))]
    return any(same_span(basis, translate_span(expected, perm, job.p), job.p, s) for perm in perms)


def _evaluate(job: Job, expected: Any, cache: SeriesCache) -> tuple[Any, bool]:
    """(actual value, matches) for one job; ``expected`` None always matches."""
    if job.command == "series":
        f = named_series(job.series, job.p, job.d, job.M, job.N or 50, cache)
        payload = series_payload(job.series, f)
        if expected is None:
            return payload.model_dump(mode="json", exclude={"generated_at"}), True
        actual = [payload.coefficients[i][0] for i in range(min(len(expected), len(payload.coefficients)))]
        want = [reduce_rational(v, job.p, f.prec) for v in expected]
        return actual, actual == want
    if job.command == "decompose":
        report = decompose(job.series, job.p, job.d, job.M, job.N or 50, job.n, cache).comparable()
    elif job.command == "residue":
        report = residue(job.a, job.b, job.r, job.p, job.M, job.N or 40).comparable()
    elif job.command == "check-cp":
        report = check_cp(job.p, job.M).comparable()
    elif job.command == "check-conditions":
        report = condition_checks(family_catalog(job.family, job.k), job.p).model_dump(mode="json")
    else:
        report = bound_report(
            family_catalog(job.family, job.k), job.p, n=job.n, fibers=job.fibers,
            embeddings=job.embeddings or None, exclude=job.exclude, M=job.M,
        ).model_dump(mode="json")
    if expected is None:
        return report, True
    expected = dict(expected)
    ok = True
    if "basis" in expected:
        ok = _basis_matches(job, report["eis_image_basis"], expected.pop("basis"))
    return report, ok and _subset_matches(expected, report)


def run_job(job: Job, fixture: Fixture | None = None, cache_dir: str | None = None) -> JobResult:
    start = time.perf_counter()
    cache = SeriesCache(cache_dir) if cache_dir else SeriesCache()
    expected = fixture.value if fixture else None
    provenance = fixture.provenance if fixture else ""
    try:
        actual, ok = _evaluate(job, expected, cache)
    except Exception as e:
        log.error("job %s failed: %s", job.id, e)
        return JobResult(
            id=job.id, command=job.command, status="error", provenance=provenance,
            expected=expected, message=f"{type(e).__name__}: {e}", seconds=round(time.perf_counter() - start, 3),
        )
    if not ok:
        log.warning("job %s does not match fixture %s", job.id, job.fixture)
    return JobResult(
        id=job.id, command=job.command, status="pass" if ok else "fail", provenance=provenance,
        expected=expected, actual=actual if expected is not None else None,
        seconds=round(time.perf_counter() - start, 3),
    )


def _run_payload(job: dict, fixture: dict | None, cache_dir: str | None) -> dict:
    result = run_job(Job.model_validate(job), Fixture.model_validate(fixture) if fixture else None, cache_dir)
    return result.model_dump(mode="json")


def reproduce_manifest(path: pathlib.Path | str, jobs: int | None = None,
                       cache_dir: str | None = None, only: set[str] | None = None) -> ReproduceReport:
    manifest, fixtures = load_manifest(path)
    cache_dir = cache_dir or manifest.cache_dir
    selected = [j for j in manifest.jobs if not only or j.id in only]
    workers = jobs or cfg.jobs
    log.info("running %d jobs of manifest %s with %d workers", len(selected), manifest.name, workers)
    if workers <= 1 or len(selected) <= 1:
        results = [run_job(j, fixtures.get(j.fixture) if j.fixture else None, cache_dir) for j in selected]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _run_payload, j.model_dump(mode="json"),
                    fixtures[j.fixture].model_dump(mode="json") if j.fixture else None, cache_dir,
                )
                for j in selected
            ]
            results = [JobResult.model_validate(f.result()) for f in futures]
    results.sort(key=lambda r: r.id)
    return ReproduceReport(manifest=manifest.name, results=results)


def render_summary(report: ReproduceReport, console: Console | None = None) -> None:
    table = Table(title=f"manifest {report.manifest}")
    table.add_column("job")
    table.add_column("command")
    table.add_column("status")
    table.add_column("seconds", justify="right")
    table.add_column("provenance")
    colors = {"pass": "green", "fail": "red", "error": "yellow"}
    for r in report.results:
        table.add_row(r.id, r.command, f"[{colors[r.status]}]{r.status}[/]", f"{r.seconds:.2f}", r.provenance)
    (console or Console()).print(table)
