from __future__ import annotations
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError

from padic_eis.config import cfg
from padic_eis.logging import init_logging
from padic_eis.utils.errors import (
    CatalogError,
    ConfigError,
    ExtensionRequired,
    FixtureMismatch,
    ManifestError,
    PrecisionError,
    SchemaError,
    SurfaceError,
    UserInputError,
)
from padic_eis.utils.schema import write_report

app = typer.Typer(no_args_is_help=True, add_completion=False)
log = logging.getLogger(__name__)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNCERTIFIED = 0, 1, 2, 3

FamilyOpt = typer.Option(..., "--family", "-f", help="ex1, ex2 or k3")
KOpt = typer.Option(None, "--k", help="Family parameter (k3 is fixed at 4)")
POpt = typer.Option(..., "--p", help="Prime >= 5")
PrecisionOpt = typer.Option(None, "--precision", help="Target p-adic precision")
GuardOpt = typer.Option(None, "--guard", help="Guard digits on top of --precision")
OutOpt = typer.Option(cfg.out_dir, "--out", "-o")
FormatOpt = typer.Option("json", "--format", help="json or csv")
CacheOpt = typer.Option(None, "--cache-dir", help="Series cache directory")


def _working(precision: Optional[int], guard: Optional[int]) -> Optional[int]:
    if precision is None and guard is None:
        return None
    return (precision or cfg.precision.target) + (guard if guard is not None else cfg.precision.guard)


def _ints(token: Optional[str]) -> list[int]:
    if not token:
        return []
    try:
        return [int(x) for x in token.split(",") if x.strip()]
    except ValueError as e:
        raise UserInputError(f"expected comma-separated integers, got {token!r}") from e


@contextmanager
def _exit_codes():
    """Map library exceptions onto the CLI exit codes."""
    try:
        yield
    except FixtureMismatch as e:
        log.error("fixture mismatch: %s", e)
        raise typer.Exit(EXIT_MISMATCH)
    except PrecisionError as e:
        log.error("uncertified: %s", e)
        raise typer.Exit(EXIT_UNCERTIFIED)
    except (ValidationError, UserInputError, ConfigError, SchemaError, ManifestError, CatalogError,
            ExtensionRequired, SurfaceError) as e:
        log.error("Validation/config error: %s", e)
        raise typer.Exit(EXIT_USAGE)


def _emit(model, out_dir: Path, stem: str, fmt: str) -> None:
    path = write_report(model, out_dir, stem, fmt)
    typer.echo(f"wrote {path}")


@app.callback()
def _root(log_level: str = typer.Option(cfg.log_level, help="Log level")):
    init_logging(log_level)


@app.command()
def series(
    name: str = typer.Argument(..., help="E4, E6, Delta, j, E1, E3a, E3b, t, f1, f2 or g"),
    p: int = POpt,
    d: int = typer.Option(1, "--d", help="Residue degree"),
    order: int = typer.Option(50, "--order", "-N", help="Expansion order N"),
    precision: Optional[int] = PrecisionOpt,
    guard: Optional[int] = GuardOpt,
    cache_dir: Optional[Path] = CacheOpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """Emit a named q-expansion."""
    from padic_eis.jobs import SeriesCache, named_series, series_payload

    with _exit_codes():
        cache = SeriesCache(cache_dir) if cache_dir else None
        f = named_series(name, p, d, _working(precision, guard), order, cache)
        payload = series_payload(name, f)
        head = ", ".join(str(c[0]) if d == 1 else str(tuple(c)) for c in payload.coefficients[:6])
        typer.echo(f"{name} over {f.spec.label()}: {head}, ... + O(q^{f.N})")
        _emit(payload, out_dir, f"series_{name}_p{p}", fmt)


@app.command()
def decompose(
    name: str = typer.Argument(...),
    p: int = POpt,
    d: int = typer.Option(1, "--d"),
    order: int = typer.Option(50, "--order", "-N"),
    n: Optional[int] = typer.Option(None, "--n", help="Check (E2) up to this index"),
    precision: Optional[int] = PrecisionOpt,
    guard: Optional[int] = GuardOpt,
    cache_dir: Optional[Path] = CacheOpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """Lambert table and Eisenstein verdict of a named series."""
    from padic_eis.jobs import SeriesCache
    from padic_eis.jobs import decompose as build

    with _exit_codes():
        cache = SeriesCache(cache_dir) if cache_dir else None
        report = build(name, p, d, _working(precision, guard), order, n, cache)
        typer.echo(f"{name}: {report.status} (E1 {'ok' if report.e1_ok else 'fails'}, "
                   f"{len(report.e2_failures)} E2 failures, certified to n={report.certified_n})")
        _emit(report, out_dir, f"decompose_{name}_p{p}", fmt)
    if report.status == "uncertified":
        raise typer.Exit(EXIT_UNCERTIFIED)


@app.command()
def bound(
    family: str = FamilyOpt,
    k: Optional[int] = KOpt,
    p: int = POpt,
    n: Optional[int] = typer.Option(None, "--order", help="Eis^(n) order; default p^2"),
    fibers: str = typer.Option("unity", "--fibers", help="unity, all, or tokens like 1,3,t0"),
    embeddings: Optional[str] = typer.Option(None, "--embeddings", help="Exponents a for zeta -> zeta^a"),
    exclude: List[str] = typer.Option([], "--exclude", help="Fiber-residue vector to test, e.g. 1,-1"),
    precision: Optional[int] = PrecisionOpt,
    guard: Optional[int] = GuardOpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """Residue upper bound for the Galois-fixed part of H^2."""
    from padic_eis.surfaces import bound_report, family_catalog

    with _exit_codes():
        report = bound_report(
            family_catalog(family, k), p, n=n, fibers=fibers, embeddings=_ints(embeddings) or None,
            exclude=[_ints(v) for v in exclude], M=_working(precision, guard),
        )
        typer.echo(f"{family} k={report.k} p={p} n={report.n}: bound {report.bound}"
                   + (f", intersected {report.intersected_bound}" if report.intersected_bound is not None else "")
                   + ("" if report.valid else " (conditions fail, not a valid bound)"))
        for e in report.excluded:
            typer.echo(f"  {e.vector}: {'excluded' if e.excluded else 'not excluded'}")
        _emit(report, out_dir, f"bound_{family}_k{report.k}_p{p}", fmt)


@app.command("check-cp")
def check_cp(
    p: int = POpt,
    precision: Optional[int] = PrecisionOpt,
    guard: Optional[int] = GuardOpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """The condition C(p) for the K3 family."""
    from padic_eis.surfaces import check_cp as run

    with _exit_codes():
        report = run(p, _working(precision, guard))
        typer.echo(f"C({p}): {'holds' if report.holds else 'fails'} (k_p={report.kp}, C(p)-2 "
                   f"{'holds' if report.cp2 else f'fails, witness {report.witness}'})")
        _emit(report, out_dir, f"check_cp_p{p}", fmt)


@app.command("check-conditions")
def check_conditions(
    family: str = FamilyOpt,
    k: Optional[int] = KOpt,
    p: int = POpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """Conditions (A'), (B') and, for k3, C(p)-1."""
    from padic_eis.surfaces import condition_checks, family_catalog

    with _exit_codes():
        report = condition_checks(family_catalog(family, k), p)
        typer.echo(f"{family} k={report.k} p={p}: A'={report.A_prime} B'={report.B_prime}"
                   + (f" k_p={report.kp}" if report.kp is not None else ""))
        _emit(report, out_dir, f"conditions_{family}_k{report.k}_p{p}", fmt)


@app.command()
def residue(
    a: int = typer.Option(..., "--a"),
    b: int = typer.Option(..., "--b"),
    r: int = typer.Option(..., "--r"),
    p: int = POpt,
    order: int = typer.Option(40, "--order", "-N"),
    precision: Optional[int] = PrecisionOpt,
    guard: Optional[int] = GuardOpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """Rule-based residue against the closed formula."""
    from padic_eis.jobs import residue as build

    with _exit_codes():
        report = build(a, b, r, p, _working(precision, guard), order)
        typer.echo(f"(a, b, r) = ({a}, {b}, {r}): formulas {'agree' if report.agree else 'DISAGREE'}, "
                   f"dlog integrality {report.dlog_status} at M={report.M}")
        _emit(report, out_dir, f"residue_{a}_{b}_{r}_p{p}", fmt)
    if not report.agree:
        raise typer.Exit(EXIT_MISMATCH)
    if report.dlog_status == "uncertified":
        raise typer.Exit(EXIT_UNCERTIFIED)


@app.command()
def kappa(
    family: str = FamilyOpt,
    k: Optional[int] = KOpt,
    p: int = POpt,
    at: str = typer.Option(..., "--at", help="Fiber token: i for t = zeta_k^i, or t0"),
    form: int = typer.Option(0, "--form", help="Index into the log form basis of --fibers"),
    fibers: str = typer.Option("unity", "--fibers"),
    order: int = typer.Option(50, "--order", "-N"),
    precision: Optional[int] = PrecisionOpt,
    guard: Optional[int] = GuardOpt,
    out_dir: Path = OutOpt,
    fmt: str = FormatOpt,
):
    """Expansion of a log form at one multiplicative fiber."""
    from padic_eis.jobs import series_payload
    from padic_eis.surfaces import family_catalog, kappa as expand, logform_basis, parse_fibers
    from padic_eis.surfaces.bound import local_expansions

    with _exit_codes():
        fam = family_catalog(family, k)
        forms = logform_basis(fam, parse_fibers(fam, fibers))
        if not 0 <= form < len(forms):
            raise UserInputError(f"--form must be in 0..{len(forms) - 1}")
        loc = parse_fibers(fam, at)
        if len(loc) != 1:
            raise UserInputError("--at takes a single fiber")
        M = _working(precision, guard) or cfg.precision.working
        spec, expansions = local_expansions(fam, loc, p, M, order + 2)
        local, lam = expansions[loc[0]]
        payload = series_payload(forms[form].label, expand(fam, local, lam, forms[form]).truncate(order))
        typer.echo(f"kappa({forms[form].label}) at {loc[0].label} over {spec.label()}")
        _emit(payload, out_dir, f"kappa_{family}_{loc[0].label}_{form}_p{p}", fmt)


@app.command()
def table(
    family: str = FamilyOpt,
    ks: str = typer.Option(..., "--ks", help="Comma-separated k values"),
    ps: str = typer.Option(..., "--ps", help="Comma-separated primes"),
    n: Optional[int] = typer.Option(None, "--order"),
    out_dir: Path = OutOpt,
    fmt: str = typer.Option("csv", "--format"),
):
    """Conditions and bounds over a (k, p) grid."""
    from padic_eis.surfaces import range_table

    with _exit_codes():
        df = range_table(family, _ints(ks), _ints(ps), n=n)
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            path = out_dir / f"table_{family}.csv"
            df.to_csv(path, index=False)
        elif fmt == "json":
            path = out_dir / f"table_{family}.json"
            df.to_json(path, orient="records", indent=2)
        else:
            raise SchemaError(f"unknown output format {fmt!r}")
        typer.echo(df.to_string(index=False))
        typer.echo(f"wrote {path}")


@app.command()
def reproduce(
    manifest: Path = typer.Argument(Path("published_core.json"), help="Manifest file or bundled manifest name"),
    jobs: int = typer.Option(cfg.jobs, "--jobs", "-j"),
    only: List[str] = typer.Option([], "--only", help="Run only these job ids"),
    cache_dir: Optional[Path] = CacheOpt,
    out_dir: Path = OutOpt,
):
    """Run a manifest and compare every job against its fixture."""
    from padic_eis.jobs import render_summary, reproduce_manifest

    with _exit_codes():
        report = reproduce_manifest(manifest, jobs=jobs, cache_dir=str(cache_dir) if cache_dir else None,
                                    only=set(only) or None)
        render_summary(report)
        _emit(report, out_dir, "reproduce", "json")
        if not report.passed:
            bad = [r.id for r in report.results if r.status != "pass"]
            raise FixtureMismatch(f"{len(bad)} jobs did not match: {', '.join(bad)}")


@app.command("cache-clear")
def cache_clear(cache_dir: Optional[Path] = CacheOpt):
    """Delete every cached series."""
    from padic_eis.jobs import SeriesCache

    removed = SeriesCache(cache_dir, enabled=True).clear()
    typer.echo(f"removed {removed} cache entries")


if __name__ == "__main__":
    app()
