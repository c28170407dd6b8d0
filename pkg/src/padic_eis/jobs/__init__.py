from padic_eis.series.cache import CacheKey, SeriesCache
from .commands import SERIES_NAMES, decompose, named_series, residue, series_payload
from .manifest_run import render_summary, reproduce_manifest, run_job
from .manifest_schema import Fixture, Job, Manifest, load_manifest

__all__ = [
    "CacheKey",
    "Fixture",
    "Job",
    "Manifest",
    "SERIES_NAMES",
    "SeriesCache",
    "decompose",
    "load_manifest",
    "named_series",
    "render_summary",
    "reproduce_manifest",
    "residue",
    "run_job",
    "series_payload",
]
