"""Content-addressed disk cache for expensive series."""
from __future__ import annotations

import hashlib
import logging
import os
import pathlib
import tempfile
import threading
from dataclasses import asdict, dataclass
from typing import Any, Callable, TypeVar

from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from padic_eis.arith.ring import RingSpec
from padic_eis.config import cfg
from padic_eis.series.codec import decode_series, encode_series
from padic_eis.utils.errors import SchemaError

log = logging.getLogger(__name__)

GENERATOR_VERSION = 1

_lock = threading.Lock()

T = TypeVar("T")
Encoder = Callable[[Any], bytes]
Decoder = Callable[[bytes, RingSpec | None], Any]


@dataclass(frozen=True)
class CacheKey:
    name: str
    p: int
    d: int
    M: int
    N: int
    version: int = GENERATOR_VERSION

    @classmethod
    def for_spec(cls, name: str, spec: RingSpec, N: int) -> "CacheKey":
        return cls(name, spec.p, spec.d, spec.M, N)

    def digest(self) -> str:
        raw = "|".join(f"{k}={v}" for k, v in sorted(asdict(self).items()))
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()


@retry(
    retry=retry_if_exception_type(PermissionError),
    wait=wait_exponential(multiplier=0.01, max=0.5),
    stop=stop_after_attempt(5),
    reraise=True,
)
def _replace(src: str, dst: pathlib.Path) -> None:
    os.replace(src, dst)


class SeriesCache:
    """Stores anything with ``.spec`` and ``.N`` through a matching encoder/decoder pair."""

    def __init__(self, root: pathlib.Path | str | None = None, enabled: bool | None = None):
        self.root = pathlib.Path(root if root is not None else cfg.cache.dir)
        self.enabled = cfg.cache.enabled if enabled is None else enabled

    def path(self, key: CacheKey) -> pathlib.Path:
        digest = key.digest()
        return self.root / digest[:2] / f"{digest}.series"

    def load(self, key: CacheKey, spec: RingSpec | None = None, decode: Decoder = decode_series):
        if not self.enabled:
            return None
        path = self.path(key)
        if not path.exists():
            return None
        try:
            series = decode(path.read_bytes(), spec)
        except (OSError, SchemaError) as e:
            log.warning("ignoring corrupt cache entry %s: %s", path.name, e)
            return None
        if series.N < key.N or (series.spec.p, series.spec.d, series.spec.M) != (key.p, key.d, key.M):
            log.warning("cache entry %s does not match %s", path.name, key)
            return None
        log.debug("cache hit %s", key)
        return series

    def store(self, key: CacheKey, series, encode: Encoder = encode_series) -> pathlib.Path | None:
        if not self.enabled:
            return None
        path = self.path(key)
        blob = encode(series)
        with _lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(blob)
                _replace(tmp, path)
            except BaseException:
                pathlib.Path(tmp).unlink(missing_ok=True)
                raise
        log.debug("cache store %s -> %s", key, path.name)
        return path

    def get_or_build(self, key: CacheKey, spec: RingSpec, build: Callable[[], T],
                     encode: Encoder = encode_series, decode: Decoder = decode_series) -> T:
        hit = self.load(key, spec, decode)
        if hit is not None:
            return hit
        series = build()
        self.store(key, series, encode)
        return series

    def clear(self) -> int:
        removed = 0
        if not self.root.exists():
            return 0
        for entry in self.root.glob("*/*.series"):
            entry.unlink(missing_ok=True)
            removed += 1
        log.info("removed %d cache entries from %s", removed, self.root)
        return removed


def cached(name: str, spec: RingSpec, N: int, build: Callable[[], T],
           encode: Encoder = encode_series, decode: Decoder = decode_series) -> T:
    """Memoize a generator in the configured cache directory."""
    return SeriesCache().get_or_build(CacheKey.for_spec(name, spec, N), spec, build, encode, decode)


def blob_digest(blob: bytes) -> str:
    return hashlib.sha256(blob).hexdigest()[:16]
