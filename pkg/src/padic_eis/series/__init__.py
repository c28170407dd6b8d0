from .cache import CacheKey, SeriesCache, cached
from .codec import decode_series, encode_series
from .laurent import LaurentSeries, compose, polyval, power_substitute, rescale_root, reversion
from .transcendental import (
    derivative,
    ell_phi,
    exp0,
    log1,
    nth_root_series,
    phi_substitute,
    qdlog,
)

__all__ = [
    "CacheKey",
    "LaurentSeries",
    "SeriesCache",
    "cached",
    "compose",
    "decode_series",
    "derivative",
    "ell_phi",
    "encode_series",
    "exp0",
    "log1",
    "nth_root_series",
    "phi_substitute",
    "polyval",
    "power_substitute",
    "qdlog",
    "rescale_root",
    "reversion",
]
