"""
Centralized pytest configuration for deterministic runs.
- Seeds RNGs per test.
- Points output at a temporary directory and keeps the series cache off.
"""
import os, random, tempfile
import pytest

try:
    import numpy as _np  # type: ignore
except Exception:
    _np = None


def pytest_configure(config):
    random.seed(0)
    os.environ.setdefault("PYTHONHASHSEED", "0")
    os.environ.setdefault("PADIC_EIS_CACHE__ENABLED", "false")
    os.environ.setdefault("PADIC_EIS_OUT_DIR", tempfile.mkdtemp(prefix="padic-eis-out-"))
    os.environ.setdefault("PADIC_EIS_LOG_LEVEL", "WARNING")


@pytest.fixture(autouse=True)
def _stable_rng_seed():
    """Autouse fixture to (re)seed common RNGs per test."""
    random.seed(0)
    if _np is not None:
        _np.random.seed(0)
