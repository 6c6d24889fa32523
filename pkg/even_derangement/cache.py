"""On-disk memoization of adjacency matrices and spectra."""

from __future__ import annotations

import logging
import os
from pathlib import Path

import numpy as np

from .const import CACHE_DIR_ENV, VERSION

_LOGGER = logging.getLogger(__name__)

_configured_dir: Path | None = None


def configure(path: Path | None) -> None:
    """Use path for the cache, overriding the environment; None restores the default."""
    global _configured_dir  # noqa: PLW0603
    _configured_dir = path


def cache_dir() -> Path | None:
    """Configured directory, else the one named by the environment, else None."""
    if _configured_dir is not None:
        return _configured_dir
    value = os.environ.get(CACHE_DIR_ENV)
    return Path(value) if value else None


def _path(key: str) -> Path | None:
    root = cache_dir()
    if root is None:
        return None
    return root / f"{key}_v{VERSION}.npz"


def load(key: str) -> dict[str, np.ndarray] | None:
    """Return the arrays stored under key, or None on a miss."""
    path = _path(key)
    if path is None or not path.exists():
        return None
    try:
        with np.load(path) as data:
            arrays = {name: data[name] for name in data.files}
    except (OSError, ValueError):
        _LOGGER.warning("Ignoring unreadable cache entry %s", path)
        return None
    _LOGGER.debug("Cache hit for %s", key)
    return arrays


def store(key: str, **arrays: np.ndarray) -> None:
    """Store arrays under key; a no-op when caching is disabled."""
    path = _path(key)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez_compressed(path, **arrays)
    except OSError:
        _LOGGER.warning("Could not write cache entry %s", path)
