"""Loader for the versioned JSON data files bundled with the package.

Data files live in ``enriq/data/`` and each carries a ``format`` tag
("<name>/<version>").  The environment variable ``ENRIQ_DATA_DIR`` overrides
the bundled directory, so auditors can point the toolkit at edited copies of
the tables and re-run every check against them.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

_BUNDLED = Path(__file__).parent / "data"

ENV_OVERRIDE = "ENRIQ_DATA_DIR"


def data_dir() -> Path:
    override = os.environ.get(ENV_OVERRIDE)
    return Path(override) if override else _BUNDLED


def data_path(filename: str) -> Path:
    return data_dir() / filename


@lru_cache(maxsize=None)
def _load_cached(path_str: str, expected_format: str) -> dict:
    with open(path_str, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    fmt = payload.get("format", "")
    base = fmt.split("/")[0]
    if base != expected_format.split("/")[0]:
        raise ValueError(
            f"{path_str}: format {fmt!r} does not match expected {expected_format!r}"
        )
    return payload


def load(filename: str, expected_format: str) -> dict:
    """Load a data file and check its format tag.

    Results are cached per absolute path, so repeated loads are cheap and the
    ``ENRIQ_DATA_DIR`` override is honoured per call.
    """
    return _load_cached(str(data_path(filename).resolve()), expected_format)
