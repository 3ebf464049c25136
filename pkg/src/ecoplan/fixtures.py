"""Paths to the bundled six-IP demo dataset and run configuration."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Absolute path of a bundled data file (e.g. 'six_ip_soc.json')."""
    path = Path(str(files("ecoplan").joinpath("data", name)))
    if not path.exists():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path
