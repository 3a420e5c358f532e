"""Paths to the CSV fixtures shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

MERSON_PREDICTION = "merson_2016_17_prediction.csv"
PL_FINAL = "pl_2016_17_final.csv"
SYNTHETIC_SEASON = "synthetic_14team.csv"


def bundled_path(name: str) -> Path:
    """Filesystem path of a bundled fixture, e.g. ``bundled_path(PL_FINAL)``."""
    path = Path(str(resources.files("tableguess").joinpath("data", name)))
    if not path.exists():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path
