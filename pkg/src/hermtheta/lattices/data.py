"""Shipped Gram matrices and code files.

``HERMTHETA_DATA`` overrides the data directory.
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from .lattice import EisensteinLattice, load_gram

STANDARD_NAMES = ("s4", "h1", "h2", "h3", "h4", "h5")
RANK12_NAMES = ("h1", "h2", "h3", "h4", "h5")
ROOT_SYSTEMS = {"s4": "E8", "h1": "3E8", "h2": "4E6", "h3": "6D4", "h4": "12A2", "h5": "none (Leech)"}


def data_dir() -> Path:
    env = os.environ.get("HERMTHETA_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"


def gram_path(name: str) -> Path:
    return data_dir() / f"{name}.json"


@lru_cache(maxsize=None)
def _load(path: str) -> EisensteinLattice:
    return load_gram(path)


def load_standard(name: str) -> EisensteinLattice:
    if name not in STANDARD_NAMES:
        raise KeyError(f"unknown lattice {name!r}; expected one of {STANDARD_NAMES}")
    return _load(str(gram_path(name)))
