"""Access to the packaged seed catalog."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .loader import load_kb
from .model import KnowledgeBase


def seed_text() -> str:
    """Raw text of the packaged seed document."""
    return resources.files("reqpath").joinpath("seed/xrgm.json").read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def seed_kb() -> KnowledgeBase:
    """The packaged starter catalog, loaded and validated.

    load_kb raises if the packaged document has validation errors, so an
    importable package implies a self-consistent seed.
    """
    return load_kb(seed_text())
