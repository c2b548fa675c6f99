"""Size caps shared by the brute-force searches.

The defaults can be overridden through environment variables
(``AFFINE_MAX_RING_SIZE``, ``AFFINE_MAX_SEARCH_SIZE``, ``AFFINE_MAX_POINTS``)
or temporarily with :func:`override`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_ring_size: int = 256
    max_search_size: int = 64
    max_points: int = 8
    max_classes: int = 12
    max_candidate_charts: int = 14
    max_structure_points: int = 6


def _from_env() -> Limits:
    base = Limits()
    kw = {}
    for name, var in (
        ("max_ring_size", "AFFINE_MAX_RING_SIZE"),
        ("max_search_size", "AFFINE_MAX_SEARCH_SIZE"),
        ("max_points", "AFFINE_MAX_POINTS"),
    ):
        if var in os.environ:
            kw[name] = int(os.environ[var])
    return replace(base, **kw)


current = _from_env()


@contextmanager
def override(**kw):
    global current
    saved = current
    current = replace(current, **{k: v for k, v in kw.items() if v is not None})
    try:
        yield current
    finally:
        current = saved
