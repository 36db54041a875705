"""Deterministic ordered parallel map.

The worker count comes from ``LFORGE_THREADS`` (default 1). Results are always
returned in input order, so output never depends on the worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("LFORGE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"LFORGE_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def ordered_map(fn, items) -> list:
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
