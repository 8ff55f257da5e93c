"""Blocked pairwise-distance passes shared by the density and baseline code.

All O(n^2) work in the package funnels through these helpers so that no full
n x n matrix is ever materialised: callers get row blocks of distances and
reduce them on the fly.  Distances are accumulated per dimension in index
order and finished with a square root; every caller (and the naive test
oracles) relies on that exact formula, so do not swap in a BLAS identity or
``hypot``-style rewrite.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

# Rows per block are sized so one float64 block stays around 16 MB.
_TARGET_BLOCK_ELEMS = 2_000_000

_MAX_DEFAULT_WORKERS = 8


def worker_count() -> int:
    """Number of worker threads for pairwise passes.

    Defaults to the CPU count (capped at 8).  The DDC_THREADS environment
    variable, when set to a positive integer, caps the value further.
    """
    workers = min(os.cpu_count() or 1, _MAX_DEFAULT_WORKERS)
    raw = os.environ.get("DDC_THREADS")
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            return workers
        if cap >= 1:
            workers = min(workers, cap)
    return workers


def block_spans(n: int, n_cols: int) -> list:
    """Split ``range(n)`` into row spans sized for ~16 MB distance blocks."""
    if n <= 0:
        return []
    rows = max(1, _TARGET_BLOCK_ELEMS // max(n_cols, 1))
    return [(a, min(a + rows, n)) for a in range(0, n, rows)]


def distance_rows(rows: np.ndarray, others: np.ndarray) -> np.ndarray:
    """Euclidean distances from each of ``rows`` to each of ``others``.

    Squared differences are accumulated dimension by dimension, in order,
    then rooted.  This keeps results bitwise-identical to a per-pair loop
    using the same accumulation order.
    """
    d2 = np.subtract.outer(rows[:, 0], others[:, 0])
    d2 *= d2
    for k in range(1, rows.shape[1]):
        diff = np.subtract.outer(rows[:, k], others[:, k])
        diff *= diff
        d2 += diff
    return np.sqrt(d2, out=d2)


def map_blocks(fn, spans):
    """Run ``fn(a, b)`` over row spans, returning results in span order.

    Results are ordered by span regardless of completion order, so any
    reduction over them is deterministic under threading.
    """
    if not spans:
        return []
    workers = min(worker_count(), len(spans))
    if workers <= 1:
        return [fn(a, b) for a, b in spans]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, a, b) for a, b in spans]
        return [f.result() for f in futures]
