"""Reference clusterers: DBSCAN, single-stage DenPeak, and k-means.

These exist for side-by-side comparison, so their conventions are pinned
down tightly enough to be reproduced by an independent implementation:
scan orders are ascending by point index, ties resolve to the smallest
index, and every random choice flows from one seeded generator.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _pairwise
from .dataset import PointSet
from .density import compute_profile
from .errors import DegenerateGeometryError, DegenerateInputError
from .localcluster import assign_points


@dataclass(frozen=True)
class BaselineResult:
    """Labels plus an echo of the effective parameters.

    Noise (DBSCAN only) is labeled -1; non-noise labels are contiguous ids
    in [0, n_clusters).  ``centers`` and ``is_core`` are filled only where
    the algorithm has those notions.
    """

    labels: np.ndarray
    n_clusters: int
    params: dict = field(default_factory=dict)
    centers: Optional[np.ndarray] = None
    is_core: Optional[np.ndarray] = None


def _neighbor_lists(pts: np.ndarray, eps: float):
    """Indices within eps of each point (inclusive, self included)."""
    n = pts.shape[0]
    neighbors = [None] * n
    spans = _pairwise.block_spans(n, n)

    def block(a: int, b: int):
        dist = _pairwise.distance_rows(pts[a:b], pts)
        close = dist <= eps
        for r in range(b - a):
            neighbors[a + r] = np.flatnonzero(close[r])
        return None

    _pairwise.map_blocks(block, spans)
    return neighbors


def dbscan(ps: PointSet, eps: float, min_pts: int) -> BaselineResult:
    """Classic DBSCAN with a fixed, reproducible traversal.

    A point is core when at least ``min_pts`` points (itself included) lie
    within ``eps``.  Unvisited core points are scanned in ascending index
    order; each seeds a breadth-first expansion over core neighbours.
    Border points stick with the first cluster that reaches them; points
    never reached stay noise (-1).
    """
    if not (eps > 0.0):
        raise ValueError(f"eps must be positive, got {eps}")
    if min_pts < 1:
        raise ValueError(f"min_pts must be >= 1, got {min_pts}")
    if ps.n < 1:
        raise DegenerateInputError("need at least 1 point")
    neighbors = _neighbor_lists(ps.points, eps)
    counts = np.array([len(nb) for nb in neighbors])
    core = counts >= min_pts
    n = ps.n
    labels = np.full(n, -1, dtype=np.int64)
    cluster = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = cluster
        queue = deque([i])
        while queue:
            j = queue.popleft()
            for m in neighbors[j]:
                if labels[m] == -1:
                    labels[m] = cluster
                    if core[m]:
                        queue.append(int(m))
        cluster += 1
    return BaselineResult(
        labels=labels,
        n_clusters=cluster,
        params={"eps": float(eps), "min_pts": int(min_pts)},
        is_core=core,
    )


def dbscan_auto_params(ps: PointSet):
    """(eps, min_pts) heuristic: median 4th-neighbour distance, min_pts 4.

    Each point's distance to its 4th-nearest other point is collected; eps
    is the median of those values, taking the lower of the two middle
    values when n is even.  Requires n >= 5.
    """
    n = ps.n
    if n < 5:
        raise DegenerateInputError(f"need at least 5 points for 4th neighbours, got {n}")
    pts = ps.points
    fourth = np.empty(n, dtype=np.float64)
    spans = _pairwise.block_spans(n, n)

    def block(a: int, b: int):
        dist = _pairwise.distance_rows(pts[a:b], pts)
        dist[np.arange(b - a), np.arange(a, b)] = np.inf
        part = np.partition(dist, 3, axis=1)
        fourth[a:b] = part[:, 3]
        return None

    _pairwise.map_blocks(block, spans)
    eps = float(np.sort(fourth)[(n - 1) // 2])
    if eps <= 0.0:
        raise DegenerateGeometryError("median 4th-neighbour distance is 0")
    return eps, 4


def denpeak(ps: PointSet, d_c: float, k: int) -> BaselineResult:
    """Single-stage density-peak clustering with k picked centers.

    Centers are the k points with the largest gamma = rho * delta (ties to
    the smaller index); everything else follows its nearest denser
    neighbour, exactly as in the local-cluster stage.
    """
    if not (1 <= k <= ps.n):
        raise ValueError(f"k must be in [1, {ps.n}], got {k}")
    profile = compute_profile(ps, d_c)
    gamma = profile.rho * profile.delta
    top = np.argsort(-gamma, kind="stable")[:k]
    centers = np.sort(top).astype(np.int64)
    lc = assign_points(ps, profile, centers)
    return BaselineResult(
        labels=lc.labels,
        n_clusters=k,
        params={"d_c": float(d_c), "k": int(k)},
        centers=centers,
    )


def denpeak_auto_dc(ps: PointSet) -> float:
    """Cutoff heuristic: the 1-based element at ceil(0.01 * n * n / 2) of
    the ascending sorted pairwise distances, i.e. roughly the distance that
    gives each point about n/100 neighbours."""
    n = ps.n
    if n < 2:
        raise DegenerateInputError(f"need at least 2 points, got {n}")
    pts = ps.points
    spans = _pairwise.block_spans(n, n)

    def block(a: int, b: int):
        dist = _pairwise.distance_rows(pts[a:b], pts)
        rows = [dist[r, a + r + 1 :] for r in range(b - a) if a + r + 1 < n]
        return np.concatenate(rows) if rows else np.empty(0)

    upper = np.concatenate(_pairwise.map_blocks(block, spans))
    m = upper.size
    pos = min(max(math.ceil(0.01 * n * n / 2), 1), m)
    d_c = float(np.partition(upper, pos - 1)[pos - 1])
    if d_c <= 0.0:
        raise DegenerateGeometryError("auto cutoff position falls on a zero distance")
    return d_c


def kmeans(ps: PointSet, k: int, seed: int = 0, max_iter: int = 300) -> BaselineResult:
    """Lloyd's algorithm with greedy D^2 (k-means++ style) seeding.

    All randomness comes from ``numpy.random.default_rng(seed)``; ties in
    the assignment step go to the smaller cluster id.  An emptied cluster
    is re-seeded with the point farthest from its assigned center.
    """
    n = ps.n
    if not (1 <= k <= n):
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    pts = ps.points
    rng = np.random.default_rng(seed)

    centers = np.empty((k, ps.d), dtype=np.float64)
    centers[0] = pts[int(rng.integers(n))]
    d2 = ((pts - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total > 0.0:
            pick = int(rng.choice(n, p=d2 / total))
        else:
            pick = int(rng.integers(n))
        centers[c] = pts[pick]
        d2 = np.minimum(d2, ((pts - centers[c]) ** 2).sum(axis=1))

    labels = np.full(n, -1, dtype=np.int64)
    for _ in range(max_iter):
        dist2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = dist2.argmin(axis=1).astype(np.int64)
        best2 = dist2[np.arange(n), new_labels]
        counts = np.bincount(new_labels, minlength=k)
        for c in np.flatnonzero(counts == 0):
            far = int(np.argmax(best2))
            new_labels[far] = c
            best2[far] = -1.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = pts[labels == c]
            if members.shape[0]:
                centers[c] = members.mean(axis=0)
    return BaselineResult(
        labels=labels,
        n_clusters=k,
        params={"k": int(k), "seed": int(seed), "max_iter": int(max_iter)},
    )
