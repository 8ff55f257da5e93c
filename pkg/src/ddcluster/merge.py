"""Core-point connectivity and the full two-stage clustering pipeline.

Local clusters produced by density descent are merged whenever they are
density connectable: cluster k and cluster l get an edge when some core
point of k lies strictly within the cutoff distance of some core point of
l.  A point is core exactly when its density exceeds the mean density of
its own local cluster (strict), so a singleton local cluster has no core
points.  Final clusters are the connected components of this graph.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import _pairwise
from .dataset import PointSet, cutoff_from_ratio
from .density import DensityProfile, compute_profile
from .errors import ParseError
from .localcluster import LocalClustering, assign_points, select_local_centers


@dataclass(frozen=True)
class MergedClustering:
    """Final clustering plus the intermediate stages that produced it.

    ``local_to_final[k]`` maps local cluster k to its final cluster id.
    Final ids are ordered by the smallest local id each component contains,
    so they are stable under any relabeling of the merge graph.
    ``final_centers[c]`` is the point index of the densest local center in
    component c (density ties broken by smallest point index).
    """

    final_labels: np.ndarray
    local_to_final: np.ndarray
    final_centers: np.ndarray
    is_core: np.ndarray
    n_clusters: int
    local: LocalClustering
    profile: DensityProfile


class _UnionFind:
    """Disjoint sets over range(n) with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def classify_core_border(lc: LocalClustering, profile: DensityProfile) -> np.ndarray:
    """Boolean core flags: denser than one's own local-cluster mean density.

    The comparison is strict, so every point of an equal-density cluster is
    border, as is the single point of a singleton cluster.
    """
    counts = np.bincount(lc.labels, minlength=lc.n_clusters)
    sums = np.bincount(lc.labels, weights=profile.rho, minlength=lc.n_clusters)
    means = sums / counts
    return profile.rho > means[lc.labels]


def build_connectivity(
    ps: PointSet, lc: LocalClustering, is_core: np.ndarray, d_c: float
) -> np.ndarray:
    """Symmetric boolean adjacency over local cluster ids.

    Clusters k != l are adjacent when some core point of k is strictly
    within d_c of some core point of l.
    """
    n_local = lc.n_clusters
    adj = np.zeros((n_local, n_local), dtype=bool)
    cores = np.flatnonzero(is_core)
    if cores.size == 0:
        return adj
    core_pts = ps.points[cores]
    core_lab = lc.labels[cores]
    spans = _pairwise.block_spans(cores.size, cores.size)

    def block(a: int, b: int):
        dist = _pairwise.distance_rows(core_pts[a:b], core_pts)
        hit = (dist < d_c) & (core_lab[a:b, None] != core_lab[None, :])
        rows, cols = np.nonzero(hit)
        return core_lab[a + rows], core_lab[cols]

    for lab_a, lab_b in _pairwise.map_blocks(block, spans):
        adj[lab_a, lab_b] = True
    adj |= adj.T
    np.fill_diagonal(adj, False)
    return adj


def merge_connected(
    adjacency: np.ndarray, lc: LocalClustering, profile: DensityProfile
) -> MergedClustering:
    """Merge local clusters along adjacency into final clusters."""
    n_local = lc.n_clusters
    uf = _UnionFind(n_local)
    for k in range(n_local):
        for l in range(k + 1, n_local):
            if adjacency[k, l]:
                uf.union(k, l)

    # Components take the smallest local id they contain; final ids follow
    # the ascending order of those representatives.
    root_min: dict = {}
    for k in range(n_local):
        r = uf.find(k)
        if r not in root_min or k < root_min[r]:
            root_min[r] = k
    reps = sorted(root_min.values())
    rep_to_final = {rep: c for c, rep in enumerate(reps)}
    local_to_final = np.empty(n_local, dtype=np.int64)
    for k in range(n_local):
        local_to_final[k] = rep_to_final[root_min[uf.find(k)]]

    final_labels = local_to_final[lc.labels]
    n_clusters = len(reps)

    final_centers = np.empty(n_clusters, dtype=np.int64)
    for c in range(n_clusters):
        members = lc.centers[local_to_final == c]
        best = -1
        for idx in np.sort(members):
            if best < 0 or profile.rho[idx] > profile.rho[best]:
                best = int(idx)
        final_centers[c] = best

    return MergedClustering(
        final_labels=final_labels,
        local_to_final=local_to_final,
        final_centers=final_centers,
        is_core=classify_core_border(lc, profile),
        n_clusters=n_clusters,
        local=lc,
        profile=profile,
    )


def ddc_cluster(ps: PointSet, ratio: float = 0.1) -> MergedClustering:
    """Run the full pipeline: cutoff, profile, local clusters, merge."""
    params = cutoff_from_ratio(ps, ratio)
    profile = compute_profile(ps, params.d_c)
    centers = select_local_centers(profile, params.d_c)
    lc = assign_points(ps, profile, centers)
    is_core = classify_core_border(lc, profile)
    adjacency = build_connectivity(ps, lc, is_core, params.d_c)
    return merge_connected(adjacency, lc, profile)


_RESULT_HEADER = ["index", "x", "y", "local_label", "final_label", "is_core", "is_center"]


def write_result_csv(
    ps: PointSet,
    final_labels: np.ndarray,
    path: str,
    local_labels: np.ndarray = None,
    is_core: np.ndarray = None,
    center_indices: np.ndarray = None,
) -> None:
    """Write per-point results with the shared result-CSV schema.

    Missing columns (no local stage, no core notion, no marked centers)
    are written as zeros; ``local_labels`` defaults to ``final_labels``.
    """
    n = ps.n
    if local_labels is None:
        local_labels = final_labels
    center_mark = np.zeros(n, dtype=np.int64)
    if center_indices is not None and len(center_indices) > 0:
        center_mark[np.asarray(center_indices, dtype=np.int64)] = 1
    core_mark = (
        np.asarray(is_core, dtype=bool).astype(np.int64)
        if is_core is not None
        else np.zeros(n, dtype=np.int64)
    )
    lines = [",".join(_RESULT_HEADER)]
    for i in range(n):
        x = repr(float(ps.points[i, 0]))
        y = repr(float(ps.points[i, 1])) if ps.d > 1 else repr(0.0)
        lines.append(
            f"{i},{x},{y},{int(local_labels[i])},{int(final_labels[i])},"
            f"{int(core_mark[i])},{int(center_mark[i])}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_result_csv(path: str) -> dict:
    """Read a result CSV back into arrays keyed like the header."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]
    if not rows or [c.strip() for c in rows[0]] != _RESULT_HEADER:
        raise ParseError(f"{path}: expected header {','.join(_RESULT_HEADER)!r}")
    cols = {name: [] for name in _RESULT_HEADER}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(_RESULT_HEADER):
            raise ParseError(
                f"{path}:{lineno}: expected {len(_RESULT_HEADER)} fields, got {len(row)}"
            )
        try:
            cols["index"].append(int(row[0]))
            cols["x"].append(float(row[1]))
            cols["y"].append(float(row[2]))
            cols["local_label"].append(int(row[3]))
            cols["final_label"].append(int(row[4]))
            cols["is_core"].append(int(row[5]))
            cols["is_center"].append(int(row[6]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad result row") from None
    out = {
        "index": np.asarray(cols["index"], dtype=np.int64),
        "points": np.column_stack(
            (
                np.asarray(cols["x"], dtype=np.float64),
                np.asarray(cols["y"], dtype=np.float64),
            )
        )
        if cols["x"]
        else np.empty((0, 2), dtype=np.float64),
        "local_label": np.asarray(cols["local_label"], dtype=np.int64),
        "final_label": np.asarray(cols["final_label"], dtype=np.int64),
        "is_core": np.asarray(cols["is_core"], dtype=np.int64).astype(bool),
        "is_center": np.asarray(cols["is_center"], dtype=np.int64).astype(bool),
    }
    return out
