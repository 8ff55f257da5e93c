"""Local density, separation distance, and the decision graph.

For a cutoff distance d_c, every point gets a Gaussian-kernel density

    rho_i = sum_{j != i} exp(-(d_ij / d_c)^2)

and a separation distance delta_i: the distance to the nearest point with
strictly higher density.  Exact density ties are broken by point index
(lower index counts as denser), which makes the "denser than" relation a
total order.  The unique globally densest point has no denser neighbour;
its delta is the maximum pairwise distance and its nhd is the sentinel -1.
"""

import csv
from dataclasses import dataclass

import numpy as np

from . import _pairwise
from .dataset import PointSet
from .errors import DegenerateGeometryError, DegenerateInputError, ParseError


@dataclass(frozen=True)
class DensityProfile:
    """Per-point density statistics for one cutoff distance.

    ``nhd[i]`` is the index of the nearest point denser than i (distance
    ties broken by smallest index), or -1 for the densest point.  ``order``
    is the permutation sorting points by descending density, index-ascending
    among exact ties.
    """

    rho: np.ndarray
    delta: np.ndarray
    nhd: np.ndarray
    d_c: float
    order: np.ndarray

    @property
    def n(self) -> int:
        return self.rho.shape[0]


def _check_inputs(ps: PointSet, d_c: float) -> None:
    if ps.n < 2:
        raise DegenerateInputError(f"need at least 2 points, got {ps.n}")
    if not (d_c > 0.0):
        raise ValueError(f"d_c must be positive, got {d_c}")


def compute_rho(ps: PointSet, d_c: float) -> np.ndarray:
    """Gaussian-kernel density of every point (self excluded)."""
    _check_inputs(ps, d_c)
    rho, _ = _rho_pass(ps.points, d_c)
    return rho


def _rho_pass(pts: np.ndarray, d_c: float):
    """One blocked pass: densities plus the maximum pairwise distance."""
    n = pts.shape[0]
    spans = _pairwise.block_spans(n, n)

    def block(a: int, b: int):
        dist = _pairwise.distance_rows(pts[a:b], pts)
        dmax = float(dist.max())
        dist /= d_c
        dist *= dist
        np.negative(dist, out=dist)
        np.exp(dist, out=dist)
        # Remove each row's self term, exp(0) = 1.
        dist[np.arange(b - a), np.arange(a, b)] = 0.0
        return dist.sum(axis=1), dmax

    parts = _pairwise.map_blocks(block, spans)
    rho = np.concatenate([p[0] for p in parts])
    max_dist = max(p[1] for p in parts)
    return rho, max_dist


def compute_profile(ps: PointSet, d_c: float) -> DensityProfile:
    """Densities, separation distances, and nearest denser neighbours."""
    _check_inputs(ps, d_c)
    pts = ps.points
    n = ps.n
    rho, max_dist = _rho_pass(pts, d_c)
    if max_dist == 0.0:
        raise DegenerateGeometryError("all points coincident")

    # Stable argsort on -rho: descending density, ascending index on ties.
    order = np.argsort(-rho, kind="stable").astype(np.int64)

    all_idx = np.arange(n, dtype=np.int64)
    delta = np.empty(n, dtype=np.float64)
    nhd = np.empty(n, dtype=np.int64)
    spans = _pairwise.block_spans(n, n)

    def block(a: int, b: int):
        dist = _pairwise.distance_rows(pts[a:b], pts)
        rows_rho = rho[a:b, None]
        rows_idx = all_idx[a:b, None]
        denser = (rho[None, :] > rows_rho) | (
            (rho[None, :] == rows_rho) & (all_idx[None, :] < rows_idx)
        )
        dist[~denser] = np.inf
        # argmin returns the first (lowest-index) minimiser, which is the
        # distance tie-break the rest of the pipeline assumes.
        delta[a:b] = dist.min(axis=1)
        nhd[a:b] = dist.argmin(axis=1)
        return None

    _pairwise.map_blocks(block, spans)

    densest = int(order[0])
    delta[densest] = max_dist
    nhd[densest] = -1
    return DensityProfile(rho=rho, delta=delta, nhd=nhd, d_c=float(d_c), order=order)


def decision_graph(profile: DensityProfile):
    """(index, rho, delta) rows for plotting density against separation."""
    return [
        (int(i), float(profile.rho[i]), float(profile.delta[i]))
        for i in range(profile.n)
    ]


def write_decision_csv(profile: DensityProfile, path: str) -> None:
    """Write the decision graph as CSV with header ``index,rho,delta``."""
    lines = ["index,rho,delta"]
    for i, rho, delta in decision_graph(profile):
        lines.append(f"{i},{rho!r},{delta!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_decision_csv(path: str):
    """Read a decision-graph CSV back into (index, rho, delta) arrays."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]
    if not rows or [c.strip() for c in rows[0]] != ["index", "rho", "delta"]:
        raise ParseError(f"{path}: expected header 'index,rho,delta'")
    idx = []
    rho = []
    delta = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ParseError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
        try:
            idx.append(int(row[0]))
            rho.append(float(row[1]))
            delta.append(float(row[2]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad decision-graph row") from None
    return (
        np.asarray(idx, dtype=np.int64),
        np.asarray(rho, dtype=np.float64),
        np.asarray(delta, dtype=np.float64),
    )
