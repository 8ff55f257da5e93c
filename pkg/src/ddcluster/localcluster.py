"""Local cluster centers and density-descent assignment.

A point is a local cluster center when its separation distance exceeds the
cutoff (delta_i > d_c) and its density exceeds the global mean density
(rho_i > rho_bar), both strict.  When no point qualifies, the single
densest point (ties broken by index) is used instead and a RuntimeWarning
is issued.

Assignment then walks points in descending density order: each non-center
point inherits the label of its nearest denser neighbour, which has always
been labeled earlier.  The walk is deterministic, so identical inputs give
identical labelings.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import _pairwise
from .dataset import PointSet
from .density import DensityProfile


@dataclass(frozen=True)
class LocalClustering:
    """A partition of all points into local clusters.

    ``centers`` holds point indices; cluster ids are positions in it, so
    ``labels[centers[k]] == k``.  ``rho_bar`` is the global mean density
    used during selection.
    """

    centers: np.ndarray
    labels: np.ndarray
    rho_bar: float

    @property
    def n_clusters(self) -> int:
        return self.centers.shape[0]


def select_local_centers(profile: DensityProfile, d_c: float) -> np.ndarray:
    """Indices (ascending) of points with delta > d_c and rho > mean rho."""
    rho_bar = float(np.mean(profile.rho))
    chosen = np.flatnonzero((profile.delta > d_c) & (profile.rho > rho_bar))
    if chosen.size == 0:
        warnings.warn(
            "no point passes the center rule (delta > d_c and rho > mean rho); "
            "falling back to the single densest point",
            RuntimeWarning,
            stacklevel=2,
        )
        chosen = profile.order[:1]
    return chosen.astype(np.int64)


def assign_points(ps: PointSet, profile: DensityProfile, centers: np.ndarray) -> LocalClustering:
    """Label every point by density descent from the given centers.

    Centers are labeled first (cluster id = position in ``centers``).  The
    remaining points, visited in descending density order, take the label
    of their nearest denser neighbour.  If the densest point is not itself
    a center it joins the nearest center (ties to the smaller index).
    """
    centers = np.asarray(centers, dtype=np.int64)
    if centers.size == 0:
        raise ValueError("centers must be non-empty")
    if np.unique(centers).size != centers.size:
        raise ValueError("centers must be distinct")
    n = profile.n
    labels = np.full(n, -1, dtype=np.int64)
    labels[centers] = np.arange(centers.size, dtype=np.int64)
    for i in profile.order:
        if labels[i] >= 0:
            continue
        j = profile.nhd[i]
        if j < 0:
            # Densest point without a center mark: nearest center wins.
            dist = _pairwise.distance_rows(ps.points[i : i + 1], ps.points[centers])[0]
            labels[i] = labels[centers[int(np.argmin(dist))]]
        else:
            labels[i] = labels[j]
    return LocalClustering(
        centers=centers,
        labels=labels,
        rho_bar=float(np.mean(profile.rho)),
    )
