"""Point-set container, file formats, cutoff selection, and synthetic data.

Two on-disk formats are supported:

* CSV with an optional header ``x,y[,label]`` (``x0,x1,...`` for d != 2).
  Floats are written with ``repr``, i.e. the shortest decimal string that
  round-trips, so save/load preserves coordinates exactly.
* A little-endian binary format: magic ``DDCP``, u32 version (1), u64 n,
  u32 d, u8 label flag, then n*d float64 coordinates and, when the flag is
  set, n int64 labels.
"""

import math
import struct
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import _pairwise
from .errors import DegenerateGeometryError, DegenerateInputError, ParseError

_MAGIC = b"DDCP"
_BINARY_VERSION = 1

_HEADER_FMT = "<4sIQIB"
_HEADER_SIZE = struct.calcsize(_HEADER_FMT)


@dataclass(frozen=True)
class PointSet:
    """An ordered set of d-dimensional points with optional integer labels.

    ``points`` is an (n, d) float64 array with finite entries; ``labels``,
    when present, is an (n,) int64 array.  Label -1 conventionally marks
    noise or "no class".
    """

    points: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError(f"points must be 2-D (n, d), got shape {pts.shape}")
        if pts.shape[1] < 1:
            raise ValueError("points must have at least one dimension")
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.shape != (pts.shape[0],):
                raise ValueError(
                    f"labels must have shape ({pts.shape[0]},), got {lab.shape}"
                )
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class CutoffParams:
    """A cutoff distance together with the quantities that produced it."""

    ratio: float
    d_bar: float
    d_c: float


def _coord_names(d: int) -> list:
    if d == 2:
        return ["x", "y"]
    return [f"x{k}" for k in range(d)]


def _float_field(token: str, path: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: not a number: {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"{path}:{lineno}: non-finite value: {token!r}")
    return value


def _int_field(token: str, path: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: label must be an integer: {token!r}") from None


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _load_csv(path: str, labels: Union[str, bool]) -> PointSet:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    rows = [
        (i + 1, line)
        for i, line in enumerate(lines)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError(f"{path}: empty file (no header, no rows)")

    first_no, first = rows[0]
    first_fields = [t.strip() for t in first.split(",")]
    has_header = not all(_is_float(t) for t in first_fields)

    if has_header:
        header = first_fields
        if any(not name for name in header):
            raise ParseError(f"{path}:{first_no}: malformed header: empty column name")
        if any(_is_float(name) for name in header):
            raise ParseError(
                f"{path}:{first_no}: malformed header: numeric column name"
            )
        if "label" in header[:-1]:
            raise ParseError(
                f"{path}:{first_no}: malformed header: 'label' must be the last column"
            )
        header_labeled = header[-1] == "label"
        n_cols = len(header)
        data_rows = rows[1:]
    else:
        header_labeled = False
        n_cols = len(first_fields)
        data_rows = rows

    if labels == "auto":
        with_labels = header_labeled
    else:
        with_labels = bool(labels)
    if with_labels and n_cols < 2:
        raise ParseError(f"{path}: label column requested but only one column present")

    d = n_cols - 1 if with_labels else n_cols
    coords = []
    labs = []
    for lineno, line in data_rows:
        fields = [t.strip() for t in line.split(",")]
        if len(fields) != n_cols:
            raise ParseError(
                f"{path}:{lineno}: expected {n_cols} fields, got {len(fields)}"
            )
        coords.append([_float_field(t, path, lineno) for t in fields[:d]])
        if with_labels:
            labs.append(_int_field(fields[-1], path, lineno))

    points = np.asarray(coords, dtype=np.float64).reshape(len(coords), d)
    return PointSet(points, np.asarray(labs, dtype=np.int64) if with_labels else None)


def _load_binary(path: str) -> PointSet:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER_SIZE:
        raise ParseError(f"{path}: truncated header ({len(blob)} bytes)")
    magic, version, n, d, flag = struct.unpack_from(_HEADER_FMT, blob)
    if magic != _MAGIC:
        raise ParseError(f"{path}: bad magic {magic!r}")
    if version != _BINARY_VERSION:
        raise ParseError(f"{path}: unsupported version {version}")
    if flag not in (0, 1):
        raise ParseError(f"{path}: bad label flag {flag}")
    if d < 1:
        raise ParseError(f"{path}: dimension must be >= 1, got {d}")
    expected = _HEADER_SIZE + 8 * n * d + (8 * n if flag else 0)
    if len(blob) != expected:
        raise ParseError(f"{path}: expected {expected} bytes, got {len(blob)}")
    off = _HEADER_SIZE
    points = np.frombuffer(blob, dtype="<f8", count=n * d, offset=off)
    points = points.reshape(n, d).astype(np.float64)
    labs = None
    if flag:
        off += 8 * n * d
        labs = np.frombuffer(blob, dtype="<i8", count=n, offset=off).astype(np.int64)
    if points.size and not np.all(np.isfinite(points)):
        raise ParseError(f"{path}: non-finite coordinate")
    return PointSet(points, labs)


def sniff_format(path: str) -> str:
    """Guess the on-disk format ("binary" or "csv") from the leading magic."""
    with open(path, "rb") as fh:
        head = fh.read(4)
    return "binary" if head == _MAGIC else "csv"


def load_points(path: str, format: str = "auto", labels: Union[str, bool] = "auto") -> PointSet:
    """Read a point file.

    ``format`` is "csv", "binary", or "auto" (sniff the binary magic).
    ``labels`` controls the CSV label column: "auto" follows the header,
    True forces the last column to be labels, False ignores any label
    column.  CSV lines starting with ``#`` are comments and are skipped.
    Binary files carry an explicit label flag.
    """
    if format == "auto":
        format = sniff_format(path)
    if format == "binary":
        return _load_binary(path)
    if format == "csv":
        return _load_csv(path, labels)
    raise ValueError(f"unknown format {format!r}")


def save_points(ps: PointSet, path: str, format: str = "csv") -> None:
    """Write a point file in the given format ("csv" or "binary")."""
    if format == "csv":
        names = _coord_names(ps.d)
        if ps.labels is not None:
            names = names + ["label"]
        out = [",".join(names)]
        labs = ps.labels
        for i in range(ps.n):
            row = [repr(float(v)) for v in ps.points[i]]
            if labs is not None:
                row.append(str(int(labs[i])))
            out.append(",".join(row))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(out) + "\n")
    elif format == "binary":
        flag = 1 if ps.labels is not None else 0
        head = struct.pack(_HEADER_FMT, _MAGIC, _BINARY_VERSION, ps.n, ps.d, flag)
        with open(path, "wb") as fh:
            fh.write(head)
            fh.write(np.ascontiguousarray(ps.points, dtype="<f8").tobytes())
            if flag:
                fh.write(np.ascontiguousarray(ps.labels, dtype="<i8").tobytes())
    else:
        raise ValueError(f"unknown format {format!r}")


def mean_pairwise_distance(ps: PointSet) -> float:
    """Mean Euclidean distance over the n(n-1)/2 unordered point pairs."""
    n = ps.n
    if n < 2:
        raise DegenerateInputError(f"need at least 2 points, got {n}")
    pts = ps.points
    spans = _pairwise.block_spans(n, n)

    def block_sum(a: int, b: int) -> float:
        dist = _pairwise.distance_rows(pts[a:b], pts)
        total = 0.0
        for r in range(b - a):
            g = a + r
            if g + 1 < n:
                total += float(np.sum(dist[r, g + 1 :]))
        return total

    total = math.fsum(_pairwise.map_blocks(block_sum, spans))
    mean = 2.0 * total / (n * (n - 1))
    if mean == 0.0:
        raise DegenerateGeometryError("all points coincident; mean pairwise distance is 0")
    return mean


def cutoff_from_ratio(ps: PointSet, ratio: float) -> CutoffParams:
    """Cutoff distance d_c = mean pairwise distance times ``ratio``."""
    if not (ratio > 0.0):
        raise ValueError(f"ratio must be positive, got {ratio}")
    d_bar = mean_pairwise_distance(ps)
    return CutoffParams(ratio=ratio, d_bar=d_bar, d_c=d_bar * ratio)


def generate_twomoon(n: int, noise: float, seed: int) -> PointSet:
    """Two interleaving half-circle arcs with Gaussian coordinate noise.

    The first arc is the upper half of the unit circle; the second is its
    half-turn image shifted by (1.0, -0.5), giving the usual pair of
    interlocking moons.  Labels are 0 for the first arc, 1 for the second.
    """
    if n < 2:
        raise DegenerateInputError(f"need n >= 2, got {n}")
    if noise < 0:
        raise ValueError(f"noise must be >= 0, got {noise}")
    n_a = (n + 1) // 2
    n_b = n - n_a
    t_a = np.linspace(0.0, np.pi, n_a)
    t_b = np.linspace(0.0, np.pi, n_b)
    points = np.empty((n, 2), dtype=np.float64)
    points[:n_a, 0] = np.cos(t_a)
    points[:n_a, 1] = np.sin(t_a)
    points[n_a:, 0] = 1.0 - np.cos(t_b)
    points[n_a:, 1] = 0.5 - np.sin(t_b)
    if noise > 0:
        rng = np.random.default_rng(seed)
        points += rng.normal(0.0, noise, size=(n, 2))
    labels = np.repeat(np.int64([0, 1]), [n_a, n_b])
    return PointSet(points, labels)


_SHAPE_DEFAULTS = {
    "flame_like": {"n": 1000, "noise": 0.03},
    "t4_like": {"n": 4000, "noise_frac": 0.05, "jitter": 0.12},
    "blobs": {"centers": ((0.0, 0.0), (20.0, 0.0)), "n_per": 100, "cluster_std": 0.1},
}


def _flame_like(n: int, noise: float, rng) -> PointSet:
    # A dense round blob in the hollow of a larger crescent, the rough
    # silhouette of a candle flame.  Arc angles are evenly spaced: random
    # angle draws clump, and the resulting density dips fragment the
    # crescent.  The blob spread is matched to the crescent's density so
    # neither side hogs the mean-density threshold, and the gap stays a
    # few cutoff distances wide.
    if n < 10:
        raise DegenerateInputError(f"flame_like needs n >= 10, got {n}")
    n_arc = int(round(0.7 * n))
    n_blob = n - n_arc
    theta = np.linspace(np.pi + 0.45, 2.0 * np.pi - 0.45, n_arc)
    radius = 1.0 + rng.normal(0.0, noise, size=n_arc)
    arc = np.column_stack((radius * np.cos(theta), 1.0 + radius * np.sin(theta)))
    blob = rng.normal(0.0, 0.11, size=(n_blob, 2)) + np.array([0.0, 0.55])
    points = np.vstack((arc, blob))
    labels = np.repeat(np.int64([0, 1]), [n_arc, n_blob])
    return PointSet(points, labels)


def _t4_like(n: int, noise_frac: float, jitter: float, rng) -> PointSet:
    # Four long wavy horizontal bands plus uniform background noise
    # (label -1).  Band x positions are evenly spaced with jitter for the
    # same reason the flame arc is; the gentle sine keeps per-arc-length
    # density even, so band segments share core points and merge.
    if n < 40:
        raise DegenerateInputError(f"t4_like needs n >= 40, got {n}")
    if not (0.0 <= noise_frac < 1.0):
        raise ValueError(f"noise_frac must be in [0, 1), got {noise_frac}")
    n_noise = int(round(noise_frac * n))
    n_bands = n - n_noise
    base = n_bands // 4
    counts = [base, base, base, n_bands - 3 * base]
    phases = (0.0, 2.1, 4.2, 0.7)
    pieces = []
    labels = []
    for c, (count, phase) in enumerate(zip(counts, phases)):
        x = np.linspace(0.0, 10.0, count) + rng.normal(0.0, jitter, size=count)
        y = 3.0 * c + 0.5 * np.sin(0.5 * x + phase) + rng.normal(0.0, jitter, size=count)
        pieces.append(np.column_stack((x, y)))
        labels.append(np.full(count, c, dtype=np.int64))
    if n_noise:
        nx = rng.uniform(-0.5, 10.5, size=n_noise)
        ny = rng.uniform(-1.5, 10.5, size=n_noise)
        pieces.append(np.column_stack((nx, ny)))
        labels.append(np.full(n_noise, -1, dtype=np.int64))
    return PointSet(np.vstack(pieces), np.concatenate(labels))


def _blobs(centers, n_per: int, cluster_std, rng) -> PointSet:
    centers = np.asarray(centers, dtype=np.float64)
    if centers.ndim != 2 or centers.shape[0] < 1:
        raise ValueError("centers must be a non-empty sequence of coordinate pairs")
    if n_per < 1:
        raise DegenerateInputError(f"n_per must be >= 1, got {n_per}")
    stds = np.broadcast_to(np.asarray(cluster_std, dtype=np.float64), (centers.shape[0],))
    pieces = []
    labels = []
    for c in range(centers.shape[0]):
        pieces.append(rng.normal(0.0, stds[c], size=(n_per, centers.shape[1])) + centers[c])
        labels.append(np.full(n_per, c, dtype=np.int64))
    return PointSet(np.vstack(pieces), np.concatenate(labels))


def generate_shapes(kind: str, params: Optional[dict] = None, seed: int = 0) -> PointSet:
    """Synthetic benchmark shapes: "flame_like", "t4_like", or "blobs".

    ``params`` overrides the per-kind defaults:

    * flame_like: n, noise
    * t4_like: n, noise_frac, jitter (background noise is labeled -1)
    * blobs: centers, n_per, cluster_std
    """
    if kind not in _SHAPE_DEFAULTS:
        raise ValueError(f"unknown kind {kind!r}")
    merged = dict(_SHAPE_DEFAULTS[kind])
    for key, value in (params or {}).items():
        if key not in merged:
            raise ValueError(f"unknown {kind} parameter {key!r}")
        merged[key] = value
    rng = np.random.default_rng(seed)
    if kind == "flame_like":
        return _flame_like(int(merged["n"]), float(merged["noise"]), rng)
    if kind == "t4_like":
        return _t4_like(
            int(merged["n"]), float(merged["noise_frac"]), float(merged["jitter"]), rng
        )
    return _blobs(merged["centers"], int(merged["n_per"]), merged["cluster_std"], rng)
