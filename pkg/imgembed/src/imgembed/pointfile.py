"""Writers for the point-file formats the clustering toolkit reads.

Two formats, kept intentionally interchangeable with the ``ddcluster``
loaders:

* CSV: optional ``#`` comment lines, a ``x,y[,label]`` header, then one
  point per line with shortest-round-trip decimal coordinates.
* Binary: ``DDCP`` magic, version 1, little-endian; header
  ``<4sIQIB`` = (magic, version, n, d, label flag), then n*d float64
  coordinates and, when flagged, n int64 labels.
"""

import struct

import numpy as np

_MAGIC = b"DDCP"
_BINARY_VERSION = 1
_HEADER_FMT = "<4sIQIB"


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] < 1:
        raise ValueError(f"points must be 2-D (n, d), got shape {pts.shape}")
    if pts.size and not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def _as_labels(labels, n: int) -> np.ndarray:
    lab = np.asarray(labels, dtype=np.int64)
    if lab.shape != (n,):
        raise ValueError(f"labels must have shape ({n},), got {lab.shape}")
    return lab


def write_points_csv(path: str, points, labels=None, comment: str = "") -> None:
    """Write a labeled point CSV; ``comment`` lines go above the header."""
    pts = _as_points(points)
    lab = _as_labels(labels, pts.shape[0]) if labels is not None else None
    names = ["x", "y"] if pts.shape[1] == 2 else [f"x{k}" for k in range(pts.shape[1])]
    lines = [f"# {c}" for c in comment.splitlines() if c.strip()]
    lines.append(",".join(names + (["label"] if lab is not None else [])))
    for i in range(pts.shape[0]):
        row = [repr(float(v)) for v in pts[i]]
        if lab is not None:
            row.append(str(int(lab[i])))
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_points_binary(path: str, points, labels=None) -> None:
    pts = _as_points(points)
    lab = _as_labels(labels, pts.shape[0]) if labels is not None else None
    n, d = pts.shape
    blob = struct.pack(_HEADER_FMT, _MAGIC, _BINARY_VERSION, n, d, 1 if lab is not None else 0)
    blob += pts.astype("<f8").tobytes(order="C")
    if lab is not None:
        blob += lab.astype("<i8").tobytes()
    with open(path, "wb") as fh:
        fh.write(blob)


def write_points(path: str, points, labels=None, format: str = "csv", comment: str = "") -> None:
    """Write points in the named format ("csv" or "binary")."""
    if format == "csv":
        write_points_csv(path, points, labels, comment=comment)
    elif format == "binary":
        write_points_binary(path, points, labels)
    else:
        raise ValueError(f"unknown format {format!r}")
