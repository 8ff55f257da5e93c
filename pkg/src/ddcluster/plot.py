"""Static SVG figures: cluster scatters and decision graphs.

Documents are assembled as plain text, so identical inputs produce
byte-identical files.  No external renderer or library is involved.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .density import DensityProfile

# 12 distinguishable fills; cluster ids beyond the palette cycle.
_PALETTE = (
    "#e41a1c",
    "#377eb8",
    "#4daf4a",
    "#984ea3",
    "#ff7f00",
    "#a65628",
    "#f781bf",
    "#17becf",
    "#bcbd22",
    "#8c564b",
    "#e377c2",
    "#666666",
)

_NOISE_COLOR = "#999999"
_MARK_COLOR = "#000000"


@dataclass(frozen=True)
class FigureSpec:
    """Size, palette, and marker options for one figure."""

    width: int = 640
    height: int = 480
    palette: Sequence[str] = _PALETTE
    point_radius: float = 2.5
    center_size: float = 7.0
    show_centers: bool = True
    show_border: bool = True
    title: Optional[str] = None

    def __post_init__(self):
        if not self.palette:
            raise ValueError("palette must be non-empty")

    def color(self, label: int) -> str:
        if label < 0:
            return _NOISE_COLOR
        return self.palette[label % len(self.palette)]


def _axes(values_x, values_y, width, height, margin_frac=0.05):
    """Data-to-pixel mapping with a margin on every side."""
    lo_x, hi_x = float(np.min(values_x)), float(np.max(values_x))
    lo_y, hi_y = float(np.min(values_y)), float(np.max(values_y))
    span_x = hi_x - lo_x
    span_y = hi_y - lo_y
    if span_x == 0.0:
        span_x = 1.0
        lo_x -= 0.5
    if span_y == 0.0:
        span_y = 1.0
        lo_y -= 0.5
    pad_x = width * margin_frac
    pad_y = height * margin_frac
    scale_x = (width - 2 * pad_x) / span_x
    scale_y = (height - 2 * pad_y) / span_y

    def to_px(x, y):
        px = pad_x + (x - lo_x) * scale_x
        py = height - pad_y - (y - lo_y) * scale_y  # SVG y grows downward
        return px, py

    return to_px


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _document(width, height, title, body) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        head.append(
            f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _diamond(px: float, py: float, size: float) -> str:
    s = size / 2.0
    return (
        f'<path class="center" d="M {_fmt(px)} {_fmt(py - s)} L {_fmt(px + s)} {_fmt(py)} '
        f'L {_fmt(px)} {_fmt(py + s)} L {_fmt(px - s)} {_fmt(py)} Z" '
        f'fill="{_MARK_COLOR}"/>'
    )


def render_scatter(ps, result, spec: Optional[FigureSpec] = None) -> str:
    """Scatter of points colored by final cluster label.

    ``result`` may be a MergedClustering, a BaselineResult, or any object
    exposing ``final_labels``/``labels`` and optionally ``is_core`` and
    ``final_centers``/``centers`` (point indices).  Noise (-1) is gray;
    with ``show_border``, non-core points are black; with
    ``show_centers``, centers get black diamonds drawn last.
    """
    spec = spec or FigureSpec()
    labels = getattr(result, "final_labels", None)
    if labels is None:
        labels = result.labels
    is_core = getattr(result, "is_core", None)
    centers = getattr(result, "final_centers", None)
    if centers is None:
        centers = getattr(result, "centers", None)

    points = ps.points if hasattr(ps, "points") else np.asarray(ps, dtype=np.float64)
    if points.shape[0] != len(labels):
        raise ValueError("result size does not match point count")
    if points.shape[1] < 2:
        raise ValueError("scatter needs 2-D points")

    to_px = _axes(points[:, 0], points[:, 1], spec.width, spec.height)
    body = []
    for i in range(points.shape[0]):
        px, py = to_px(points[i, 0], points[i, 1])
        color = spec.color(int(labels[i]))
        if spec.show_border and is_core is not None and not is_core[i] and labels[i] >= 0:
            color = _MARK_COLOR
        body.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{spec.point_radius}" '
            f'fill="{color}"/>'
        )
    if spec.show_centers and centers is not None:
        for c in np.asarray(centers, dtype=np.int64):
            px, py = to_px(points[c, 0], points[c, 1])
            body.append(_diamond(px, py, spec.center_size))
    return _document(spec.width, spec.height, spec.title, body)


def render_decision_graph(profile: DensityProfile, spec: Optional[FigureSpec] = None) -> str:
    """Scatter of (rho, delta) pairs with labeled axes."""
    spec = spec or FigureSpec()
    rho = profile.rho
    delta = profile.delta
    to_px = _axes(rho, delta, spec.width, spec.height)

    x0, y0 = to_px(float(np.min(rho)), float(np.min(delta)))
    x1, _ = to_px(float(np.max(rho)), float(np.min(delta)))
    _, y1 = to_px(float(np.min(rho)), float(np.max(delta)))
    body = [
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" '
        f'stroke="{_MARK_COLOR}" stroke-width="1"/>',
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" '
        f'stroke="{_MARK_COLOR}" stroke-width="1"/>',
        f'<text x="{_fmt(x1)}" y="{_fmt(y0 + 16.0)}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">rho</text>',
        f'<text x="{_fmt(x0 + 6.0)}" y="{_fmt(y1 + 4.0)}" '
        f'font-family="sans-serif" font-size="12">delta</text>',
    ]
    for i in range(profile.n):
        px, py = to_px(float(rho[i]), float(delta[i]))
        body.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{spec.point_radius}" '
            f'fill="{spec.palette[1 % len(spec.palette)]}"/>'
        )
    return _document(spec.width, spec.height, spec.title, body)
