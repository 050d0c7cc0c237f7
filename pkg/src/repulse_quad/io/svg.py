"""Standalone SVG figures: point-cloud scatter plots and line charts.

Data are mapped affinely into a square canvas with a fixed margin. Point clouds
use equal scaling on both axes; series plots scale each axis independently and
optionally take log10 of both coordinates first.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
from xml.sax.saxutils import escape

import numpy as np

from ..common.exceptions import RenderError
from ..energy.configuration import ParticleConfiguration, PointsLike, as_points

logger = logging.getLogger(__name__)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf")

Series = Mapping[str, Tuple[Sequence[float], Sequence[float]]]


class Axes(str, Enum):
    LINEAR = "linear"
    LOGLOG = "loglog"


@dataclass(frozen=True)
class Canvas:
    size: float = 480.0
    margin: float = 40.0

    @property
    def inner(self) -> float:
        return self.size - 2 * self.margin


def _span(low: float, high: float) -> Tuple[float, float]:
    if high > low:
        return low, high
    pad = abs(low) * 0.5 or 1.0
    return low - pad, high + pad


def _write(document: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(document)
    except OSError as e:
        raise RenderError(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote figure {path}")
    return path


def _document(canvas: Canvas, body: List[str], title: Optional[str]) -> str:
    size = f"{canvas.size:g}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        lines.append(
            f'<text x="{canvas.size / 2:.2f}" y="{canvas.margin / 2:.2f}" '
            f'text-anchor="middle" font-size="14">{escape(title)}</text>'
        )
    return "\n".join(lines + body + ["</svg>", ""])


def pointcloud_coordinates(points: PointsLike, canvas: Canvas = Canvas()) -> np.ndarray:
    """Canvas coordinates of the first two columns, equal scale on both axes"""
    array = as_points(points)
    if array.shape[1] == 1:
        xy = np.column_stack([array[:, 0], np.zeros(len(array))])
    else:
        xy = array[:, :2]
    low = xy.min(axis=0)
    high = xy.max(axis=0)
    center = (low + high) / 2
    extent = float(np.max(high - low)) or 1.0
    scale = canvas.inner / extent
    x = canvas.size / 2 + scale * (xy[:, 0] - center[0])
    y = canvas.size / 2 - scale * (xy[:, 1] - center[1])
    return np.column_stack([x, y])


def emit_pointcloud_svg(
    points: PointsLike,
    path: Union[str, Path],
    title: Optional[str] = None,
    radius: float = 2.0,
    canvas: Canvas = Canvas(),
) -> Path:
    """Scatter plot with one circle element per point"""
    array = points.points if isinstance(points, ParticleConfiguration) else np.asarray(points)
    if array.size == 0:
        raise RenderError("Cannot render an empty point cloud")
    coordinates = pointcloud_coordinates(array, canvas)
    body = [
        f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{radius:g}" fill="{PALETTE[0]}"/>'
        for x, y in coordinates
    ]
    return _write(_document(canvas, body, title), path)


def series_coordinates(
    series: Series, axes: Union[Axes, str] = Axes.LINEAR, canvas: Canvas = Canvas()
) -> Dict[str, np.ndarray]:
    """Canvas coordinates of every series on shared axes"""
    axes = Axes(axes)
    if not series:
        raise RenderError("No series to render")
    data = {}
    for name, (xs, ys) in series.items():
        x = np.asarray(xs, dtype=float)
        y = np.asarray(ys, dtype=float)
        if x.size == 0 or x.shape != y.shape:
            raise RenderError(f"Series {name!r} is empty or has mismatched lengths")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise RenderError(f"Series {name!r} has non-finite values")
        if axes == Axes.LOGLOG:
            if np.any(x <= 0) or np.any(y <= 0):
                raise RenderError(f"Series {name!r} has non-positive values on log-log axes")
            x, y = np.log10(x), np.log10(y)
        data[name] = np.column_stack([x, y])

    stacked = np.vstack(list(data.values()))
    x_low, x_high = _span(float(stacked[:, 0].min()), float(stacked[:, 0].max()))
    y_low, y_high = _span(float(stacked[:, 1].min()), float(stacked[:, 1].max()))
    mapped = {}
    for name, values in data.items():
        px = canvas.margin + canvas.inner * (values[:, 0] - x_low) / (x_high - x_low)
        py = (canvas.size - canvas.margin) - canvas.inner * (values[:, 1] - y_low) / (
            y_high - y_low
        )
        mapped[name] = np.column_stack([px, py])
    return mapped


def emit_series_svg(
    series: Series,
    path: Union[str, Path],
    axes: Union[Axes, str] = Axes.LINEAR,
    title: Optional[str] = None,
    x_label: str = "",
    y_label: str = "",
    canvas: Canvas = Canvas(),
) -> Path:
    """Line chart, one polyline per series; nothing is written on invalid data"""
    mapped = series_coordinates(series, axes, canvas)
    left, bottom = canvas.margin, canvas.size - canvas.margin
    right, top = canvas.size - canvas.margin, canvas.margin
    body = [
        f'<line x1="{left:g}" y1="{bottom:g}" x2="{right:g}" y2="{bottom:g}" stroke="black"/>',
        f'<line x1="{left:g}" y1="{bottom:g}" x2="{left:g}" y2="{top:g}" stroke="black"/>',
    ]
    suffix = " (log10)" if Axes(axes) == Axes.LOGLOG else ""
    if x_label:
        body.append(
            f'<text x="{canvas.size / 2:.2f}" y="{canvas.size - 8:.2f}" text-anchor="middle" '
            f'font-size="12">{escape(x_label + suffix)}</text>'
        )
    if y_label:
        body.append(
            f'<text x="12" y="{canvas.size / 2:.2f}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 12 {canvas.size / 2:.2f})">{escape(y_label + suffix)}</text>'
        )
    for index, (name, coordinates) in enumerate(mapped.items()):
        colour = PALETTE[index % len(PALETTE)]
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in coordinates)
        body.append(
            f'<polyline points="{points}" fill="none" stroke="{colour}" stroke-width="1.5"/>'
        )
        body.append(
            f'<text x="{right - 4:g}" y="{top + 14 * (index + 1):g}" text-anchor="end" '
            f'font-size="12" fill="{colour}">{escape(name)}</text>'
        )
    return _write(_document(canvas, body, title), path)
