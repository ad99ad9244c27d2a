"""Colored parallel-coordinate-plot model and its SVG rendering.

One polyline per included record (Pareto solutions plus the best K remaining
records by the weighted metric), one vertical axis per parameter and metric.
Stroke color encodes the weighted metric through a fixed five-stop blue-to-
yellow table, blue being better.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .dataset import Dataset
from .errors import DegenerateDimensions, LengthMismatch, OutOfRange
from .pareto import ParetoSet
from .preference import WeightVector

# normative color table: stop positions and RGB anchors, blue end = best
COLOR_STOPS: tuple[tuple[float, tuple[int, int, int]], ...] = (
    (0.00, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.50, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.00, (253, 231, 37)),
)

DEFAULT_TOP_K = 30


@dataclass(frozen=True)
class AxisSpec:
    name: str
    lo: float
    hi: float
    kind: str  # "param" | "metric"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("axis range must have lo < hi (widen equal values first)")


@dataclass(frozen=True)
class Polyline:
    record_index: int
    vertices: tuple[float, ...]  # normalized to [0,1], one per axis
    color: tuple[int, int, int]
    phi: float


@dataclass(frozen=True)
class PcpModel:
    axes: tuple[AxisSpec, ...]
    polylines: tuple[Polyline, ...]
    phi_range: tuple[float, float]
    weights: WeightVector

    def to_json_dict(self) -> dict:
        return {
            "axes": [
                {"name": ax.name, "lo": ax.lo, "hi": ax.hi, "kind": ax.kind}
                for ax in self.axes
            ],
            "polylines": [
                {
                    "record": p.record_index,
                    "vertices": list(p.vertices),
                    "color": list(p.color),
                    "phi": p.phi,
                }
                for p in self.polylines
            ],
            "weights": list(self.weights.w),
        }


def _widened(lo: float, hi: float) -> tuple[float, float]:
    if lo == hi:
        return lo - 0.5, hi + 0.5
    return lo, hi


def colormap_position(phi: float, phi_min: float, phi_max: float) -> float:
    """Position along the color table in [0,1]; the degenerate range maps to
    the blue end."""
    if phi < phi_min or phi > phi_max:
        raise OutOfRange(f"phi {phi} outside [{phi_min}, {phi_max}]")
    if phi_min == phi_max:
        return 0.0
    return (phi - phi_min) / (phi_max - phi_min)


def color_for(phi: float, phi_min: float, phi_max: float) -> tuple[int, int, int]:
    """Piecewise-linear interpolation over the five-stop color table."""
    t = colormap_position(phi, phi_min, phi_max)
    for (t0, c0), (t1, c1) in zip(COLOR_STOPS, COLOR_STOPS[1:]):
        if t <= t1:
            local = (t - t0) / (t1 - t0)
            return tuple(int(round(a + (b - a) * local)) for a, b in zip(c0, c1))
    return COLOR_STOPS[-1][1]


def build_pcp(
    dataset: Dataset,
    pareto: ParetoSet,
    w: WeightVector,
    top_k: int = DEFAULT_TOP_K,
) -> PcpModel:
    """Assemble the render-ready PCP model.

    Included records are the Pareto solutions plus the ``top_k`` non-Pareto
    records with the smallest weighted metric; ties at the cutoff break by
    ascending record index. Axis ranges come from the declared parameter
    domains and the full-dataset metric extrema, so geometry is stable when
    only the weights change.
    """
    if len(w) != dataset.m:
        raise LengthMismatch(f"{len(w)} weights for {dataset.m} metrics")
    if top_k < 0:
        raise ValueError("top_k must be nonnegative")

    metrics = dataset.metrics_matrix
    phi = metrics @ np.asarray(w.w)

    pareto_set = set(pareto.indices)
    others = [i for i in range(dataset.n) if i not in pareto_set]
    others.sort(key=lambda i: (phi[i], i))
    included = sorted(pareto_set.union(others[:top_k]))

    axes = []
    for name, (lo, hi) in zip(dataset.param_names, dataset.param_domains):
        lo, hi = _widened(lo, hi)
        axes.append(AxisSpec(name, float(lo), float(hi), "param"))
    for j, name in enumerate(dataset.metric_names):
        lo, hi = _widened(float(metrics[:, j].min()), float(metrics[:, j].max()))
        axes.append(AxisSpec(name, lo, hi, "metric"))

    phi_included = phi[included]
    phi_min = float(phi_included.min())
    phi_max = float(phi_included.max())

    polylines = []
    for i in included:
        rec = dataset.records[i]
        values = (*rec.params, *rec.metrics)
        vertices = tuple(
            min(1.0, max(0.0, (v - ax.lo) / (ax.hi - ax.lo)))
            for v, ax in zip(values, axes)
        )
        polylines.append(
            Polyline(
                record_index=i,
                vertices=vertices,
                color=color_for(float(phi[i]), phi_min, phi_max),
                phi=float(phi[i]),
            )
        )
    return PcpModel(
        axes=tuple(axes),
        polylines=tuple(polylines),
        phi_range=(phi_min, phi_max),
        weights=w,
    )


def render_svg(model: PcpModel, width: int = 960, height: int = 540) -> str:
    """Standalone SVG: one <line> per axis, one <path> per polyline, labels as
    text. Polylines are drawn in descending weighted-metric order so the
    better (bluer) lines end up on top."""
    if width < 320 or height < 240:
        raise DegenerateDimensions(f"canvas {width}x{height} below 320x240 minimum")

    margin_left, margin_right, margin_top, margin_bottom = 60.0, 60.0, 40.0, 30.0
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom
    n_axes = len(model.axes)
    if n_axes == 1:
        xs = [margin_left + plot_w / 2.0]
    else:
        xs = [margin_left + k * plot_w / (n_axes - 1) for k in range(n_axes)]

    def y_of(v: float) -> float:
        return margin_top + (1.0 - v) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for polyline in sorted(model.polylines, key=lambda p: -p.phi):
        points = " L ".join(
            f"{x:.2f} {y_of(v):.2f}" for x, v in zip(xs, polyline.vertices)
        )
        r, g, b = polyline.color
        parts.append(
            f'<path d="M {points}" fill="none" stroke="rgb({r},{g},{b})" '
            'stroke-width="1.2" stroke-opacity="0.85"/>'
        )
    for x, ax in zip(xs, model.axes):
        parts.append(
            f'<line x1="{x:.2f}" y1="{margin_top:.2f}" x2="{x:.2f}" '
            f'y2="{margin_top + plot_h:.2f}" stroke="#444444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{margin_top - 18:.2f}" font-size="12" '
            f'text-anchor="middle" fill="#222222">{escape(ax.name)}</text>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{margin_top - 5:.2f}" font-size="9" '
            f'text-anchor="middle" fill="#666666">{escape(f"{ax.hi:.6g}")}</text>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{margin_top + plot_h + 14:.2f}" font-size="9" '
            f'text-anchor="middle" fill="#666666">{escape(f"{ax.lo:.6g}")}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
