"""Preference-derived metric weights and colored parallel-coordinate plots.

Pipeline: ingest evaluation records, extract Pareto solutions, fit the convex
product surrogate to the front, embed the solutions into a 2D radar-chart
lattice, turn a selected trade-off into optimal linear weights, and color a
parallel-coordinate plot by the resulting single weighted metric.
"""

from .dataset import (
    Dataset,
    EvaluationRecord,
    generate_synthetic,
    parse_csv,
    parse_json,
    write_csv,
    write_json,
)
from .embed import (
    CellSummary,
    Embedding2D,
    GridSkeleton,
    RadarGrid,
    embed_2d,
    lattice_partition,
    summarize_cells,
)
from .frontfit import FrontModel, eval_front, fit_front, grad_front
from .pareto import MetricExtrema, ParetoSet, dominates, metric_extrema, pareto_front
from .pcp import AxisSpec, PcpModel, Polyline, build_pcp, color_for, render_svg
from .preference import (
    PreferencePoint,
    WeightVector,
    bi_metric_weights,
    direct_preference,
    optimal_weights,
    project_to_front,
    weighted_metric,
)

__all__ = [
    "AxisSpec",
    "CellSummary",
    "Dataset",
    "Embedding2D",
    "EvaluationRecord",
    "FrontModel",
    "GridSkeleton",
    "MetricExtrema",
    "ParetoSet",
    "PcpModel",
    "Polyline",
    "PreferencePoint",
    "RadarGrid",
    "WeightVector",
    "bi_metric_weights",
    "build_pcp",
    "color_for",
    "direct_preference",
    "dominates",
    "embed_2d",
    "eval_front",
    "fit_front",
    "generate_synthetic",
    "grad_front",
    "lattice_partition",
    "metric_extrema",
    "optimal_weights",
    "parse_csv",
    "parse_json",
    "pareto_front",
    "project_to_front",
    "render_svg",
    "summarize_cells",
    "weighted_metric",
    "write_csv",
    "write_json",
]
