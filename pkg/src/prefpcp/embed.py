"""Reduce Pareto solutions to a 2D plane, partition it into a lattice, and
summarize each occupied cell as a normalized radar profile.

Member indices throughout are positions into the Pareto point list (0-based),
not dataset record indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import TooFewPoints
from .pareto import MetricExtrema

EMBED_METHODS = ("pca", "neighbor")


@dataclass(frozen=True)
class Embedding2D:
    """2D coordinates in [0,1]^2, one row per Pareto solution."""

    coords: np.ndarray
    method: str
    seed: int


@dataclass(frozen=True)
class GridSkeleton:
    """Lattice assignment of embedded points, before metric summaries."""

    grid: int
    members: dict[tuple[int, int], tuple[int, ...]]


@dataclass(frozen=True)
class CellSummary:
    member_indices: tuple[int, ...]
    mean_f: tuple[float, ...]
    radar: tuple[float, ...]  # in [0,1] per metric, 1 = best


@dataclass(frozen=True)
class RadarGrid:
    """Occupied lattice cells with per-cell mean metrics and radar profiles.

    ``constant_metrics`` flags metric indices whose Pareto extrema coincide;
    their radar value is pinned to 1 since they carry no trade-off signal.
    """

    grid: int
    cells: dict[tuple[int, int], CellSummary]
    constant_metrics: tuple[int, ...] = field(default=())

    def to_json_dict(self) -> dict:
        out = {
            "grid": self.grid,
            "cells": [
                {
                    "i": i,
                    "j": j,
                    "members": list(cell.member_indices),
                    "mean_f": list(cell.mean_f),
                    "radar": list(cell.radar),
                }
                for (i, j), cell in sorted(self.cells.items())
            ],
        }
        if self.constant_metrics:
            out["constant_metrics"] = list(self.constant_metrics)
        return out


def _rescale_unit_square(coords: np.ndarray) -> np.ndarray:
    """Affine rescale each coordinate to [0,1]; a collapsed coordinate maps to 0.5."""
    out = np.empty_like(coords)
    for k in range(2):
        lo = coords[:, k].min()
        hi = coords[:, k].max()
        if hi > lo:
            out[:, k] = (coords[:, k] - lo) / (hi - lo)
        else:
            out[:, k] = 0.5
    return out


def _power_iteration_top2(x: np.ndarray) -> np.ndarray:
    """Top-2 principal directions of centered data via the power method.

    Sign convention: the largest-magnitude loading of each direction is made
    positive. Directions whose eigenvalue is negligible against the leading
    one are zeroed so that noise never masquerades as structure.
    """
    m = x.shape[1]
    cov = x.T @ x
    directions = np.zeros((2, m))
    eigenvalues = np.zeros(2)
    deflated = cov.copy()
    for comp in range(2):
        vec = 1.0 + 0.01 * np.arange(m)
        vec /= np.linalg.norm(vec)
        for _ in range(500):
            nxt = deflated @ vec
            for prev in range(comp):
                nxt -= (nxt @ directions[prev]) * directions[prev]
            norm = np.linalg.norm(nxt)
            if norm < 1e-300:
                vec = np.zeros(m)
                break
            nxt /= norm
            if np.linalg.norm(nxt - vec) < 1e-14:
                vec = nxt
                break
            vec = nxt
        if np.linalg.norm(vec) == 0.0:
            directions[comp] = 0.0
            eigenvalues[comp] = 0.0
            continue
        lead = int(np.argmax(np.abs(vec)))
        if vec[lead] < 0:
            vec = -vec
        directions[comp] = vec
        eigenvalues[comp] = float(vec @ cov @ vec)
        deflated = deflated - eigenvalues[comp] * np.outer(vec, vec)
    # zero out components that are pure floating-point residue
    if eigenvalues[0] <= 0.0:
        return np.zeros((x.shape[0], 2))
    proj = x @ directions.T
    if eigenvalues[1] < 1e-24 * eigenvalues[0]:
        proj[:, 1] = 0.0
    return proj


def _neighbor_layout(points: np.ndarray, seed: int) -> np.ndarray:
    """Seeded k-nearest-neighbor force layout.

    Attraction along graph edges and sampled repulsion, 200 epochs with a
    decaying step. Keeps similar metric profiles nearby without reproducing
    any particular published embedding algorithm.
    """
    n = points.shape[0]
    k = min(15, n - 1)
    rng = np.random.default_rng(seed)

    delta = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((delta * delta).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    neighbor_idx = np.argsort(dist, axis=1, kind="stable")[:, :k]
    neighbor_dist = np.take_along_axis(dist, neighbor_idx, axis=1)
    rho = neighbor_dist[:, 0]
    sigma = neighbor_dist.mean(axis=1) - rho + 1e-12
    weights = np.exp(-np.maximum(0.0, neighbor_dist - rho[:, None]) / sigma[:, None])

    edge_map: dict[tuple[int, int], float] = {}
    for i in range(n):
        for jj in range(k):
            j = int(neighbor_idx[i, jj])
            key = (i, j) if i < j else (j, i)
            w = float(weights[i, jj])
            if key in edge_map:
                prev = edge_map[key]
                edge_map[key] = prev + w - prev * w  # fuzzy union
            else:
                edge_map[key] = w
    edges = np.array(sorted(edge_map), dtype=int)
    edge_w = np.array([edge_map[tuple(e)] for e in edges])

    centered = points - points.mean(axis=0)
    layout = _power_iteration_top2(centered)
    scale = np.abs(layout).max()
    if scale > 0:
        layout = layout / scale * 5.0
    layout = layout + rng.normal(0.0, 1e-2, size=layout.shape)

    epochs = 200
    for epoch in range(epochs):
        alpha = 1.0 - epoch / epochs
        src, dst = edges[:, 0], edges[:, 1]
        diff = layout[dst] - layout[src]
        d2 = (diff * diff).sum(axis=1)
        pull = (2.0 * edge_w / (1.0 + d2))[:, None] * diff
        np.clip(pull, -4.0, 4.0, out=pull)
        move = np.zeros_like(layout)
        np.add.at(move, src, pull)
        np.add.at(move, dst, -pull)
        neg = rng.integers(0, n, size=len(edges))
        ndiff = layout[src] - layout[neg]
        nd2 = (ndiff * ndiff).sum(axis=1)
        push = (2.0 / ((0.1 + nd2) * (1.0 + nd2)))[:, None] * ndiff
        np.clip(push, -4.0, 4.0, out=push)
        np.add.at(move, src, push)
        layout = layout + alpha * 0.1 * move
    return layout


def embed_2d(points: Sequence[Sequence[float]] | np.ndarray, method: str = "pca",
             seed: int = 0) -> Embedding2D:
    """Embed Pareto metric vectors into [0,1]^2, deterministically for a fixed
    (points, method, seed) triple."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 2:
        raise TooFewPoints("need at least two points to embed")
    if method not in EMBED_METHODS:
        raise ValueError(f"unknown embedding method {method!r}; use one of {EMBED_METHODS}")
    if method == "pca":
        raw = _power_iteration_top2(arr - arr.mean(axis=0))
    else:
        raw = _neighbor_layout(arr, seed)
    coords = _rescale_unit_square(raw)
    coords.setflags(write=False)
    return Embedding2D(coords=coords, method=method, seed=seed)


def lattice_partition(emb: Embedding2D, grid: int) -> GridSkeleton:
    """Assign embedded points to even-interval lattice cells.

    Point (x, y) lands in (floor(x*G), floor(y*G)) with the upper boundary
    clamped into the last cell; empty cells are omitted.
    """
    if grid < 1:
        raise ValueError("grid must be at least 1")
    members: dict[tuple[int, int], list[int]] = {}
    for idx, (x, y) in enumerate(emb.coords):
        i = min(int(math.floor(x * grid)), grid - 1)
        j = min(int(math.floor(y * grid)), grid - 1)
        members.setdefault((i, j), []).append(idx)
    return GridSkeleton(grid=grid, members={k: tuple(v) for k, v in members.items()})


def summarize_cells(
    skeleton: GridSkeleton,
    points: Sequence[Sequence[float]] | np.ndarray,
    extrema: MetricExtrema,
) -> RadarGrid:
    """Fill each occupied cell with its mean metric vector and radar profile.

    The radar value per metric is 1 - (mean - min)/(max - min), clamped to
    [0,1], with extrema taken over the Pareto set; larger means better. A
    metric with coinciding extrema is pinned to radar 1 and flagged.
    """
    arr = np.asarray(points, dtype=float)
    f_min = np.asarray(extrema.f_min)
    f_max = np.asarray(extrema.f_max)
    span = f_max - f_min
    constant = span == 0.0
    cells: dict[tuple[int, int], CellSummary] = {}
    for key, member_indices in skeleton.members.items():
        mean_f = arr[list(member_indices)].mean(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            radar = 1.0 - (mean_f - f_min) / span
        radar = np.where(constant, 1.0, radar)
        radar = np.clip(radar, 0.0, 1.0)
        cells[key] = CellSummary(
            member_indices=tuple(member_indices),
            mean_f=tuple(float(v) for v in mean_f),
            radar=tuple(float(v) for v in radar),
        )
    return RadarGrid(
        grid=skeleton.grid,
        cells=cells,
        constant_metrics=tuple(int(i) for i in np.flatnonzero(constant)),
    )
