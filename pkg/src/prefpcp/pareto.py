"""Dominance testing, Pareto-solution extraction, and metric extrema.

All metrics are minimized: a vector dominates another when it is no worse in
every coordinate and strictly better in at least one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .dataset import Dataset
from .errors import EmptySet, LengthMismatch


@dataclass(frozen=True)
class ParetoSet:
    """Non-dominated records of a dataset: their indices and metric vectors."""

    indices: tuple[int, ...]
    points: tuple[tuple[float, ...], ...]

    def __len__(self) -> int:
        return len(self.indices)

    @cached_property
    def points_matrix(self) -> np.ndarray:
        return np.array(self.points, dtype=float)


@dataclass(frozen=True)
class MetricExtrema:
    """Coordinate-wise minimum and maximum over a point set."""

    f_min: tuple[float, ...]
    f_max: tuple[float, ...]

    def __post_init__(self):
        if len(self.f_min) != len(self.f_max):
            raise LengthMismatch("f_min and f_max lengths differ")
        for lo, hi in zip(self.f_min, self.f_max):
            if lo > hi:
                raise ValueError(f"f_min {lo} exceeds f_max {hi}")


def dominates(f_a: Sequence[float], f_b: Sequence[float]) -> bool:
    """True iff f_a is <= f_b everywhere and < somewhere."""
    if len(f_a) != len(f_b):
        raise LengthMismatch(f"vectors of length {len(f_a)} and {len(f_b)}")
    a = np.asarray(f_a, dtype=float)
    b = np.asarray(f_b, dtype=float)
    return bool(np.all(a <= b) and np.any(a < b))


def pareto_front(dataset: Dataset) -> ParetoSet:
    """Extract exactly the non-dominated records.

    Pairwise O(N^2) scan, vectorized in row blocks. Duplicate metric vectors
    are all retained: equal vectors never dominate each other.
    """
    f = dataset.metrics_matrix
    n = f.shape[0]
    keep = np.ones(n, dtype=bool)
    block = 256
    for start in range(0, n, block):
        rows = f[start:start + block]  # (B, M)
        # other dominates row r iff other <= r everywhere and < somewhere
        le = np.all(f[None, :, :] <= rows[:, None, :], axis=2)  # (B, N)
        lt = np.any(f[None, :, :] < rows[:, None, :], axis=2)
        keep[start:start + block] = ~np.any(le & lt, axis=1)
    indices = tuple(int(i) for i in np.flatnonzero(keep))
    points = tuple(dataset.records[i].metrics for i in indices)
    return ParetoSet(indices, points)


def metric_extrema(points: Sequence[Sequence[float]] | np.ndarray) -> MetricExtrema:
    """Coordinate-wise min and max over a nonempty point set."""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        raise EmptySet("no points")
    return MetricExtrema(
        tuple(float(v) for v in arr.min(axis=0)),
        tuple(float(v) for v in arr.max(axis=0)),
    )
