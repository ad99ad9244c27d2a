"""Turn a preferred trade-off point into optimal linear metric weights.

Weights proportional to the surrogate gradient at an on-surface point make the
weighted metric's level set tangent to the front there, so that point is the
unique minimizer of the weighted metric over the front. Off-surface reference
points (e.g. radar-cell means) are first projected to the nearest on-surface
point.

The projection works in log-gap coordinates z_m = log(f_m - a_m): the surface
constraint prod(f_m - a_m) = b becomes the linear constraint sum(z) = log b,
so the squared distance is minimized over an (M-1)-dimensional affine slice by
a damped Newton iteration. Feasibility then holds by construction to rounding
precision. A deterministic coarse net over the surface picks starting points,
which guards against the saddle at the ray intersection when the reference
point lies beyond the front's center of curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    LengthMismatch,
    NonNegativeSlope,
    OffSurface,
    OutsideBranch,
    ProjectionDiverged,
)
from .frontfit import FrontModel, eval_front, grad_front

MAX_PROJECTION_ITERATIONS = 10_000
FEASIBILITY_RTOL = 1e-8        # |g(f) - b| <= rtol * b
STATIONARITY_ANGLE = 1e-4      # radians between (f_r - f_u) and the gradient line
_COARSE_NET_SIZE = 2048
_COARSE_NET_SEED = 1813


@dataclass(frozen=True)
class WeightVector:
    """Positive metric weights summing to one."""

    w: tuple[float, ...]

    def __post_init__(self):
        if len(self.w) < 2:
            raise ValueError("weights need at least two metrics")
        if any(not v > 0 for v in self.w):
            raise ValueError("all weights must be positive")
        if abs(sum(self.w) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {sum(self.w)!r}, expected 1")

    @classmethod
    def from_raw(cls, values: Sequence[float]) -> "WeightVector":
        """Normalize a raw positive vector to sum one."""
        arr = np.asarray(values, dtype=float)
        if np.any(arr <= 0):
            raise ValueError("raw weights must be positive")
        arr = arr / arr.sum()
        return cls(tuple(float(v) for v in arr))

    def __len__(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class PreferencePoint:
    """A point on the fitted front, either given directly or projected from a
    reference point ``f_r`` at the recorded Euclidean distance."""

    f_u: tuple[float, ...]
    f_r: tuple[float, ...] | None = None
    distance: float | None = None

    @property
    def source(self) -> str:
        return "direct" if self.f_r is None else "projected"

    def to_json_dict(self) -> dict:
        out: dict = {"f_u": list(self.f_u)}
        if self.f_r is not None:
            out["f_r"] = list(self.f_r)
        if self.distance is not None:
            out["distance"] = self.distance
        return out


def bi_metric_weights(slope: float) -> WeightVector:
    """Closed-form optimal weights for two metrics from the front slope at the
    chosen point; the slope must be negative on a monotonically decreasing
    front."""
    if not slope < 0:
        raise NonNegativeSlope(f"front slope must be negative, got {slope}")
    return WeightVector((-slope / (1.0 - slope), 1.0 / (1.0 - slope)))


def direct_preference(model: FrontModel, f_u: Sequence[float]) -> PreferencePoint:
    """Wrap an already-on-surface point, validating feasibility."""
    residual = eval_front(model, f_u)
    if abs(residual) > FEASIBILITY_RTOL * model.b:
        raise OffSurface(f"point residual {residual} exceeds {FEASIBILITY_RTOL} * b")
    return PreferencePoint(tuple(float(v) for v in f_u))


def optimal_weights(model: FrontModel, point: PreferencePoint) -> WeightVector:
    """Weights proportional to the surrogate gradient at the preference point,
    normalized to sum one."""
    residual = eval_front(model, point.f_u)
    if abs(residual) > FEASIBILITY_RTOL * model.b:
        raise OffSurface(f"point residual {residual} exceeds {FEASIBILITY_RTOL} * b")
    grad = grad_front(model, point.f_u)
    return WeightVector.from_raw(grad)


def weighted_metric(w: WeightVector, f: Sequence[float]) -> float:
    """The single weighted metric: dot product of weights and metric vector."""
    if len(w) != len(f):
        raise LengthMismatch(f"{len(w)} weights vs {len(f)} metrics")
    return float(np.dot(w.w, np.asarray(f, dtype=float)))


def _helmert_basis(m: int) -> np.ndarray:
    """Orthonormal basis of the zero-sum subspace of R^m, as columns."""
    basis = np.zeros((m, m - 1))
    for k in range(1, m):
        scale = 1.0 / math.sqrt(k * (k + 1))
        basis[:k, k - 1] = scale
        basis[k, k - 1] = -k * scale
    return basis


def _stationarity_angle(diff: np.ndarray, surface_grad: np.ndarray) -> float:
    """Angle between the residual direction and the gradient line (both
    orientations count as aligned; a reference point inside the dominated
    region projects anti-parallel to the gradient)."""
    nd = float(np.linalg.norm(diff))
    ng = float(np.linalg.norm(surface_grad))
    if nd == 0.0 or ng == 0.0:
        return 0.0
    cos = abs(float(diff @ surface_grad)) / (nd * ng)
    return math.acos(min(1.0, cos))


def _newton_descent(
    z: np.ndarray,
    a: np.ndarray,
    f_r: np.ndarray,
    log_b: float,
    basis: np.ndarray,
    budget: int,
) -> tuple[np.ndarray, int]:
    """Minimize ||a + exp(z) - f_r||^2 over the slice sum(z) = log b.

    Returns the final log-gap vector and the number of iterations consumed.
    """
    m = len(z)
    center = log_b / m
    used = 0
    while used < budget:
        used += 1
        z = z + (log_b - z.sum()) / m
        z = np.clip(z, center - 80.0, center + 80.0)
        gap = np.exp(z)
        diff = a + gap - f_r
        grad_z = diff * gap
        grad_y = basis.T @ grad_z
        angle = _stationarity_angle(diff, 1.0 / gap)
        if angle < 1e-9 or float(np.linalg.norm(grad_y)) == 0.0:
            break
        hess_diag = gap * gap + diff * gap
        hess = (basis * hess_diag[:, None]).T @ basis
        lam = 0.0
        identity = np.eye(m - 1)
        step_y = None
        for _ in range(40):
            try:
                chol = np.linalg.cholesky(hess + lam * identity)
                step_y = np.linalg.solve(chol.T, np.linalg.solve(chol, -grad_y))
                break
            except np.linalg.LinAlgError:
                lam = max(1e-8 * (abs(float(np.trace(hess))) + 1.0), lam * 10.0)
        if step_y is None:
            step_y = -grad_y
        obj = 0.5 * float(diff @ diff)
        slope = float(grad_y @ step_y)
        if slope >= 0.0:  # not a descent direction: fall back to steepest descent
            step_y = -grad_y
            slope = -float(grad_y @ grad_y)
        step_z = basis @ step_y
        t = 1.0
        accepted = False
        while t >= 1e-14:
            trial = np.clip(z + t * step_z, center - 80.0, center + 80.0)
            trial = trial + (log_b - trial.sum()) / m
            trial_diff = a + np.exp(trial) - f_r
            if 0.5 * float(trial_diff @ trial_diff) <= obj + 1e-4 * t * slope:
                z = trial
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
    z = z + (log_b - z.sum()) / m
    return z, used


def project_to_front(
    model: FrontModel,
    f_r: Sequence[float],
    max_iter: int = MAX_PROJECTION_ITERATIONS,
) -> PreferencePoint:
    """Nearest point on the fitted surface to ``f_r`` in Euclidean norm.

    Deterministic: a fixed coarse net over the surface plus the ray
    intersection seed the Newton runs, and the closest converged candidate
    wins.
    """
    a = np.asarray(model.a, dtype=float)
    b = model.b
    m = model.m
    point = np.asarray(f_r, dtype=float)
    if point.shape != (m,):
        raise LengthMismatch(f"expected a vector of length {m}")
    if not np.all(np.isfinite(point)):
        raise OutsideBranch("reference point must be finite")
    gaps_r = point - a
    if np.any(gaps_r <= 0):
        raise OutsideBranch("reference point has a coordinate at or below its offset")

    g_r = float(np.prod(gaps_r))
    if abs(g_r - b) <= FEASIBILITY_RTOL * b:
        f_u = tuple(float(v) for v in point)
        return PreferencePoint(f_u=f_u, f_r=f_u, distance=0.0)

    log_b = math.log(b)
    basis = _helmert_basis(m)

    # ray through f_r anchored at the asymptote point: a uniform shift in log-gaps
    log_gaps_r = np.log(gaps_r)
    ray_start = log_gaps_r + (log_b - log_gaps_r.sum()) / m

    rng = np.random.default_rng(_COARSE_NET_SEED)
    directions = rng.standard_normal((_COARSE_NET_SIZE, m))
    directions -= directions.mean(axis=1, keepdims=True)
    spreads = np.geomspace(0.05, 8.0, _COARSE_NET_SIZE)[:, None]
    net = log_b / m + directions * spreads
    net_points = a + np.exp(np.clip(net, log_b / m - 80.0, log_b / m + 80.0))
    net_dist = np.einsum("ij,ij->i", net_points - point, net_points - point)
    order = np.argsort(net_dist, kind="stable")

    starts = [ray_start, net[order[0]], net[order[min(1, len(order) - 1)]]]
    budget = max_iter
    best_z: np.ndarray | None = None
    best_dist = math.inf
    for start in starts:
        if budget <= 0:
            break
        z, used = _newton_descent(start.copy(), a, point, log_b, basis, budget)
        budget -= used
        dist = float(np.linalg.norm(a + np.exp(z) - point))
        if dist < best_dist:
            best_dist = dist
            best_z = z

    assert best_z is not None
    f_u = a + np.exp(best_z)
    residual = abs(float(np.prod(f_u - a)) - b)
    angle = _stationarity_angle(f_u - point, 1.0 / (f_u - a))
    if residual > FEASIBILITY_RTOL * b or angle >= STATIONARITY_ANGLE:
        raise ProjectionDiverged(
            f"residual {residual:.3e}, stationarity angle {angle:.3e} after budget exhausted"
        )
    return PreferencePoint(
        f_u=tuple(float(v) for v in f_u),
        f_r=tuple(float(v) for v in point),
        distance=best_dist,
    )
