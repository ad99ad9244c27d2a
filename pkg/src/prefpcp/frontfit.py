"""Fit the strictly convex product surrogate prod(f_m - a_m) = b to a Pareto
set and evaluate it and its gradient.

The fit minimizes the log-space residual sum over Pareto points,

    sum_n ( sum_m log(f_m^(n) - a_m) - log b )^2,

with b eliminated in closed form (log b is the mean of the per-point log
products). The branch constraint a_m < f_min[m] holds by construction through
the reparameterization a_m = f_min[m] - exp(theta_m); theta is optimized by a
damped Gauss-Newton loop with explicit step/decrease stopping rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateFront,
    FitDiverged,
    InsufficientPoints,
    LengthMismatch,
    OutsideBranch,
)
from .pareto import MetricExtrema, ParetoSet

MAX_FIT_ITERATIONS = 10_000
STEP_TOL = 1e-10        # relative parameter step
DECREASE_TOL = 1e-12    # objective decrease per accepted iteration
OFFSET_SPAN_CAP = 10.0  # offsets live within this many metric spans below f_min


@dataclass(frozen=True)
class FrontModel:
    """Fitted surrogate: prod(f_m - a[m]) = b over the given metric domain.

    ``fit_rms`` is the log-space root-mean-square residual over the points the
    model was fitted to; callers use it to judge surrogate quality.
    """

    a: tuple[float, ...]
    b: float
    fit_rms: float
    domain: MetricExtrema

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("product level b must be positive")
        if self.fit_rms < 0:
            raise ValueError("fit_rms must be nonnegative")
        if len(self.a) != len(self.domain.f_min):
            raise LengthMismatch("offsets and domain dimensionality differ")
        for m, (am, lo, hi) in enumerate(zip(self.a, self.domain.f_min, self.domain.f_max)):
            margin = 1e-12 * (hi - lo + 1.0)
            if not am <= lo - margin:
                raise ValueError(
                    f"offset a[{m}]={am} too close to metric minimum {lo}; "
                    "branch positivity requires a[m] < f_min[m]"
                )

    @property
    def m(self) -> int:
        return len(self.a)

    def to_json_dict(self) -> dict:
        return {"a": list(self.a), "b": self.b, "fit_rms": self.fit_rms}


def _check_branch(model: FrontModel, f: Sequence[float]) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (model.m,):
        raise LengthMismatch(f"expected a vector of length {model.m}")
    gaps = f - np.asarray(model.a)
    if np.any(gaps <= 0):
        raise OutsideBranch(f"point {f.tolist()} has a coordinate at or below its offset")
    return gaps


def eval_front(model: FrontModel, f: Sequence[float]) -> float:
    """Signed surrogate residual prod(f_m - a_m) - b; zero means on-surface."""
    gaps = _check_branch(model, f)
    return float(np.prod(gaps) - model.b)


def grad_front(model: FrontModel, f: Sequence[float]) -> np.ndarray:
    """Gradient of prod(f_m - a_m): component i is the product of the other gaps."""
    gaps = _check_branch(model, f)
    grad = np.empty_like(gaps)
    for i in range(len(gaps)):
        grad[i] = np.prod(np.delete(gaps, i))
    return grad


def _lm_descent(
    points: np.ndarray,
    f_min: np.ndarray,
    theta: np.ndarray,
    theta_floor: np.ndarray,
    theta_cap: np.ndarray,
    budget: int,
) -> tuple[bool, np.ndarray, np.ndarray, float, int]:
    """Damped Gauss-Newton on the log-space residuals from one start.

    Returns (converged, theta, per-point log products, objective, iterations).
    """

    def residuals(th: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        gaps = points - (f_min - np.exp(th))  # >= exp(th) > 0 by construction
        s = np.log(gaps).sum(axis=1)
        r = s - s.mean()
        return gaps, s, float(r @ r)

    gaps, s, obj = residuals(theta)
    lam = 1e-3
    converged = False
    iterations = 0
    while iterations < budget:
        iterations += 1
        r = s - s.mean()
        ds_dtheta = np.exp(theta) / gaps  # (N, M)
        jac = ds_dtheta - ds_dtheta.mean(axis=0)
        jtj = jac.T @ jac
        jtr = jac.T @ r
        scale = np.maximum(np.diag(jtj), 1e-12)
        try:
            step = np.linalg.solve(jtj + lam * np.diag(scale), -jtr)
        except np.linalg.LinAlgError:
            lam *= 10.0
            continue
        trial = np.clip(theta + step, theta_floor, theta_cap)
        rel_step = np.max(np.abs(trial - theta)) / (1.0 + np.max(np.abs(theta)))
        new_gaps, new_s, new_obj = residuals(trial)
        if new_obj < obj:
            decrease = obj - new_obj
            theta, gaps, s, obj = trial, new_gaps, new_s, new_obj
            lam = max(lam / 3.0, 1e-12)
            if rel_step < STEP_TOL or decrease < DECREASE_TOL:
                converged = True
                break
        else:
            lam *= 10.0
            if rel_step < STEP_TOL:
                # damping has shrunk the step below resolution: local optimum
                converged = True
                break
    return converged, theta, s, obj, iterations


def fit_front(pareto: ParetoSet, theta0: Sequence[float] | None = None) -> FrontModel:
    """Fit the product surrogate to a Pareto set.

    The objective's infimum is always the degenerate limit where every offset
    drifts to -infinity and the surrogate flattens into a hyperplane, so the
    search is confined to offsets within OFFSET_SPAN_CAP metric spans below
    the observed minima (the surrogate is already near-affine over the data
    box there) and the descent runs from a deterministic ladder of
    span-scaled starts; the lowest converged objective wins. ``theta0``
    prepends one extra start (used to probe basin robustness).
    """
    points = pareto.points_matrix
    n_points, m = points.shape
    if n_points < m + 1:
        raise InsufficientPoints(f"{n_points} Pareto points, need at least {m + 1}")
    f_min = points.min(axis=0)
    f_max = points.max(axis=0)
    for j in range(m):
        if np.unique(points[:, j]).size < 2:
            raise DegenerateFront(f"metric {j} is constant across Pareto points")

    span = f_max - f_min
    theta_floor = np.log(1e-12 * (span + 1.0))
    theta_cap = np.log(OFFSET_SPAN_CAP * (span + 1e-6))
    starts = []
    if theta0 is not None:
        start = np.asarray(theta0, dtype=float)
        if start.shape != (m,):
            raise LengthMismatch(f"theta0 must have length {m}")
        starts.append(start)
    starts.extend(np.log(c * span + 1e-6) for c in (0.5, 0.15, 0.05, 0.015, 1.5))

    budget = MAX_FIT_ITERATIONS
    best: tuple[np.ndarray, np.ndarray, float] | None = None
    for start in starts:
        if budget <= 0:
            break
        converged, theta, s, obj, used = _lm_descent(
            points, f_min, np.clip(start, theta_floor, theta_cap), theta_floor, theta_cap, budget
        )
        budget -= used
        if converged and (best is None or obj < best[2]):
            best = (theta, s, obj)
            if obj <= n_points * 1e-18:  # residuals at rounding level: cannot improve
                break
    if best is None:
        raise FitDiverged(f"no start converged within {MAX_FIT_ITERATIONS} total iterations")

    theta, s, obj = best
    log_b = float(s.mean())
    fit_rms = math.sqrt(obj / n_points)
    a = f_min - np.exp(theta)
    return FrontModel(
        a=tuple(float(v) for v in a),
        b=math.exp(log_b),
        fit_rms=fit_rms,
        domain=MetricExtrema(tuple(map(float, f_min)), tuple(map(float, f_max))),
    )
