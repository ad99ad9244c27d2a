"""HTTP facade over the full pipeline: upload a dataset, fetch its radar
grid, post a preference, get back weights and the colored PCP model.

Handlers are thin adapters: every response body is the JSON serialization of
the corresponding library results, nothing more. Sessions are immutable after
construction and held in a lock-guarded LRU map keyed by a content hash of the
uploaded body, which makes uploads idempotent.
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .dataset import Dataset, parse_csv, parse_json
from .embed import EMBED_METHODS, RadarGrid, embed_2d, lattice_partition, summarize_cells
from .errors import (
    DatasetError,
    DegenerateFront,
    FitDiverged,
    InsufficientPoints,
    LengthMismatch,
    OutsideBranch,
    ProjectionDiverged,
    TooFewPoints,
)
from .frontfit import FrontModel, fit_front
from .pareto import ParetoSet, metric_extrema, pareto_front
from .pcp import build_pcp
from .preference import optimal_weights, project_to_front

MAX_GRID = 32


@dataclass(frozen=True)
class ServiceConfig:
    lru_cap: int = 16
    grid: int = 8
    method: str = "pca"
    seed: int = 0
    top_k: int = 30


@dataclass(frozen=True)
class SessionState:
    id: str
    dataset: Dataset
    pareto: ParetoSet
    front: FrontModel
    grid: RadarGrid


def _error(status: int, name: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": name, "detail": detail})


def build_session(
    session_id: str, dataset: Dataset, method: str, seed: int, grid: int
) -> SessionState:
    """Run the full initialization pipeline for one dataset."""
    pareto = pareto_front(dataset)
    front = fit_front(pareto)
    embedding = embed_2d(pareto.points_matrix, method=method, seed=seed)
    skeleton = lattice_partition(embedding, grid)
    radar = summarize_cells(skeleton, pareto.points_matrix, metric_extrema(pareto.points_matrix))
    return SessionState(id=session_id, dataset=dataset, pareto=pareto, front=front, grid=radar)


def create_app(config: ServiceConfig = ServiceConfig()) -> FastAPI:
    app = FastAPI(title="prefpcp", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: OrderedDict[str, SessionState] = OrderedDict()
    lock = threading.Lock()

    def store(state: SessionState):
        with lock:
            sessions[state.id] = state
            sessions.move_to_end(state.id)
            while len(sessions) > config.lru_cap:
                sessions.popitem(last=False)

    def fetch(session_id: str) -> SessionState | None:
        with lock:
            state = sessions.get(session_id)
            if state is not None:
                sessions.move_to_end(session_id)
            return state

    @app.post("/datasets")
    async def upload_dataset(
        request: Request,
        method: str | None = None,
        seed: int | None = None,
        grid: int | None = None,
    ):
        method = method if method is not None else config.method
        seed = seed if seed is not None else config.seed
        grid = grid if grid is not None else config.grid
        if method not in EMBED_METHODS:
            return _error(400, "InvalidShape", f"unknown embedding method {method!r}")
        if not 1 <= grid <= MAX_GRID:
            return _error(400, "InvalidShape", f"grid must be in [1, {MAX_GRID}]")

        body = await request.body()
        if not body.strip():
            return _error(400, "EmptyDataset", "empty request body")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError as exc:
            return _error(400, "SchemaViolation", f"body is not UTF-8: {exc}")
        content_type = request.headers.get("content-type", "").split(";")[0].strip().lower()
        try:
            if content_type == "application/json" or (
                not content_type and text.lstrip().startswith("{")
            ):
                dataset = parse_json(text)
            else:
                dataset = parse_csv(text)
        except DatasetError as exc:
            return _error(400, type(exc).__name__, str(exc))

        session_id = hashlib.sha256(body).hexdigest()[:16]
        try:
            state = build_session(session_id, dataset, method, seed, grid)
        except (DegenerateFront, InsufficientPoints, FitDiverged, TooFewPoints) as exc:
            return _error(422, type(exc).__name__, str(exc))
        store(state)
        return JSONResponse(
            status_code=201,
            content={
                "id": session_id,
                "n": dataset.n,
                "d": dataset.d,
                "m": dataset.m,
                "n_pareto": len(state.pareto),
                "fit_rms": state.front.fit_rms,
            },
        )

    @app.get("/datasets/{session_id}/radar-grid")
    async def radar_grid(session_id: str):
        state = fetch(session_id)
        if state is None:
            return _error(404, "UnknownDataset", f"no dataset {session_id!r}")
        return JSONResponse(status_code=200, content=state.grid.to_json_dict())

    @app.post("/datasets/{session_id}/preference")
    async def preference(session_id: str, request: Request, top_k: int | None = None):
        state = fetch(session_id)
        if state is None:
            return _error(404, "UnknownDataset", f"no dataset {session_id!r}")
        top_k = top_k if top_k is not None else config.top_k
        if top_k < 0:
            return _error(400, "InvalidShape", "top_k must be nonnegative")

        try:
            body = json.loads((await request.body()).decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            return _error(400, "SchemaViolation", f"malformed JSON body: {exc}")
        if not isinstance(body, dict) or ("cell" in body) == ("f_r" in body):
            return _error(400, "SchemaViolation", "body must carry exactly one of 'cell', 'f_r'")

        if "cell" in body:
            cell = body["cell"]
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in cell)
            ):
                return _error(400, "SchemaViolation", "'cell' must be [i, j] integers")
            summary = state.grid.cells.get((cell[0], cell[1]))
            if summary is None:
                return _error(404, "UnknownCell", f"no occupied cell at {tuple(cell)}")
            reference = list(summary.mean_f)
        else:
            reference = body["f_r"]
            if (
                not isinstance(reference, list)
                or len(reference) != state.dataset.m
                or not all(
                    isinstance(v, (int, float)) and not isinstance(v, bool) for v in reference
                )
                or not all(math.isfinite(float(v)) for v in reference)
            ):
                return _error(
                    400, "SchemaViolation", f"'f_r' must be {state.dataset.m} finite numbers"
                )
            reference = [float(v) for v in reference]

        try:
            point = project_to_front(state.front, reference)
            weights = optimal_weights(state.front, point)
            pcp = build_pcp(state.dataset, state.pareto, weights, top_k=top_k)
        except (OutsideBranch, ProjectionDiverged) as exc:
            return _error(422, type(exc).__name__, str(exc))
        except LengthMismatch as exc:
            return _error(400, "LengthMismatch", str(exc))
        return JSONResponse(
            status_code=200,
            content={
                "weights": list(weights.w),
                "f_u": list(point.f_u),
                "distance": point.distance,
                "pcp": pcp.to_json_dict(),
            },
        )

    return app


def run(config: ServiceConfig = ServiceConfig(), host: str = "127.0.0.1", port: int = 8371):
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port)
