"""Batch driver for the pipeline: fit the front, build the radar grid, render
preference-colored PCPs, or serve the HTTP API.

Exit codes: 1 for input problems, 2 for numeric failures (fit or projection),
3 for selecting a cell that does not exist.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dataset import Dataset, parse_csv, parse_json
from .embed import embed_2d, lattice_partition, summarize_cells
from .errors import DatasetError, LengthMismatch, NumericError, TooFewPoints
from .frontfit import fit_front
from .pareto import metric_extrema, pareto_front
from .pcp import build_pcp, render_svg
from .preference import optimal_weights, project_to_front

EXIT_INPUT = 1
EXIT_NUMERIC = 2
EXIT_UNKNOWN_CELL = 3


def _load_dataset(path: str) -> Dataset:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_csv(text)


def _dump_json(path: str, payload: dict):
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _add_embedding_flags(sub: argparse.ArgumentParser):
    sub.add_argument("--grid", type=int, default=8, help="lattice cells per side (1-32)")
    sub.add_argument("--method", choices=("pca", "neighbor"), default="pca")
    sub.add_argument("--seed", type=int, default=0)


def _cmd_fit(args) -> int:
    dataset = _load_dataset(args.input)
    pareto = pareto_front(dataset)
    model = fit_front(pareto)
    _dump_json(args.out, model.to_json_dict())
    print(json.dumps({"n": dataset.n, "n_pareto": len(pareto), "fit_rms": model.fit_rms}))
    return 0


def _cmd_radar(args) -> int:
    dataset = _load_dataset(args.input)
    pareto = pareto_front(dataset)
    embedding = embed_2d(pareto.points_matrix, method=args.method, seed=args.seed)
    skeleton = lattice_partition(embedding, args.grid)
    grid = summarize_cells(skeleton, pareto.points_matrix, metric_extrema(pareto.points_matrix))
    _dump_json(args.out, grid.to_json_dict())
    print(json.dumps({"n_pareto": len(pareto), "cells": len(grid.cells)}))
    return 0


def _cmd_render(args) -> int:
    dataset = _load_dataset(args.input)
    pareto = pareto_front(dataset)
    model = fit_front(pareto)
    if args.cell is not None:
        i, j = args.cell
        embedding = embed_2d(pareto.points_matrix, method=args.method, seed=args.seed)
        skeleton = lattice_partition(embedding, args.grid)
        grid = summarize_cells(
            skeleton, pareto.points_matrix, metric_extrema(pareto.points_matrix)
        )
        summary = grid.cells.get((i, j))
        if summary is None:
            print(f"error: no occupied cell at ({i}, {j})", file=sys.stderr)
            return EXIT_UNKNOWN_CELL
        reference = list(summary.mean_f)
    else:
        reference = args.point
    point = project_to_front(model, reference)
    weights = optimal_weights(model, point)
    pcp = build_pcp(dataset, pareto, weights, top_k=args.top_k)
    if args.json:
        _dump_json(args.json, pcp.to_json_dict())
    if args.svg:
        Path(args.svg).write_text(render_svg(pcp), encoding="utf-8")
    print(json.dumps(list(weights.w)))
    return 0


def _cmd_serve(args) -> int:
    from .service import ServiceConfig, run

    config = ServiceConfig(
        lru_cap=args.lru_cap,
        grid=args.grid,
        method=args.method,
        seed=args.seed,
        top_k=args.top_k,
    )
    run(config, host=args.host, port=args.port)
    return 0


def _parse_cell(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected I,J")
    return int(parts[0]), int(parts[1])


def _parse_point(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefpcp",
        description="Preference-derived metric weights and colored parallel-coordinate plots",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit the Pareto-front surrogate")
    fit.add_argument("input")
    fit.add_argument("--out", default="model.json")
    fit.set_defaults(func=_cmd_fit)

    radar = sub.add_parser("radar", help="build the radar-chart lattice")
    radar.add_argument("input")
    _add_embedding_flags(radar)
    radar.add_argument("--out", default="grid.json")
    radar.set_defaults(func=_cmd_radar)

    render = sub.add_parser("render", help="render the preference-colored PCP")
    render.add_argument("input")
    which = render.add_mutually_exclusive_group(required=True)
    which.add_argument("--cell", type=_parse_cell, metavar="I,J")
    which.add_argument("--point", type=_parse_point, metavar="F1,...,FM")
    render.add_argument("--top-k", type=int, default=30, dest="top_k")
    _add_embedding_flags(render)
    render.add_argument("--svg")
    render.add_argument("--json")
    render.set_defaults(func=_cmd_render)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default=os.environ.get("PREFPCP_HOST", "127.0.0.1"))
    serve.add_argument("--port", type=int, default=int(os.environ.get("PREFPCP_PORT", "8371")))
    serve.add_argument(
        "--lru-cap", type=int, default=int(os.environ.get("PREFPCP_LRU_CAP", "16"))
    )
    serve.add_argument("--top-k", type=int, default=30, dest="top_k")
    _add_embedding_flags(serve)
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, LengthMismatch, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericError, TooFewPoints) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
