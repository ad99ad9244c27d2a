#!/usr/bin/env python3
"""End-to-end demo on a synthetic fixture shaped like a real tuning study:
5 control parameters, 3 metrics, 1000 evaluated configurations.

Writes the dataset, fitted front, radar grid, and one preference-colored PCP
(JSON + SVG) into the output directory.
"""

import argparse
import json
from pathlib import Path

from prefpcp import (
    build_pcp,
    embed_2d,
    fit_front,
    generate_synthetic,
    lattice_partition,
    metric_extrema,
    optimal_weights,
    pareto_front,
    project_to_front,
    render_svg,
    summarize_cells,
)
from prefpcp.dataset import write_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--noise", type=float, default=0.25)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--grid", type=int, default=8)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    dataset = generate_synthetic(
        d=5, m=3, n=1000, a=(0.05, 0.1, 0.0), b=1.0, noise=args.noise, seed=args.seed
    )
    (out / "dataset.csv").write_text(write_csv(dataset), encoding="utf-8")

    pareto = pareto_front(dataset)
    model = fit_front(pareto)
    print(f"records={dataset.n} pareto={len(pareto)} fit_rms={model.fit_rms:.4g}")
    (out / "model.json").write_text(json.dumps(model.to_json_dict(), indent=2))

    embedding = embed_2d(pareto.points_matrix, method="pca", seed=args.seed)
    skeleton = lattice_partition(embedding, args.grid)
    grid = summarize_cells(skeleton, pareto.points_matrix, metric_extrema(pareto.points_matrix))
    (out / "grid.json").write_text(json.dumps(grid.to_json_dict(), indent=2))
    print(f"occupied cells: {len(grid.cells)} of {args.grid}x{args.grid}")

    # pick the fullest cell as the preference and color the PCP by it
    key, cell = max(grid.cells.items(), key=lambda kv: len(kv[1].member_indices))
    point = project_to_front(model, cell.mean_f)
    weights = optimal_weights(model, point)
    print(f"cell {key}: members={len(cell.member_indices)} "
          f"weights={tuple(round(w, 4) for w in weights.w)} distance={point.distance:.4g}")

    pcp = build_pcp(dataset, pareto, weights, top_k=30)
    (out / "pcp.json").write_text(json.dumps(pcp.to_json_dict(), indent=2))
    (out / "pcp.svg").write_text(render_svg(pcp, width=1280, height=720), encoding="utf-8")
    print(f"wrote {out}/dataset.csv, model.json, grid.json, pcp.json, pcp.svg")


if __name__ == "__main__":
    main()
