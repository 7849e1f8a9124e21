"""theta, gamma and alpha over a (p, delta) grid, as matrices for contour plots.

    python scripts/contour_grid.py --nodes 3000 --runs 3
"""

import argparse
from pathlib import Path

from pfp_topology.cli import parse_values
from pfp_topology.harness import GRID_DEFAULT_N, sweep_grid, write_contour_csv, write_contour_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", default="0:0.8:0.1")
    ap.add_argument("--delta", default="0:0.035:0.005")
    ap.add_argument("--nodes", type=int, default=GRID_DEFAULT_N)
    ap.add_argument("--runs", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/contour"))
    args = ap.parse_args()

    sweep = sweep_grid(
        parse_values(args.p),
        parse_values(args.delta),
        n=args.nodes,
        runs=args.runs,
        base_seed=args.seed,
        workers=args.workers,
    )
    args.out.mkdir(parents=True, exist_ok=True)
    write_contour_csv(sweep, args.out / "contour.csv")
    for metric in ("theta", "gamma", "alpha"):
        write_contour_matrix(sweep, metric, args.out / f"{metric}_matrix.csv")
    print(f"{len(sweep.grid)} cells written to {args.out}")


if __name__ == "__main__":
    main()
