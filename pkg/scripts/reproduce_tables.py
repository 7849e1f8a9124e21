"""Four-model comparison plus the p and delta sensitivity tables.

All three tables share one cache, so cells that coincide (IG is p=0.4 with
delta=0, PFP is delta=0.021) are grown once.

    python scripts/reproduce_tables.py --nodes 9204 --runs 10 --out results/tables
"""

import argparse
from pathlib import Path

from pfp_topology.harness import (
    format_table,
    run_table2,
    sweep_delta,
    sweep_p,
    write_curves,
    write_runs_csv,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=9204)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/tables"))
    args = ap.parse_args()

    cache = {}
    common = dict(n=args.nodes, runs=args.runs, base_seed=args.seed, workers=args.workers, cache=cache)
    four = run_table2(**common)
    by_p = sweep_p([0.0, 0.2, 0.4, 0.6, 0.8], delta=0.0, **common)
    by_delta = sweep_delta([0.0, 0.007, 0.014, 0.021, 0.028, 0.035], p=0.4, **common)

    tables = {
        "four_models": four,
        "sweep_p": {f"p={p:g}": a for (p, _), a in by_p.grid.items()},
        "sweep_delta": {f"delta={d:g}": a for (_, d), a in by_delta.grid.items()},
    }
    for name, aggs in tables.items():
        out = args.out / name
        out.mkdir(parents=True, exist_ok=True)
        write_runs_csv(aggs, out / "runs.csv")
        write_curves(aggs, out)
        text = format_table(aggs, title=f"{name}: N={args.nodes}, {args.runs} runs, base seed {args.seed}")
        (out / "summary.txt").write_text(text + "\n")
        print(text, end="\n\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
