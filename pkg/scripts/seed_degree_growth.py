"""Average degree of the initial nodes as the network grows, for the four models.

    python scripts/seed_degree_growth.py --nodes 9204 --runs 10 --every 100
"""

import argparse
from pathlib import Path

from pfp_topology.generators import preset
from pfp_topology.harness import mean_trajectory, write_trajectory_csv

MODELS = ("ba", "ig", "ba+pfp", "pfp")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=9204)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--every", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("results/seed_degree.csv"))
    args = ap.parse_args()

    tracks = {m: mean_trajectory(preset(m, target_n=args.nodes), args.every, args.runs, args.seed) for m in MODELS}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(tracks, args.out)
    last = tracks["pfp"].samples[-1][0]
    for m in MODELS:
        print(f"{m:>7}: mean seed-node degree {tracks[m].at(last):8.1f} at N={last}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
