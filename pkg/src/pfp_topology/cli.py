"""Command-line interface: ``pfp-topology <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 computation error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
import warnings
from pathlib import Path

from . import __version__
from .generators import PRESETS, ModelConfig, PreferenceScheme, generate, preset
from .graph import EdgeListError, GraphError, read_edgelist, write_edgelist
from .harness import (
    GRID_DEFAULT_N,
    Aggregate,
    RunRecord,
    format_table,
    mean_trajectory,
    run_table2,
    sweep_delta,
    sweep_grid,
    sweep_p,
    write_contour_csv,
    write_contour_matrix,
    write_curves,
    write_runs_csv,
    write_trajectory_csv,
)
from .metrics import report
from .sampling import SamplingError

EXIT_USAGE, EXIT_IO, EXIT_COMPUTE = 2, 3, 4
OUTPUT_ENV = "PFP_OUTPUT_DIR"
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def parse_values(text: str) -> list[float]:
    """``"0,0.2,0.4"`` or an inclusive range ``"start:stop:step"``."""
    text = text.strip()
    if ":" in text:
        try:
            start, stop, step = (float(x) for x in text.split(":"))
        except ValueError:
            raise UsageError(f"bad range {text!r}; expected start:stop:step") from None
        if step <= 0 or stop < start:
            raise UsageError(f"bad range {text!r}")
        count = int((stop - start) / step + 1e-9) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad value list {text!r}") from None


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "results"))


def config_from_args(args) -> ModelConfig:
    """Start from the preset and let explicit flags override it."""
    base = dict(PRESETS[args.model]) if args.model else dict(PRESETS["pfp"])
    if args.growth:
        base["growth"] = args.growth
    if args.p is not None:
        base["p"] = args.p
    if args.m is not None:
        base["m"] = args.m
    scheme: PreferenceScheme = base["scheme"]
    kind = args.scheme or scheme.kind
    if kind == "linear":
        base["scheme"] = PreferenceScheme.linear()
    elif kind == "positive_feedback":
        delta = args.delta if args.delta is not None else scheme.delta
        base["scheme"] = PreferenceScheme.positive_feedback(delta)
    else:
        lam = args.lam if args.lam is not None else 1.15
        base["scheme"] = PreferenceScheme.exponential(lam)
    return ModelConfig(
        target_n=args.nodes,
        seed_nodes=args.seed_nodes,
        seed_links=args.seed_links,
        rng_seed=args.seed,
        **base,
    )


def config_dict(cfg: ModelConfig) -> dict:
    return dataclasses.asdict(cfg)


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_generate(args) -> int:
    cfg = config_from_args(args)
    out = Path(args.output) if args.output else default_output_dir() / f"{args.model or 'custom'}_n{cfg.target_n}_s{cfg.rng_seed}.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    g = generate(cfg)
    wall = time.perf_counter() - t0
    write_edgelist(g, out, header=[f"pfp-topology {__version__}", f"config {json.dumps(config_dict(cfg), sort_keys=True)}"])
    meta = {
        "command": "generate",
        "version": __version__,
        "model": args.model,
        "config": config_dict(cfg),
        "seed": cfg.rng_seed,
        "N": g.node_count,
        "L": g.link_count,
        "L_int": g.internal_links,
        "L_ext": g.external_links,
        "wall_time_s": round(wall, 3),
        "edgelist": out.name,
    }
    _write_json(out.with_suffix(out.suffix + ".json"), meta)
    print(f"wrote {out} (N={g.node_count}, L={g.link_count}, seed={cfg.rng_seed})")
    return 0


def cmd_analyze(args) -> int:
    path = Path(args.input)
    g = read_edgelist(path)
    rep = report(g)
    outdir = Path(args.output_dir) if args.output_dir else default_output_dir() / f"analyze_{path.stem}"
    outdir.mkdir(parents=True, exist_ok=True)
    agg = Aggregate.from_records(None, [RunRecord(None, 0, rep.scalars(), rep.curves())])
    write_runs_csv({path.stem: agg}, outdir / "metrics.csv")
    write_curves({"curves": agg}, outdir)
    print(format_table({path.stem: agg}, title=f"Topology of {path}"))
    print(f"\nwrote {outdir}")
    return 0


def _experiment_dir(args, name: str) -> Path:
    root = Path(args.output_dir) if args.output_dir else default_output_dir()
    out = root / name
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_experiment(out: Path, aggs: dict[str, Aggregate], meta: dict) -> None:
    write_runs_csv(aggs, out / "runs.csv")
    write_curves(aggs, out)
    _write_json(out / "metadata.json", meta)


def _meta(args, command: str, **extra) -> dict:
    return {"command": command, "version": __version__, "seed": args.seed, "runs": args.runs, "nodes": args.nodes, **extra}


def cmd_table2(args) -> int:
    aggs = run_table2(n=args.nodes, runs=args.runs, base_seed=args.seed, workers=args.workers)
    out = _experiment_dir(args, "table2")
    _write_experiment(out, aggs, _meta(args, "table2"))
    print(format_table(aggs, title=f"Four models, N={args.nodes}, {args.runs} runs, base seed {args.seed}"))
    print(f"\nwrote {out}")
    return 0


def _sweep_labels(sweep, which: str) -> dict[str, Aggregate]:
    if which == "p":
        return {f"p={p:g}": agg for (p, _), agg in sweep.grid.items()}
    return {f"delta={d:g}": agg for (_, d), agg in sweep.grid.items()}


def cmd_sweep_p(args) -> int:
    values = parse_values(args.values)
    sweep = sweep_p(values, delta=args.delta, n=args.nodes, runs=args.runs, base_seed=args.seed, workers=args.workers)
    aggs = _sweep_labels(sweep, "p")
    out = _experiment_dir(args, "sweep_p")
    _write_experiment(out, aggs, _meta(args, "sweep-p", p_values=values, delta=args.delta))
    print(format_table(aggs, title=f"Sensitivity to p (delta={args.delta:g}), N={args.nodes}, {args.runs} runs"))
    print(f"\nwrote {out}")
    return 0


def cmd_sweep_delta(args) -> int:
    values = parse_values(args.values)
    sweep = sweep_delta(values, p=args.p, n=args.nodes, runs=args.runs, base_seed=args.seed, workers=args.workers)
    aggs = _sweep_labels(sweep, "delta")
    out = _experiment_dir(args, "sweep_delta")
    _write_experiment(out, aggs, _meta(args, "sweep-delta", delta_values=values, p=args.p))
    print(format_table(aggs, title=f"Sensitivity to delta (p={args.p:g}), N={args.nodes}, {args.runs} runs"))
    print(f"\nwrote {out}")
    return 0


def cmd_grid(args) -> int:
    ps, ds = parse_values(args.p), parse_values(args.delta)
    sweep = sweep_grid(ps, ds, n=args.nodes, runs=args.runs, base_seed=args.seed, workers=args.workers)
    out = _experiment_dir(args, "grid")
    write_contour_csv(sweep, out / "contour.csv")
    for metric in ("theta", "gamma", "alpha"):
        write_contour_matrix(sweep, metric, out / f"{metric}_matrix.csv")
    aggs = {f"p={p:g}_delta={d:g}": agg for (p, d), agg in sweep.grid.items()}
    write_runs_csv(aggs, out / "runs.csv")
    _write_json(out / "metadata.json", _meta(args, "grid", p_values=ps, delta_values=ds))
    print(f"{'p':>6} {'delta':>7} {'theta':>8} {'gamma':>8} {'alpha':>8}")
    for (p, d), agg in sweep.grid.items():
        m = agg.mean
        cells = [f"{m[k]:8.3f}" if m[k] is not None else f"{'n/a':>8}" for k in ("theta", "gamma", "alpha")]
        print(f"{p:6.3f} {d:7.3f} {' '.join(cells)}{'  (tipping)' if agg.tipping else ''}")
    print(f"\nwrote {out}")
    return 0


def cmd_trajectory(args) -> int:
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    tracks = {
        m: mean_trajectory(preset(m, target_n=args.nodes), args.every, args.runs, args.seed) for m in models
    }
    out = _experiment_dir(args, "trajectory")
    write_trajectory_csv(tracks, out / "seed_degree.csv")
    _write_json(out / "metadata.json", _meta(args, "trajectory", models=models, every=args.every))
    last = tracks[models[0]].samples[-1][0]
    print(f"mean degree of the seed nodes at N={last}: " + ", ".join(f"{m}={tracks[m].at(last):.1f}" for m in models))
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfp-topology", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, nodes, runs=True):
        p.add_argument("--nodes", type=int, default=nodes, help=f"network size N (default {nodes})")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="base random seed (default 0)")
        if runs:
            p.add_argument("--runs", type=int, default=10, help="networks per configuration")
            p.add_argument("--workers", type=int, default=1, help="worker processes")
            p.add_argument("--output-dir", help=f"output root (default ${OUTPUT_ENV} or ./results)")

    gen = sub.add_parser("generate", help="grow one network and write its edge list")
    common(gen, 9204, runs=False)
    gen.add_argument("--model", choices=sorted(PRESETS), help="preset model (default pfp)")
    gen.add_argument("--growth", choices=["new_node_only", "interactive"])
    gen.add_argument("--scheme", choices=["linear", "positive_feedback", "exponential"])
    gen.add_argument("--p", type=float)
    gen.add_argument("--m", type=int)
    gen.add_argument("--delta", type=float)
    gen.add_argument("--lambda", dest="lam", type=float)
    gen.add_argument("--seed-nodes", type=int, default=10)
    gen.add_argument("--seed-links", type=int, default=30)
    gen.add_argument("--output", "-o", help="edge-list path")
    gen.set_defaults(func=cmd_generate)

    an = sub.add_parser("analyze", help="compute every metric of an edge-list graph")
    an.add_argument("input")
    an.add_argument("--output-dir")
    an.set_defaults(func=cmd_analyze)

    t2 = sub.add_parser("table2", help="BA / IG / BA+PFP / PFP comparison")
    common(t2, 9204)
    t2.set_defaults(func=cmd_table2)

    sp = sub.add_parser("sweep-p", help="sensitivity to p at fixed delta")
    common(sp, 9204)
    sp.add_argument("--values", default="0,0.2,0.4,0.6,0.8")
    sp.add_argument("--delta", type=float, default=0.0)
    sp.set_defaults(func=cmd_sweep_p)

    sd = sub.add_parser("sweep-delta", help="sensitivity to delta at fixed p")
    common(sd, 9204)
    sd.add_argument("--values", default="0,0.007,0.014,0.021,0.028,0.035")
    sd.add_argument("--p", type=float, default=0.4)
    sd.set_defaults(func=cmd_sweep_delta)

    gr = sub.add_parser("grid", help="theta, gamma, alpha over a (p, delta) grid")
    common(gr, GRID_DEFAULT_N)
    gr.add_argument("--p", default="0:0.8:0.1")
    gr.add_argument("--delta", default="0:0.035:0.005")
    gr.set_defaults(func=cmd_grid)

    tr = sub.add_parser("trajectory", help="average degree growth of the seed nodes")
    common(tr, 9204)
    tr.add_argument("--models", default="ba,ig,ba+pfp,pfp")
    tr.add_argument("--every", type=int, default=100)
    tr.set_defaults(func=cmd_trajectory)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except EdgeListError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GraphError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SamplingError, RuntimeError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
