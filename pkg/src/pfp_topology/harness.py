"""Multi-run experiments: the four-model comparison, parameter sweeps, contour
grids and the degree growth of the seed nodes.

Each (config, run) cell is generated with ``rng_seed = base_seed + run`` and
reduced to a :class:`RunRecord`. Cells are independent, so they can be farmed
out to worker processes; results are always merged in cell order.
"""

from __future__ import annotations

import csv
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, MutableMapping, Sequence

import numpy as np

from .generators import PRESETS, ModelConfig, PreferenceScheme, generate, iter_growth, preset
from .metrics import SCALAR_FIELDS, report

TABLE2_MODELS = ("ba", "ig", "ba+pfp", "pfp")
TIPPING_DELTA = 0.028
GRID_DEFAULT_N = 3000


@dataclass(frozen=True)
class ExperimentSpec:
    configs: tuple[ModelConfig, ...]
    runs_per_config: int = 10
    base_seed: int = 0
    trajectory_tracking: bool = False

    def __post_init__(self):
        if self.runs_per_config < 1:
            raise ValueError("runs_per_config must be at least 1")


def run_seed(base_seed: int, run: int) -> int:
    return base_seed + run


@dataclass
class RunRecord:
    config: ModelConfig | None
    run: int
    scalars: dict[str, float | int | None]
    curves: dict[str, tuple[np.ndarray, np.ndarray]]


def measure(cfg: ModelConfig, run: int = 0) -> RunRecord:
    g = generate(cfg)
    rep = report(g)
    return RunRecord(config=cfg, run=run, scalars=rep.scalars(), curves=rep.curves())


@dataclass
class Curve:
    x: np.ndarray
    y_mean: np.ndarray
    y_std: np.ndarray
    n_runs: np.ndarray


@dataclass
class Aggregate:
    """Per-scalar mean and sample standard deviation over the runs of one config."""

    config: ModelConfig | None
    records: list[RunRecord]
    mean: dict[str, float | None] = field(default_factory=dict)
    std: dict[str, float | None] = field(default_factory=dict)
    undefined: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_records(cls, config: ModelConfig | None, records: list[RunRecord]) -> "Aggregate":
        agg = cls(config=config, records=records)
        for name in SCALAR_FIELDS:
            vals = [r.scalars[name] for r in records if r.scalars[name] is not None]
            agg.undefined[name] = len(records) - len(vals)
            agg.mean[name] = float(np.mean(vals)) if vals else None
            agg.std[name] = float(np.std(vals, ddof=1)) if len(vals) > 1 else None
        return agg

    @property
    def runs(self) -> int:
        return len(self.records)

    @property
    def tipping(self) -> bool:
        scheme = self.config.scheme if self.config else None
        return scheme is not None and scheme.kind == "positive_feedback" and scheme.delta > TIPPING_DELTA

    def curve(self, name: str) -> Curve:
        """Pointwise mean over runs; a run lacking an abscissa is left out there."""
        buckets: dict[float, list[float]] = {}
        for rec in self.records:
            xs, ys = rec.curves[name]
            for x, y in zip(xs.tolist(), ys.tolist()):
                buckets.setdefault(x, []).append(y)
        xs = sorted(buckets)
        ys = [np.asarray(buckets[x]) for x in xs]
        return Curve(
            x=np.array(xs),
            y_mean=np.array([y.mean() for y in ys]),
            y_std=np.array([y.std(ddof=1) if len(y) > 1 else math.nan for y in ys]),
            n_runs=np.array([len(y) for y in ys]),
        )

    def curve_names(self) -> list[str]:
        return list(self.records[0].curves) if self.records else []


def _run_cells(
    cells: Sequence[tuple[ModelConfig, int]],
    workers: int = 1,
    cache: MutableMapping[ModelConfig, RunRecord] | None = None,
) -> list[RunRecord]:
    todo = [cfg for cfg, _ in cells if cache is None or cfg not in cache]
    todo = list(dict.fromkeys(todo))
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            fresh = list(pool.map(measure, todo))
    else:
        fresh = [measure(cfg) for cfg in todo]
    done = dict(zip(todo, fresh))
    if cache is not None:
        cache.update(done)
        done = cache
    out = []
    for cfg, run in cells:
        rec = done[cfg]
        out.append(RunRecord(config=rec.config, run=run, scalars=rec.scalars, curves=rec.curves))
    return out


def run_experiment(
    spec: ExperimentSpec,
    workers: int = 1,
    cache: MutableMapping[ModelConfig, RunRecord] | None = None,
) -> list[Aggregate]:
    """Run every config ``runs_per_config`` times and average per config.

    ``configs`` may carry any ``rng_seed``; it is replaced by the per-run seed.
    """
    cells = [
        (cfg.with_seed(run_seed(spec.base_seed, run)), run)
        for cfg in spec.configs
        for run in range(spec.runs_per_config)
    ]
    records = _run_cells(cells, workers=workers, cache=cache)
    out = []
    for i, cfg in enumerate(spec.configs):
        chunk = records[i * spec.runs_per_config : (i + 1) * spec.runs_per_config]
        agg = Aggregate.from_records(cfg.with_seed(spec.base_seed), chunk)
        if agg.tipping:
            warnings.warn(
                f"delta={cfg.scheme.delta:g} is past the tipping point {TIPPING_DELTA}; "
                "fitted exponents are unstable there",
                stacklevel=2,
            )
        out.append(agg)
    return out


def run_table2(
    n: int = 9204,
    runs: int = 10,
    base_seed: int = 0,
    workers: int = 1,
    cache: MutableMapping[ModelConfig, RunRecord] | None = None,
) -> dict[str, Aggregate]:
    """BA, IG, BA+PFP and PFP, each averaged over ``runs`` networks of ``n`` nodes."""
    if n < 100:
        raise ValueError("the four-model comparison needs n >= 100")
    configs = tuple(preset(name, target_n=n) for name in TABLE2_MODELS)
    aggs = run_experiment(ExperimentSpec(configs, runs, base_seed), workers, cache)
    return dict(zip(TABLE2_MODELS, aggs))


@dataclass
class SweepResult:
    grid: dict[tuple[float, float], Aggregate]

    @property
    def per_cell_stddev(self) -> dict[tuple[float, float], dict[str, float | None]]:
        return {key: agg.std for key, agg in self.grid.items()}

    def series(self, metric: str) -> list[float | None]:
        return [agg.mean[metric] for agg in self.grid.values()]

    def p_values(self) -> list[float]:
        return sorted({p for p, _ in self.grid})

    def delta_values(self) -> list[float]:
        return sorted({d for _, d in self.grid})


def interactive_config(p: float, delta: float, n: int) -> ModelConfig:
    # delta = 0 is the linear preference; using the linear scheme makes the
    # config identical to the IG preset so cached runs are shared
    scheme = PreferenceScheme.positive_feedback(delta) if delta > 0 else PreferenceScheme.linear()
    return ModelConfig(growth="interactive", p=p, scheme=scheme, target_n=n)


def sweep_grid(
    p_values: Iterable[float],
    delta_values: Iterable[float],
    n: int = GRID_DEFAULT_N,
    runs: int = 10,
    base_seed: int = 0,
    workers: int = 1,
    cache: MutableMapping[ModelConfig, RunRecord] | None = None,
) -> SweepResult:
    """Interactive growth with positive-feedback preference over a ``(p, delta)`` grid."""
    p_values, delta_values = list(p_values), list(delta_values)
    if not p_values or not delta_values:
        raise ValueError("sweeps need at least one p and one delta value")
    for p in p_values:
        if not 0 <= p <= 1:
            raise ValueError(f"p={p} outside [0, 1]")
    for d in delta_values:
        if d < 0:
            raise ValueError(f"delta={d} is negative")
    keys = [(p, d) for p in p_values for d in delta_values]
    configs = tuple(interactive_config(p, d, n) for p, d in keys)
    aggs = run_experiment(ExperimentSpec(configs, runs, base_seed), workers, cache)
    return SweepResult(grid=dict(zip(keys, aggs)))


def sweep_p(
    p_values: Iterable[float],
    delta: float = 0.0,
    n: int = 9204,
    runs: int = 10,
    base_seed: int = 0,
    workers: int = 1,
    cache: MutableMapping[ModelConfig, RunRecord] | None = None,
) -> SweepResult:
    return sweep_grid(p_values, [delta], n, runs, base_seed, workers, cache)


def sweep_delta(
    delta_values: Iterable[float],
    p: float = 0.4,
    n: int = 9204,
    runs: int = 10,
    base_seed: int = 0,
    workers: int = 1,
    cache: MutableMapping[ModelConfig, RunRecord] | None = None,
) -> SweepResult:
    return sweep_grid([p], delta_values, n, runs, base_seed, workers, cache)


@dataclass
class Trajectory:
    """``(N, mean degree of the seed nodes)`` sampled as the network grows."""

    samples: list[tuple[int, float]]

    def at(self, n: int) -> float:
        for size, k in self.samples:
            if size == n:
                return k
        raise KeyError(n)


def track_trajectory(cfg: ModelConfig, sample_every: int) -> Trajectory:
    """Mean degree of the seed nodes every ``sample_every`` additions and at the final size."""
    if sample_every < 1:
        raise ValueError("sample_every must be at least 1")
    seeds = range(cfg.seed_nodes)
    samples = []
    for g in iter_growth(cfg):
        n = g.node_count
        if (n - cfg.seed_nodes) % sample_every == 0 or n == cfg.target_n:
            deg = g._degree
            samples.append((n, sum(deg[v] for v in seeds) / cfg.seed_nodes))
    return Trajectory(samples)


def mean_trajectory(cfg: ModelConfig, sample_every: int, runs: int, base_seed: int = 0) -> Trajectory:
    """Trajectory averaged over ``runs`` seeds, sampled at common sizes."""
    tracks = [track_trajectory(cfg.with_seed(run_seed(base_seed, r)), sample_every) for r in range(runs)]
    sizes = [n for n, _ in tracks[0].samples]
    means = np.mean([[k for _, k in t.samples] for t in tracks], axis=0)
    return Trajectory([(n, float(k)) for n, k in zip(sizes, means)])


# output


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    return "" if math.isnan(v) else repr(v)


CONFIG_COLUMNS = ("config", "growth", "scheme", "p", "m", "delta", "lambda", "n_target")


def _config_cells(label: str, cfg: ModelConfig | None) -> list[str]:
    if cfg is None:
        return [label, *("" for _ in CONFIG_COLUMNS[1:])]
    is_ig = cfg.growth == "interactive"
    return [
        label,
        cfg.growth,
        cfg.scheme.kind,
        _fmt(cfg.p) if is_ig else "",
        "" if is_ig else _fmt(cfg.m),
        _fmt(cfg.scheme.delta) if cfg.scheme.kind == "positive_feedback" else "",
        _fmt(cfg.scheme.lam) if cfg.scheme.kind == "exponential" else "",
        _fmt(cfg.target_n),
    ]


NULLABLE = ("theta", "gamma", "alpha")


def write_runs_csv(aggregates: Mapping[str, Aggregate], path: str | Path) -> None:
    """One row per (config, run) plus ``mean`` and ``std`` rows per config."""
    header = [*CONFIG_COLUMNS, "run", "seed", *SCALAR_FIELDS, "tipping", *(f"{m}_undefined" for m in NULLABLE)]
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for label, agg in aggregates.items():
            cfg_cells = _config_cells(label, agg.config)
            tip = _fmt(agg.tipping)
            for rec in agg.records:
                seed = "" if rec.config is None else str(rec.config.rng_seed)
                row = [*cfg_cells, str(rec.run), seed]
                row += [_fmt(rec.scalars[k]) for k in SCALAR_FIELDS]
                row += [tip, *(str(int(rec.scalars[m] is None)) for m in NULLABLE)]
                w.writerow(row)
            for kind, values in (("mean", agg.mean), ("std", agg.std)):
                row = [*cfg_cells, kind, ""]
                row += [_fmt(values[k]) for k in SCALAR_FIELDS]
                row += [tip, *(str(agg.undefined[m]) for m in NULLABLE)]
                w.writerow(row)


def write_curves(aggregates: Mapping[str, Aggregate], root: str | Path) -> list[Path]:
    """``<root>/<config>/<curve>.csv`` files with header ``x,y_mean,y_std,n_runs``."""
    written = []
    for label, agg in aggregates.items():
        folder = Path(root) / label
        folder.mkdir(parents=True, exist_ok=True)
        for name in agg.curve_names():
            c = agg.curve(name)
            path = folder / f"{name}.csv"
            with open(path, "w", newline="", encoding="ascii") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["x", "y_mean", "y_std", "n_runs"])
                for row in zip(c.x, c.y_mean, c.y_std, c.n_runs):
                    w.writerow([_fmt(v) for v in row])
            written.append(path)
    return written


CONTOUR_METRICS = ("theta", "gamma", "alpha")


def write_contour_csv(sweep: SweepResult, path: str | Path) -> None:
    """Long-format grid: one row per ``(p, delta)`` cell with theta, gamma, alpha."""
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(
            ["p", "delta", *CONTOUR_METRICS, *(f"{m}_std" for m in CONTOUR_METRICS), "n_runs", "tipping"]
        )
        for (p, d), agg in sweep.grid.items():
            w.writerow(
                [
                    _fmt(p),
                    _fmt(d),
                    *(_fmt(agg.mean[m]) for m in CONTOUR_METRICS),
                    *(_fmt(agg.std[m]) for m in CONTOUR_METRICS),
                    str(agg.runs),
                    _fmt(agg.tipping),
                ]
            )


def write_contour_matrix(sweep: SweepResult, metric: str, path: str | Path) -> None:
    """Matrix layout for contour plotters: rows are delta, columns are p."""
    ps, ds = sweep.p_values(), sweep.delta_values()
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["delta\\p", *(_fmt(p) for p in ps)])
        for d in ds:
            w.writerow([_fmt(d), *(_fmt(sweep.grid[(p, d)].mean[metric]) for p in ps)])


def write_trajectory_csv(trajectories: Mapping[str, Trajectory], path: str | Path) -> None:
    labels = list(trajectories)
    sizes = [n for n, _ in trajectories[labels[0]].samples]
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", *labels])
        for i, n in enumerate(sizes):
            w.writerow([str(n), *(_fmt(trajectories[l].samples[i][1]) for l in labels)])


TABLE_ROWS = (
    ("Number of nodes, N", "n", "int"),
    ("Number of links, L", "links", "int"),
    ("Rich-club exponent, theta", "theta", "2f"),
    ("Rich-club connectivity phi(0.01)", "phi_001", "pct"),
    ("Top clique size, n_clique", "top_clique", "0f"),
    ("Degree distribution P(1)", "p1", "pct"),
    ("Degree distribution P(2)", "p2", "pct"),
    ("Degree distribution P(3)", "p3", "pct"),
    ("Degree distribution exponent, gamma", "gamma", "3f"),
    ("Maximum degree, k_max", "k_max", "0f"),
    ("Assortativity coefficient, alpha", "alpha", "3f"),
    ("Characteristic path length, l*", "ell_star", "2f"),
)


def _cell(v, style: str) -> str:
    if v is None:
        return "n/a"
    if style == "pct":
        return f"{100 * v:.1f}%"
    if style == "int":
        return f"{int(round(v))}"
    return f"{v:.{style[0]}f}"


def format_table(aggregates: Mapping[str, Aggregate], title: str = "") -> str:
    """Plain-text table: metrics down, models across."""
    labels = [l.upper() if l in PRESETS else l for l in aggregates]
    rows = [[name, *(_cell(a.mean[key], style) for a in aggregates.values())] for name, key, style in TABLE_ROWS]
    extra = ["L_int/L_ext"]
    for a in aggregates.values():
        ext = a.mean["external_links"]
        extra.append(f"{a.mean['internal_links'] / ext:.3f}" if ext else "n/a")
    rows.insert(2, extra)
    head = ["", *labels]
    widths = [max(len(r[i]) for r in [head, *rows]) for i in range(len(head))]
    lines = [title] if title else []
    lines.append("  ".join(h.ljust(w) if i == 0 else h.rjust(w) for i, (h, w) in enumerate(zip(head, widths))))
    lines.append("-" * len(lines[-1]))
    for r in rows:
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))))
    return "\n".join(lines)
