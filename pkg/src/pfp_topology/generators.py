"""Growth models: BA, interactive growth (IG), BA+PFP and PFP.

Every model grows from a small connected random seed graph. Old nodes are
chosen with probability ``f(k) / sum_j f(k_j)`` where ``f`` is the degree
function of a :class:`PreferenceScheme`.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Collection, Iterator, Literal

from .graph import EdgeKind, Graph, GraphError, is_connected
from .sampling import SamplingError, WeightTree, draw_excluding

SchemeKind = Literal["linear", "positive_feedback", "exponential"]
GrowthKind = Literal["new_node_only", "interactive"]


@dataclass(frozen=True)
class PreferenceScheme:
    kind: SchemeKind = "linear"
    delta: float = 0.0
    lam: float = 1.0

    def __post_init__(self):
        if self.kind not in ("linear", "positive_feedback", "exponential"):
            raise ValueError(f"unknown preference scheme {self.kind!r}")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")

    @classmethod
    def linear(cls) -> "PreferenceScheme":
        return cls("linear")

    @classmethod
    def positive_feedback(cls, delta: float) -> "PreferenceScheme":
        return cls("positive_feedback", delta=delta)

    @classmethod
    def exponential(cls, lam: float) -> "PreferenceScheme":
        return cls("exponential", lam=lam)

    def label(self) -> str:
        if self.kind == "positive_feedback":
            return f"pfp(delta={self.delta:g})"
        if self.kind == "exponential":
            return f"exp(lambda={self.lam:g})"
        return "linear"


def preference_weight(k: float, scheme: PreferenceScheme) -> float:
    """Degree function ``f(k)``: ``k``, ``k**(1 + delta*ln k)`` or ``k**lambda``."""
    if k < 1:
        raise ValueError(f"preference weight needs degree >= 1, got {k}")
    if scheme.kind == "positive_feedback":
        return k ** (1.0 + scheme.delta * math.log(k))
    if scheme.kind == "exponential":
        return k**scheme.lam
    return float(k)


def preference_ratio(k: float, mu: float, scheme: PreferenceScheme) -> float:
    """``f(mu*k) / f(k)``: the edge a ``mu*k``-degree node has over a ``k``-degree one."""
    if mu < 1:
        raise ValueError(f"multiplier must be >= 1, got {mu}")
    return preference_weight(mu * k, scheme) / preference_weight(k, scheme)


def expected_link_ratio(p: float) -> float:
    """Long-run ``L_int / L_ext`` of interactive growth with parameter ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return (1.0 + p) / (2.0 - p)


@dataclass(frozen=True)
class ModelConfig:
    growth: GrowthKind = "interactive"
    scheme: PreferenceScheme = field(default_factory=PreferenceScheme)
    p: float = 0.4
    m: int = 3
    target_n: int = 9204
    seed_nodes: int = 10
    seed_links: int = 30
    rng_seed: int = 0

    def __post_init__(self):
        if self.growth not in ("new_node_only", "interactive"):
            raise ValueError(f"unknown growth mechanism {self.growth!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        check_seed_feasible(self.seed_nodes, self.seed_links)
        if self.target_n < self.seed_nodes:
            raise ValueError(f"target_n={self.target_n} is below seed_nodes={self.seed_nodes}")
        if self.growth == "new_node_only" and self.m > self.seed_nodes:
            raise ValueError(f"m={self.m} exceeds the {self.seed_nodes} seed nodes")
        if self.growth == "interactive" and self.seed_nodes < 4:
            raise ValueError("interactive growth needs at least 4 seed nodes")

    def with_seed(self, rng_seed: int) -> "ModelConfig":
        return replace(self, rng_seed=rng_seed)

    def label(self) -> str:
        if self.growth == "interactive":
            g = f"ig(p={self.p:g})"
        else:
            g = f"ba(m={self.m})"
        return f"{g}+{self.scheme.label()}"


PFP_DELTA = 0.021
IG_P = 0.4

PRESETS: dict[str, dict] = {
    "ba": dict(growth="new_node_only", m=3, scheme=PreferenceScheme.linear()),
    "ig": dict(growth="interactive", p=IG_P, scheme=PreferenceScheme.linear()),
    "ba+pfp": dict(
        growth="new_node_only", m=3, scheme=PreferenceScheme.positive_feedback(PFP_DELTA)
    ),
    "pfp": dict(growth="interactive", p=IG_P, scheme=PreferenceScheme.positive_feedback(PFP_DELTA)),
}


def preset(name: str, target_n: int = 9204, rng_seed: int = 0, **overrides) -> ModelConfig:
    """One of the four comparison models: ``ba``, ``ig``, ``ba+pfp``, ``pfp``."""
    try:
        params = dict(PRESETS[name.lower()])
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    params.update(overrides)
    return ModelConfig(target_n=target_n, rng_seed=rng_seed, **params)


def check_seed_feasible(n0: int, m0: int) -> None:
    if n0 < 1:
        raise ValueError("seed graph needs at least one node")
    if m0 > n0 * (n0 - 1) // 2:
        raise ValueError(f"{m0} links do not fit in a simple graph on {n0} nodes")
    if m0 < n0 - 1:
        raise ValueError(f"{m0} links cannot connect {n0} nodes")


def seed_graph(n0: int, m0: int, rng: random.Random, max_tries: int = 100_000) -> Graph:
    """Uniform draw of a connected simple graph with ``n0`` nodes and ``m0`` links."""
    check_seed_feasible(n0, m0)
    pairs = list(itertools.combinations(range(n0), 2))
    for _ in range(max_tries):
        g = Graph(n0)
        for u, v in rng.sample(pairs, m0):
            g.add_edge(u, v, EdgeKind.SEED)
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected ({n0}, {m0}) seed graph after {max_tries} draws")


class Grower:
    """Mutable growth state: the graph plus a weight tree kept in step with degrees.

    Degree changes made through :meth:`link` are pushed into the tree right
    away, so later draws within the same step see them.
    """

    def __init__(self, g: Graph, scheme: PreferenceScheme, capacity: int | None = None):
        self.g = g
        self.scheme = scheme
        self._wcache: list[float] = [0.0]
        self.tree = WeightTree(max(capacity or 0, g.node_count))
        for v in range(g.node_count):
            k = g.degree(v)
            if k:
                self.tree.set(v, self._w(k))

    def _w(self, k: int) -> float:
        cache = self._wcache
        while len(cache) <= k:
            cache.append(preference_weight(len(cache), self.scheme))
        return cache[k]

    def new_node(self) -> int:
        v = self.g.add_node()
        if v >= len(self.tree):
            self.tree.grow(2 * len(self.tree))
        return v

    def link(self, u: int, v: int, kind: EdgeKind) -> None:
        g = self.g
        g.add_edge(u, v, kind)
        self.tree.set(u, self._w(g.degree(u)))
        self.tree.set(v, self._w(g.degree(v)))

    def sample(
        self,
        rng: random.Random,
        exclude: Collection[int] = (),
        avoid_neighbors_of: int | None = None,
        reject: Callable[[int], bool] | None = None,
    ) -> int:
        if avoid_neighbors_of is not None:
            nbrs = self.g._adj[avoid_neighbors_of]
            if reject is None:
                reject = nbrs.__contains__
            else:
                extra = reject
                reject = lambda v: v in nbrs or extra(v)  # noqa: E731
        return draw_excluding(self.tree, rng, exclude, reject)

    def step_new_node_only(self, m: int, rng: random.Random) -> int:
        n = self.new_node()
        chosen: list[int] = []
        for _ in range(m):
            t = self.sample(rng, exclude=(n, *chosen))
            self.link(n, t, EdgeKind.EXTERNAL)
            chosen.append(t)
        return n

    def _free_peers(self, h: int, n: int, also_excluded: int | None = None) -> int:
        """Old nodes that ``h`` could still gain an internal link to.

        ``n`` is the node created in the current step; ``also_excluded`` is a
        second host that may not serve as the peer.
        """
        adj = self.g._adj[h]
        old_nbrs = len(adj) - (n in adj)
        free = (n - 1) - old_nbrs  # n old nodes are 0..n-1, minus h itself
        if also_excluded is not None:
            free -= also_excluded not in adj
        return free

    def step_interactive(self, p: float, rng: random.Random) -> int:
        n = self.new_node()
        if rng.random() < p:
            # one host, two internal links from it; hosts that cannot take
            # two more old neighbours are skipped (only happens in tiny dense graphs)
            h = self.sample(rng, exclude=(n,), reject=lambda v: self._free_peers(v, n) < 2)
            self.link(n, h, EdgeKind.EXTERNAL)
            for _ in range(2):
                peer = self.sample(rng, exclude=(n, h), avoid_neighbors_of=h)
                self.link(h, peer, EdgeKind.INTERNAL)
        else:
            # two hosts, one internal link from either of them
            h1 = self.sample(rng, exclude=(n,))
            self.link(n, h1, EdgeKind.EXTERNAL)
            h2 = self.sample(
                rng,
                exclude=(n, h1),
                reject=lambda v: self._free_peers(h1, n, v) < 1 and self._free_peers(v, n, h1) < 1,
            )
            self.link(n, h2, EdgeKind.EXTERNAL)
            host, other = (h1, h2) if rng.random() < 0.5 else (h2, h1)
            if self._free_peers(host, n, other) < 1:
                host, other = other, host
            peer = self.sample(rng, exclude=(n, h1, h2), avoid_neighbors_of=host)
            self.link(host, peer, EdgeKind.INTERNAL)
        return n


def sample_preferential(
    g: Graph, scheme: PreferenceScheme, exclude: Collection[int], rng: random.Random
) -> int:
    """Draw one node outside ``exclude`` with probability proportional to ``f(degree)``."""
    if all(v in exclude for v in range(g.node_count)):
        raise SamplingError("every node is excluded")
    return Grower(g, scheme).sample(rng, exclude=frozenset(exclude))


def step_new_node_only(g: Graph, m: int, scheme: PreferenceScheme, rng: random.Random) -> int:
    """Add one node linked to ``m`` distinct preferentially chosen old nodes."""
    if g.node_count < m:
        raise GraphError(f"need at least {m} nodes, have {g.node_count}")
    return Grower(g, scheme).step_new_node_only(m, rng)


def step_interactive(g: Graph, p: float, scheme: PreferenceScheme, rng: random.Random) -> int:
    """One interactive-growth step: a new node, its host(s) and new internal links."""
    if g.node_count < 4:
        raise GraphError(f"need at least 4 nodes, have {g.node_count}")
    return Grower(g, scheme).step_interactive(p, rng)


def iter_growth(cfg: ModelConfig) -> Iterator[Graph]:
    """Yield the graph after the seed is built and after every growth step.

    The same ``Graph`` object is yielded each time; it is mutated in place.
    """
    rng = random.Random(cfg.rng_seed)
    g = seed_graph(cfg.seed_nodes, cfg.seed_links, rng)
    grower = Grower(g, cfg.scheme, capacity=cfg.target_n)
    yield g
    for _ in range(cfg.target_n - cfg.seed_nodes):
        if cfg.growth == "interactive":
            grower.step_interactive(cfg.p, rng)
        else:
            grower.step_new_node_only(cfg.m, rng)
        yield g


def generate(cfg: ModelConfig) -> Graph:
    g = None
    for g in iter_growth(cfg):
        pass
    return g
