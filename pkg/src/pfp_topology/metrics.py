"""Topology statistics of an undirected graph.

All functions are pure: they read a finished :class:`~pfp_topology.graph.Graph`
and never mutate it. Probabilities are stored as fractions, not percentages.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from .fitting import fit_power_law
from .graph import Graph, GraphError, unreachable_from_zero

DEGREE_FIT_RANGE = (2, 100)
RICH_CLUB_FIT_RANGE = (0.1, 1.0)


@dataclass
class DegreeDistribution:
    """Empirical ``P(k)`` and its power-law exponent.

    ``gamma`` is read off the cumulative distribution: ``P(>=k) ~ k**(gamma+1)``
    is fitted over the integer degrees of ``fit_range``. ``gamma_density`` fits
    ``P(k)`` itself on the populated degrees; single-count tail points make it
    run flatter on finite graphs.
    """

    pk: dict[int, float]
    max_degree: int
    gamma: float | None
    gamma_density: float | None = None
    fit_range: tuple[float, float] = DEGREE_FIT_RANGE

    def p(self, k: int) -> float:
        return self.pk.get(k, 0.0)

    def ccdf(self) -> dict[int, float]:
        """``P(>=k)`` at every integer ``k`` from 0 to ``max_degree``."""
        tail = 0.0
        out = {}
        for k in range(self.max_degree, -1, -1):
            tail += self.pk.get(k, 0.0)
            out[k] = tail
        return dict(sorted(out.items()))


@dataclass
class RichClubCurve:
    ranked_nodes: np.ndarray
    # links among the top-r nodes, indexed by r (entry 0 and 1 are 0)
    links_top: np.ndarray
    theta: float | None
    top_clique: int
    fit_range: tuple[float, float] = RICH_CLUB_FIT_RANGE

    @property
    def n(self) -> int:
        return len(self.ranked_nodes)

    def phi_rank(self, r: int) -> float:
        """Rich-club connectivity of the ``r`` best-connected nodes, ``r >= 2``."""
        if not 2 <= r <= self.n:
            raise ValueError(f"rank must lie in [2, {self.n}], got {r}")
        return float(self.links_top[r]) / (r * (r - 1) / 2)

    def phi_at(self, fraction: float) -> float:
        """``phi(r/N)`` at ``r = round(fraction * N)``, clamped to ``r >= 2``."""
        r = min(self.n, max(2, int(round(fraction * self.n))))
        return self.phi_rank(r)

    def curve(self) -> tuple[np.ndarray, np.ndarray]:
        """``(r/N, phi)`` for every rank ``r = 2..N``."""
        r = np.arange(2, self.n + 1)
        return r / self.n, self.links_top[2:] / (r * (r - 1) / 2)


@dataclass
class MixingStats:
    alpha: float | None
    knn: dict[int, float]


@dataclass
class PathStats:
    # pair_counts[l] = number of unordered node pairs at hop distance l
    pair_counts: np.ndarray
    ell_star: float

    @property
    def ccd(self) -> dict[int, float]:
        counts = self.pair_counts
        total = counts.sum()
        tail = np.cumsum(counts[::-1])[::-1]
        return {l: float(tail[l] / total) for l in range(1, len(counts))}


@dataclass
class TriangleStats:
    kt: np.ndarray
    clustering: np.ndarray
    ccd: dict[int, float]
    kt_by_degree: dict[int, float]


@dataclass
class MetricsReport:
    n: int
    links: int
    internal_links: int
    external_links: int
    theta: float | None
    phi_001: float
    top_clique: int
    p1: float
    p2: float
    p3: float
    gamma: float | None
    k_max: int
    alpha: float | None
    ell_star: float
    degree: DegreeDistribution = field(repr=False)
    rich_club: RichClubCurve = field(repr=False)
    mixing: MixingStats = field(repr=False)
    paths: PathStats = field(repr=False)
    triangles: TriangleStats = field(repr=False)

    def scalars(self) -> dict[str, float | int | None]:
        return {name: getattr(self, name) for name in SCALAR_FIELDS}

    def curves(self) -> dict[str, tuple[np.ndarray, np.ndarray]]:
        """Plot-ready curves keyed by a short file-friendly name."""
        dd = self.degree.pk
        knn = self.mixing.knn
        kt_ccd = self.triangles.ccd
        kt_k = self.triangles.kt_by_degree
        path_ccd = self.paths.ccd
        return {
            "degree_distribution": _xy(dd),
            "rich_club": self.rich_club.curve(),
            "knn": _xy(knn),
            "path_length_ccd": _xy(path_ccd),
            "triangle_ccd": _xy(kt_ccd),
            "triangles_by_degree": _xy(kt_k),
        }


SCALAR_FIELDS = (
    "n",
    "links",
    "internal_links",
    "external_links",
    "theta",
    "phi_001",
    "top_clique",
    "p1",
    "p2",
    "p3",
    "gamma",
    "k_max",
    "alpha",
    "ell_star",
)


def _xy(mapping: dict) -> tuple[np.ndarray, np.ndarray]:
    keys = sorted(mapping)
    return np.array(keys, dtype=float), np.array([mapping[k] for k in keys], dtype=float)


def degree_distribution(g: Graph) -> DegreeDistribution:
    if g.node_count < 1:
        raise GraphError("degree distribution of an empty graph")
    return distribution_from_counts(np.bincount(g.degrees()))


def distribution_from_counts(counts: np.ndarray) -> DegreeDistribution:
    """Degree distribution from ``counts[k]`` = number of nodes of degree ``k``."""
    counts = np.trim_zeros(np.asarray(counts, dtype=np.int64), "b")
    n = int(counts.sum())
    if n == 0:
        raise GraphError("degree distribution of an empty graph")
    pk = {int(k): float(c / n) for k, c in enumerate(counts) if c}
    lo, hi = DEGREE_FIT_RANGE
    ccdf = np.cumsum(counts[::-1])[::-1] / n
    ks = np.arange(lo, min(hi, len(counts) - 1) + 1)
    populated = np.count_nonzero(counts[lo : hi + 1])
    slope = fit_power_law(zip(ks, ccdf[ks]), DEGREE_FIT_RANGE) if populated >= 3 else None
    return DegreeDistribution(
        pk=pk,
        max_degree=len(counts) - 1,
        gamma=None if slope is None else slope - 1.0,
        gamma_density=fit_power_law(pk.items(), DEGREE_FIT_RANGE),
    )


def degree_ranking(g: Graph) -> np.ndarray:
    """Node ids by non-increasing degree, ties broken by ascending id."""
    deg = g.degrees()
    return np.lexsort((np.arange(g.node_count), -deg))


def rich_club(g: Graph) -> RichClubCurve:
    n = g.node_count
    if n < 2:
        raise GraphError("rich-club connectivity needs at least two nodes")
    order = degree_ranking(g)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    edges = g.edge_array()
    # an edge joins the club when its lower-ranked endpoint does
    joins = np.maximum(rank[edges[:, 0]], rank[edges[:, 1]]) if len(edges) else np.empty(0, int)
    links_top = np.zeros(n + 1, dtype=np.int64)
    links_top[1:] = np.cumsum(np.bincount(joins, minlength=n))

    r = np.arange(n + 1)
    full = r * (r - 1) // 2
    short = np.nonzero(links_top[2:] < full[2:])[0]
    top_clique = int(short[0]) + 1 if len(short) else n

    curve = RichClubCurve(ranked_nodes=order, links_top=links_top, theta=None, top_clique=top_clique)
    x, phi = curve.curve()
    curve.theta = fit_power_law(zip(x, phi), RICH_CLUB_FIT_RANGE)
    return curve


def _endpoint_degrees(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    deg = g.degrees()
    edges = g.edge_array()
    return deg[edges[:, 0]], deg[edges[:, 1]]


def assortativity(g: Graph) -> float | None:
    """Degree assortativity over links; None when every endpoint degree is equal.

    Evaluated in exact integer arithmetic as
    ``(4 L sum(jk) - S^2) / (2 L sum(j^2 + k^2) - S^2)`` with ``S = sum(j + k)``.
    """
    L = g.link_count
    if L == 0:
        raise GraphError("assortativity of a graph without links")
    j, k = _endpoint_degrees(g)
    j = [int(x) for x in j]
    k = [int(x) for x in k]
    s1 = sum(j) + sum(k)
    s2 = sum(a * a for a in j) + sum(b * b for b in k)
    prod = sum(a * b for a, b in zip(j, k))
    num = 4 * L * prod - s1 * s1
    den = 2 * L * s2 - s1 * s1
    if den == 0:
        return None
    return num / den


def knn_by_degree(g: Graph) -> dict[int, float]:
    """Average nearest-neighbor degree of nodes, averaged within each degree class."""
    deg = g.degrees()
    if g.node_count and deg.min() == 0:
        raise GraphError(f"node {int(np.argmin(deg))} is isolated")
    edges = g.edge_array()
    nbr_sum = np.zeros(g.node_count, dtype=float)
    np.add.at(nbr_sum, edges[:, 0], deg[edges[:, 1]])
    np.add.at(nbr_sum, edges[:, 1], deg[edges[:, 0]])
    knn_node = nbr_sum / deg
    per_class = np.bincount(deg, weights=knn_node)
    n_class = np.bincount(deg)
    return {int(k): float(per_class[k] / n_class[k]) for k in np.nonzero(n_class)[0]}


def mixing(g: Graph) -> MixingStats:
    return MixingStats(alpha=assortativity(g), knn=knn_by_degree(g))


@numba.njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@numba.njit(cache=True)
def _bfs_distance_histogram(indptr, indices, n):
    """Ordered-pair counts per hop distance.

    Runs 64 breadth-first searches at once, one per bit of a uint64 word:
    bit ``i`` of ``frontier[v]`` is set when ``v`` sits on the current BFS
    layer of source ``base + i``.
    """
    hist = np.zeros(n + 1, dtype=np.int64)
    visited = np.empty(n, dtype=np.uint64)
    frontier = np.empty(n, dtype=np.uint64)
    nxt = np.empty(n, dtype=np.uint64)
    for base in range(0, n, 64):
        visited[:] = 0
        frontier[:] = 0
        for i in range(min(64, n - base)):
            bit = np.uint64(1) << np.uint64(i)
            visited[base + i] = bit
            frontier[base + i] = bit
        d = 0
        active = True
        while active:
            d += 1
            active = False
            for v in range(n):
                acc = np.uint64(0)
                for e in range(indptr[v], indptr[v + 1]):
                    acc |= frontier[indices[e]]
                nxt[v] = acc & ~visited[v]
            for v in range(n):
                x = nxt[v]
                if x:
                    active = True
                    visited[v] |= x
                    hist[d] += _popcount64(x)
                frontier[v] = x
    return hist


def path_stats(g: Graph) -> PathStats:
    """Hop-distance statistics over all unordered node pairs (BFS from every node)."""
    if g.node_count < 2:
        raise GraphError("path statistics need at least two nodes")
    missing = unreachable_from_zero(g)
    if missing is not None:
        raise GraphError(f"graph is disconnected: node {missing} is unreachable from node 0")
    indptr, indices = g.csr()
    hist = _bfs_distance_histogram(indptr, indices, g.node_count)
    last = int(np.nonzero(hist)[0].max())
    pair_counts = hist[: last + 1] // 2
    ell_star = float((np.arange(last + 1) * pair_counts).sum() / pair_counts.sum())
    return PathStats(pair_counts=pair_counts, ell_star=ell_star)


def triangle_counts(g: Graph) -> np.ndarray:
    """Per-node number of links among its neighbours."""
    adj = g._adj
    kt = np.zeros(g.node_count, dtype=np.int64)
    for u, v in g.edges():
        # each triangle u < v < w is found exactly once, from its lowest edge
        for w in adj[u] & adj[v]:
            if w > v:
                kt[u] += 1
                kt[v] += 1
                kt[w] += 1
    return kt


def triangle_stats(g: Graph) -> TriangleStats:
    kt = triangle_counts(g)
    deg = g.degrees()
    pairs = deg * (deg - 1) / 2
    with np.errstate(invalid="ignore", divide="ignore"):
        clustering = np.where(deg >= 2, kt / np.where(pairs > 0, pairs, 1), np.nan)
    n = g.node_count
    values, counts = np.unique(kt, return_counts=True)
    tail = np.cumsum(counts[::-1])[::-1]
    ccd = {int(v): float(t / n) for v, t in zip(values, tail)}
    kt_sum = np.bincount(deg, weights=kt)
    n_class = np.bincount(deg)
    kt_by_degree = {int(k): float(kt_sum[k] / n_class[k]) for k in np.nonzero(n_class)[0]}
    return TriangleStats(kt=kt, clustering=clustering, ccd=ccd, kt_by_degree=kt_by_degree)


def report(g: Graph) -> MetricsReport:
    if g.node_count < 3:
        raise GraphError("a metrics report needs at least three nodes")
    dd = degree_distribution(g)
    rc = rich_club(g)
    mx = mixing(g)
    ps = path_stats(g)
    ts = triangle_stats(g)
    return MetricsReport(
        n=g.node_count,
        links=g.link_count,
        internal_links=g.internal_links,
        external_links=g.external_links,
        theta=rc.theta,
        phi_001=rc.phi_at(0.01),
        top_clique=rc.top_clique,
        p1=dd.p(1),
        p2=dd.p(2),
        p3=dd.p(3),
        gamma=dd.gamma,
        k_max=dd.max_degree,
        alpha=mx.alpha,
        ell_star=ps.ell_star,
        degree=dd,
        rich_club=rc,
        mixing=mx,
        paths=ps,
        triangles=ts,
    )
