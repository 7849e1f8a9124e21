import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfp_topology import metrics as M
from pfp_topology.graph import Graph, GraphError

from oracles import (
    links_among,
    mean_pair_distance,
    pearson_assortativity,
    random_graph,
    triangles_by_triples,
)


def complete(n):
    return Graph.from_edges(itertools.combinations(range(n), 2))


def star(leaves):
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)])


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


# degree distribution


def test_degree_distribution_k4():
    dd = M.degree_distribution(complete(4))
    assert dd.pk == {3: 1.0}
    assert dd.max_degree == 3
    assert dd.gamma is None


def test_degree_distribution_sums_to_one():
    g = random_graph(40, 0.1, random.Random(1))
    dd = M.degree_distribution(g)
    assert sum(dd.pk.values()) == pytest.approx(1.0, abs=1e-9)
    assert dd.max_degree == max(k for k, p in dd.pk.items() if p > 0)
    ccdf = dd.ccdf()
    assert ccdf[0] == pytest.approx(1.0)
    assert all(ccdf[k] >= ccdf[k + 1] for k in range(dd.max_degree))


def test_density_exponent_from_planted_counts():
    k = np.arange(2, 101)
    counts = np.zeros(101, dtype=np.int64)
    counts[2:] = np.round(1e9 * k**-2.5)
    dd = M.distribution_from_counts(counts)
    assert dd.gamma_density == pytest.approx(-2.5, abs=0.01)


def test_cumulative_exponent_from_planted_counts():
    # choose counts so that the number of nodes with degree >= k is C * k**-1.5 exactly
    # (up to rounding) far beyond the fit range; the density then goes as k**-2.5
    kmax = 200_000
    k = np.arange(2, kmax + 2, dtype=float)
    at_least = np.round(1e12 * k**-1.5).astype(np.int64)
    counts = np.zeros(kmax + 1, dtype=np.int64)
    counts[2:] = at_least[:-1] - at_least[1:]
    counts[kmax] += at_least[-1]
    dd = M.distribution_from_counts(counts)
    assert dd.gamma == pytest.approx(-2.5, abs=1e-6)


def test_degree_distribution_from_graph_matches_counts():
    g = random_graph(60, 0.2, random.Random(4))
    a = M.degree_distribution(g)
    b = M.distribution_from_counts(np.bincount(g.degrees()))
    assert a == b


# rich club


def test_rich_club_complete():
    rc = M.rich_club(complete(5))
    x, phi = rc.curve()
    assert np.all(phi == 1.0)
    assert rc.top_clique == 5


def test_rich_club_star():
    g = star(4)
    rc = M.rich_club(g)
    assert rc.ranked_nodes[0] == 0
    assert list(rc.ranked_nodes) == [0, 1, 2, 3, 4]
    assert rc.top_clique == 2
    assert rc.phi_rank(2) == 1.0
    # top-3: centre plus two leaves, 2 of 3 possible links
    assert rc.phi_rank(3) == pytest.approx(2 / 3)
    assert rc.phi_rank(5) == pytest.approx(4 / 10)


def test_rich_club_full_rank_is_density():
    g = random_graph(30, 0.2, random.Random(3), connected=True)
    rc = M.rich_club(g)
    assert rc.phi_rank(30) == pytest.approx(2 * g.link_count / (30 * 29))


def test_rich_club_tie_break_by_id():
    g = cycle(6)
    assert list(M.rich_club(g).ranked_nodes) == list(range(6))


def test_rich_club_phi_at():
    g = complete(3)
    rc = M.rich_club(g)
    assert rc.phi_at(0.01) == 1.0  # r clamped up to 2
    with pytest.raises(ValueError):
        rc.phi_rank(1)


# assortativity and knn


@pytest.mark.parametrize("n", [3, 4, 7, 20])
def test_star_is_perfectly_disassortative(n):
    assert M.assortativity(star(n)) == pytest.approx(-1.0)


def test_regular_graphs_are_undefined():
    assert M.assortativity(cycle(7)) is None
    assert M.assortativity(complete(6)) is None
    with pytest.raises(GraphError):
        M.assortativity(Graph(3))


def test_knn_examples():
    assert M.knn_by_degree(complete(4)) == {3: 3.0}
    assert M.knn_by_degree(star(4)) == {1: 4.0, 4: 1.0}
    assert M.knn_by_degree(path(3)) == {1: 2.0, 2: 1.0}
    with pytest.raises(GraphError, match="isolated"):
        M.knn_by_degree(Graph.from_edges([(0, 1)], n=3))


# paths


def test_path_stats_examples():
    assert M.path_stats(complete(6)).ell_star == 1.0
    ps = M.path_stats(path(3))
    assert ps.ell_star == pytest.approx(4 / 3)
    assert ps.ccd == {1: 1.0, 2: pytest.approx(1 / 3)}
    assert list(ps.pair_counts) == [0, 2, 1]


def test_path_stats_disconnected():
    with pytest.raises(GraphError, match="node 2"):
        M.path_stats(Graph.from_edges([(0, 1), (2, 3)]))


def test_path_stats_more_than_64_sources():
    # crosses several 64-source batches
    g = path(200)
    expected = sum(d * (200 - d) for d in range(1, 200)) / (200 * 199 / 2)
    assert M.path_stats(g).ell_star == pytest.approx(expected, rel=1e-12)


# triangles


def test_triangle_examples():
    ts = M.triangle_stats(complete(3))
    assert list(ts.kt) == [1, 1, 1] and np.all(ts.clustering == 1)
    ts = M.triangle_stats(complete(4))
    assert list(ts.kt) == [3] * 4 and np.all(ts.clustering == 1)
    ts = M.triangle_stats(star(4))
    assert not ts.kt.any()
    assert ts.ccd == {0: 1.0}
    assert np.isnan(ts.clustering[1])


def test_triangles_random_50():
    g = random_graph(50, 0.2, random.Random(50))
    assert np.array_equal(M.triangle_counts(g), triangles_by_triples(g))


# report


def test_report_complete_graph():
    r = M.report(complete(10))
    assert r.phi_001 == 1.0
    assert r.alpha is None
    assert r.ell_star == 1.0
    assert r.gamma is None
    assert r.top_clique == 10
    assert (r.n, r.links, r.k_max) == (10, 45, 9)


def test_report_is_deterministic():
    g = random_graph(60, 0.1, random.Random(9), connected=True)
    a, b = M.report(g), M.report(g)
    assert repr(a.scalars()) == repr(b.scalars())
    for name, (x, y) in a.curves().items():
        x2, y2 = b.curves()[name]
        assert np.array_equal(x, x2) and np.array_equal(y, y2)


# oracle equivalences on random graphs

graph_params = st.tuples(st.integers(2, 60), st.floats(0.02, 0.6), st.integers(0, 2**32))


@settings(max_examples=60, deadline=None)
@given(graph_params)
def test_triangles_match_triple_scan(params):
    n, p, seed = params
    g = random_graph(n, p, random.Random(seed))
    kt = M.triangle_counts(g)
    assert np.array_equal(kt, triangles_by_triples(g))
    deg = g.degrees()
    assert np.all(kt <= deg * (deg - 1) // 2)


@settings(max_examples=60, deadline=None)
@given(graph_params)
def test_ell_star_matches_floyd_warshall(params):
    n, p, seed = params
    g = random_graph(n, p, random.Random(seed), connected=True)
    assert M.path_stats(g).ell_star == pytest.approx(mean_pair_distance(g), abs=1e-12)
    ccd = list(M.path_stats(g).ccd.values())
    assert ccd[0] <= 1 and all(a >= b for a, b in zip(ccd, ccd[1:]))


@settings(max_examples=60, deadline=None)
@given(graph_params)
def test_alpha_matches_pearson(params):
    n, p, seed = params
    g = random_graph(n, p, random.Random(seed), connected=True)
    alpha = M.assortativity(g)
    deg = g.degrees()
    ends = np.array([(deg[u], deg[v]) for u, v in g.edges()])
    if np.all(ends == ends[0, 0]):
        assert alpha is None
    else:
        assert alpha == pytest.approx(pearson_assortativity(g), abs=1e-9)
        assert -1 - 1e-12 <= alpha <= 1 + 1e-12


@settings(max_examples=60, deadline=None)
@given(graph_params, st.data())
def test_rich_club_matches_recount(params, data):
    n, p, seed = params
    g = random_graph(n, p, random.Random(seed))
    rc = M.rich_club(g)
    for r in data.draw(st.lists(st.integers(2, n), min_size=1, max_size=10)):
        top = rc.ranked_nodes[:r]
        assert rc.links_top[r] == links_among(g, top)
        assert 0.0 <= rc.phi_rank(r) <= 1.0
    # every prefix up to n_clique is a clique, the next one is not
    for m in range(2, rc.top_clique + 1):
        assert links_among(g, rc.ranked_nodes[:m]) == m * (m - 1) // 2
    if rc.top_clique < n:
        m = rc.top_clique + 1
        assert links_among(g, rc.ranked_nodes[:m]) < m * (m - 1) // 2
    deg = g.degrees()[rc.ranked_nodes]
    assert np.all(deg[:-1] >= deg[1:])
