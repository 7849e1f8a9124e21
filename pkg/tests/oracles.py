"""Slow, obviously-correct reference computations for the metric tests."""

import itertools
import random

import numpy as np

from pfp_topology.graph import Graph


def random_graph(n, p, rng: random.Random, connected=False):
    g = Graph(n)
    if connected:
        for v in range(1, n):
            g.add_edge(v, rng.randrange(v))
    for u, v in itertools.combinations(range(n), 2):
        if not g.has_edge(u, v) and rng.random() < p:
            g.add_edge(u, v)
    return g


def adjacency_matrix(g):
    a = np.zeros((g.node_count, g.node_count), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def triangles_by_triples(g):
    a = adjacency_matrix(g)
    kt = np.zeros(g.node_count, dtype=int)
    for u, v, w in itertools.combinations(range(g.node_count), 3):
        if a[u, v] and a[v, w] and a[u, w]:
            kt[[u, v, w]] += 1
    return kt


def floyd_warshall(g):
    n = g.node_count
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    d[adjacency_matrix(g)] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def mean_pair_distance(g):
    d = floyd_warshall(g)
    iu = np.triu_indices(g.node_count, 1)
    return d[iu].mean()


def pearson_assortativity(g):
    deg = g.degrees()
    x, y = [], []
    for u, v in g.edges():
        x += [deg[u], deg[v]]
        y += [deg[v], deg[u]]
    return np.corrcoef(x, y)[0, 1]


def links_among(g, nodes):
    nodes = set(int(v) for v in nodes)
    return sum(1 for u, v in g.edges() if u in nodes and v in nodes)
