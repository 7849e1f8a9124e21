"""Undirected simple graph with link-kind counters, plus edge-list I/O."""

from __future__ import annotations

import enum
from collections import deque
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np


class GraphError(ValueError):
    pass


class EdgeListError(ValueError):
    """Raised when an edge-list file cannot be parsed; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EdgeKind(str, enum.Enum):
    SEED = "seed"
    INTERNAL = "internal"
    EXTERNAL = "external"


class Graph:
    """Undirected simple graph over dense integer ids ``0..N-1``.

    Node ids are handed out in creation order, so a smaller id always means an
    older node. Link kinds are only tracked as aggregate counters.
    """

    def __init__(self, n: int = 0):
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._degree: list[int] = [0] * n
        self.seed_links = 0
        self.internal_links = 0
        self.external_links = 0

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def link_count(self) -> int:
        return self.seed_links + self.internal_links + self.external_links

    def __len__(self) -> int:
        return len(self._adj)

    def __repr__(self) -> str:
        return f"Graph(N={self.node_count}, L={self.link_count})"

    def add_node(self) -> int:
        self._adj.append(set())
        self._degree.append(0)
        return len(self._adj) - 1

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise GraphError(f"unknown node {v}")

    def add_edge(self, u: int, v: int, kind: EdgeKind | str = EdgeKind.SEED) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        if v in self._adj[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        kind = EdgeKind(kind)
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._degree[u] += 1
        self._degree[v] += 1
        if kind is EdgeKind.INTERNAL:
            self.internal_links += 1
        elif kind is EdgeKind.EXTERNAL:
            self.external_links += 1
        else:
            self.seed_links += 1

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        self._check(v)
        return self._degree[v]

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return frozenset(self._adj[v])

    def degrees(self) -> np.ndarray:
        return np.array(self._degree, dtype=np.int64)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if v > u:
                    yield u, v

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(L, 2)`` int array, same order as :meth:`edges`."""
        arr = np.fromiter(
            (x for e in self.edges() for x in e), dtype=np.int64, count=2 * self.link_count
        )
        return arr.reshape(-1, 2)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed adjacency ``(indptr, indices)`` with sorted neighbor lists."""
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        np.cumsum(self._degree, out=indptr[1:])
        indices = np.fromiter(
            (v for nbrs in self._adj for v in sorted(nbrs)), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        edges = list(edges)
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v, EdgeKind.SEED)
        return g


def is_connected(g: Graph) -> bool:
    return unreachable_from_zero(g) is None


def unreachable_from_zero(g: Graph) -> int | None:
    """First node (by id) not reached by a traversal from node 0, or None."""
    n = g.node_count
    if n == 0:
        raise GraphError("connectivity is undefined for an empty graph")
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    adj = g._adj
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    for v, s in enumerate(seen):
        if not s:
            return v
    return None


def write_edgelist(g: Graph, path: str | Path, header: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def read_edgelist(path: str | Path) -> Graph:
    """Parse an edge list; the node count is one past the largest id seen.

    Duplicate lines (including reversed pairs) are rejected rather than merged,
    as are self-loops.
    """
    edges: list[tuple[int, int]] = []
    lines: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListError(f"expected two node ids, got {line!r}", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListError(f"non-integer node id in {line!r}", lineno) from None
            if u < 0 or v < 0:
                raise EdgeListError(f"negative node id in {line!r}", lineno)
            edges.append((u, v))
            lines.append(lineno)
    n = 1 + max((max(e) for e in edges), default=-1)
    g = Graph(n)
    for (u, v), lineno in zip(edges, lines):
        try:
            g.add_edge(u, v, EdgeKind.SEED)
        except GraphError as exc:
            raise EdgeListError(str(exc), lineno) from None
    return g
