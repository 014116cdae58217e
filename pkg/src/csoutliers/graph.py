"""Immutable undirected simple graphs and the traversal primitives used by the solvers.

Vertices are dense integers ``0..n-1``. Graphs loaded from files remember the
original ids in :attr:`Graph.labels` so results can be reported in file ids.
"""
from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

INFINITE = math.inf


class GraphParseError(ValueError):
    """Raised on a malformed edge-list line."""

    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line.strip()!r}")
        self.lineno = lineno


class Graph:
    """Undirected simple graph stored as sorted adjacency tuples.

    Parameters
    ----------
    adjacency : sequence of iterables
        ``adjacency[u]`` lists the neighbours of ``u``. Must already be
        symmetric; use :meth:`from_edges` for raw edge data.
    labels : sequence of int, optional
        Original vertex ids, one per dense id. Defaults to the identity.
    """

    __slots__ = ("adj", "n", "m", "labels")

    def __init__(self, adjacency: Sequence[Iterable[int]], labels: Sequence[int] | None = None):
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(nb))) for nb in adjacency)
        self.n = len(self.adj)
        total = sum(len(nb) for nb in self.adj)
        if total % 2:
            raise ValueError("adjacency is not symmetric")
        self.m = total // 2
        self.labels: tuple[int, ...] = tuple(labels) if labels is not None else tuple(range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[int] | None = None) -> "Graph":
        """Build a graph on ``n`` vertices, dropping self-loops and duplicates."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return cls(nbrs, labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.adj, self.labels))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def index_of(self) -> dict[int, int]:
        """Map original id -> dense id."""
        return {lab: i for i, lab in enumerate(self.labels)}

    def to_labels(self, vertices: Iterable[int]) -> list[int]:
        """Translate dense ids to original ids, sorted."""
        return sorted(self.labels[v] for v in vertices)

    def check_invariants(self) -> None:
        """Full scan of symmetry, simplicity and range; raises AssertionError."""
        for u, nb in enumerate(self.adj):
            assert list(nb) == sorted(set(nb)), f"neighbours of {u} not sorted/unique"
            for v in nb:
                assert 0 <= v < self.n, f"neighbour {v} of {u} out of range"
                assert v != u, f"self-loop at {u}"
                assert u in self.adj[v], f"edge ({u}, {v}) not symmetric"
        assert 2 * self.m == sum(len(nb) for nb in self.adj)


def load_edge_list(lines: Iterable[str] | str) -> Graph:
    """Parse a SNAP-style edge list.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Sparse ids
    are compacted to ``0..n-1`` in increasing order of original id; the
    original ids are kept in ``Graph.labels``.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    raw: list[tuple[int, int]] = []
    ids: set[int] = set()
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        parts = s.split()
        if len(parts) < 2:
            raise GraphParseError(lineno, line, "expected two vertex ids")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(lineno, line, "non-integer vertex id") from None
        if u < 0 or v < 0:
            raise GraphParseError(lineno, line, "negative vertex id")
        raw.append((u, v))
        ids.add(u)
        ids.add(v)
    labels = sorted(ids)
    if labels == list(range(len(labels))):
        return Graph.from_edges(len(labels), raw)
    index = {lab: i for i, lab in enumerate(labels)}
    return Graph.from_edges(len(labels), ((index[u], index[v]) for u, v in raw), labels)


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range for n={G.n}")


def bfs_distances(G: Graph, source: int) -> list[float]:
    """Hop distances from ``source``; unreachable vertices get ``INFINITE``."""
    _check_vertex(G, source)
    return multi_source_distances(G, [source])


def multi_source_distances(G: Graph, sources: Iterable[int]) -> list[float]:
    """Distance from every vertex to the nearest vertex of ``sources``."""
    sources = list(sources)
    if not sources:
        raise ValueError("source set is empty")
    dist: list[float] = [INFINITE] * G.n
    frontier = []
    for s in sources:
        _check_vertex(G, s)
        if dist[s]:
            dist[s] = 0
            frontier.append(s)
    adj = G.adj
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] is INFINITE:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def connected_components(G: Graph) -> list[int]:
    """Component label per vertex, dense and ordered by smallest member id."""
    label = [-1] * G.n
    adj = G.adj
    c = 0
    for s in range(G.n):
        if label[s] >= 0:
            continue
        label[s] = c
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if label[w] < 0:
                    label[w] = c
                    queue.append(w)
        c += 1
    return label


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or max(connected_components(G)) == 0


def induced_subgraph(G: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``keep`` with the order-preserving relabel map.

    Labels of the result are inherited from ``G`` so original ids survive
    repeated restriction.
    """
    kept = sorted(set(keep))
    for v in kept:
        _check_vertex(G, v)
    relabel = {v: i for i, v in enumerate(kept)}
    adj = [[relabel[w] for w in G.adj[v] if w in relabel] for v in kept]
    return Graph(adj, [G.labels[v] for v in kept]), relabel


def diameter_exact(G: Graph) -> float:
    """Largest shortest-path distance; ``INFINITE`` if disconnected, 0 if n <= 1.

    Uses bit-parallel BFS: ``reach[v]`` holds the set of sources within the
    current radius of ``v`` and grows by one hop per round.
    """
    n = G.n
    if n <= 1:
        return 0
    if not is_connected(G):
        return INFINITE
    adj = G.adj
    full = (1 << n) - 1
    reach = [1 << v for v in range(n)]
    rounds = 0
    while True:
        done = True
        for v in range(n):
            if reach[v] != full:
                done = False
                break
        if done:
            return rounds
        rounds += 1
        new = reach[:]
        for v in range(n):
            r = new[v]
            for w in adj[v]:
                r |= reach[w]
            new[v] = r
        reach = new


def eccentricity(G: Graph, v: int) -> float:
    return max(bfs_distances(G, v), default=0)


def min_degree(G: Graph) -> int:
    if G.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(len(nb) for nb in G.adj)
