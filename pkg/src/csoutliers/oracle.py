"""Brute-force exact solver over all vertex subsets, for small graphs.

Used as ground truth by the test suite. Deliberately shares no code with the
peeling algorithms: subsets are bitmasks and every check is a bit-level BFS
inside the induced subgraph.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .problem import ProblemSpec, QuerySet, Variant

DEFAULT_GUARD = 20
WITNESS_CAP = 64


class OracleRefused(ValueError):
    """The graph is above the enumeration guard."""


@dataclass(frozen=True)
class OracleResult:
    """Best objective over all feasible subsets.

    ``optimum`` is ``None`` when no subset is feasible. ``witnesses`` holds up
    to :data:`WITNESS_CAP` optimal vertex sets (in bitmask order);
    ``count`` is the exact number of optimal sets.
    """

    variant: Variant
    optimum: int | None
    witnesses: tuple[tuple[int, ...], ...]
    count: int
    opt_min_diameter_among_witnesses: int | None = None

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _connected(mask: int, nb: list[int]) -> bool:
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= nb[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def _ecc(v: int, mask: int, nb: list[int]) -> int:
    """Eccentricity of v inside the (connected) subgraph ``mask``."""
    seen = frontier = 1 << v
    d = 0
    while True:
        nxt = 0
        for u in _bits(frontier):
            nxt |= nb[u]
        nxt &= mask & ~seen
        if not nxt:
            return d
        seen |= nxt
        frontier = nxt
        d += 1


def _diameter(mask: int, nb: list[int]) -> int:
    return max(_ecc(v, mask, nb) for v in _bits(mask))


def _within(sources: int, mask: int, nb: list[int], radius: int) -> bool:
    """Is every vertex of ``mask`` within ``radius`` hops of ``sources`` (inside mask)?"""
    seen = frontier = sources
    for _ in range(radius):
        if seen == mask:
            return True
        nxt = 0
        for u in _bits(frontier):
            nxt |= nb[u]
        nxt &= mask & ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return seen == mask


def _host_distances(G: Graph) -> list[list[float]]:
    inf = float("inf")
    out = []
    for s in range(G.n):
        dist = [inf] * G.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in G.adj[u]:
                    if dist[w] == inf:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        out.append(dist)
    return out


def oracle_solve(
    G: Graph,
    qs: QuerySet,
    spec: ProblemSpec,
    *,
    guard: int = DEFAULT_GUARD,
    distance_in: str = "H",
) -> OracleResult:
    """Enumerate every non-empty vertex subset and return the optimum.

    ``distance_in`` chooses where the query-distance constraint of
    ``max-deg-dist`` is measured: inside the candidate subgraph (``"H"``,
    default) or in the host graph (``"G"``).
    """
    if G.n > guard:
        raise OracleRefused(f"oracle enumeration guard: n={G.n} exceeds {guard}")
    if distance_in not in ("H", "G"):
        raise ValueError("distance_in must be 'H' or 'G'")
    qs.validate(G)
    n = G.n
    nb = [sum(1 << w for w in G.adj[v]) for v in range(n)]
    qmask = sum(1 << q for q in qs.Q)
    need = qs.required
    variant, p = spec.variant, spec.parameter
    host = _host_distances(G) if variant is Variant.MAX_MIN_DEG_DIST and distance_in == "G" else None

    best = None
    witnesses: list[int] = []
    count = 0
    best_diam = None
    for mask in range(1, 1 << n):
        if (mask & qmask).bit_count() < need:
            continue
        members = _bits(mask)
        mindeg = min((nb[v] & mask).bit_count() for v in members)
        if variant is Variant.MIN_DIAM_MIN_DEG and mindeg < p:
            continue
        if not _connected(mask, nb):
            continue
        diam = None
        if variant is Variant.MIN_DIAM_MIN_DEG:
            value = diam = _diameter(mask, nb)
        elif variant is Variant.MAX_MIN_DEG_DIAM:
            diam = _diameter(mask, nb)
            if diam > p:
                continue
            value = mindeg
        else:
            if host is None:
                ok = _within(mask & qmask, mask, nb, p)
            else:
                kept = _bits(mask & qmask)
                ok = all(min(host[q][v] for q in kept) <= p for v in members)
            if not ok:
                continue
            value = mindeg
        better = best is None or (value < best if variant.minimises else value > best)
        if better:
            best, witnesses, count, best_diam = value, [mask], 1, diam
        elif value == best:
            count += 1
            if len(witnesses) < WITNESS_CAP:
                witnesses.append(mask)
            if diam is not None and diam < best_diam:
                best_diam = diam
    return OracleResult(
        variant,
        best,
        tuple(tuple(_bits(w)) for w in witnesses),
        count,
        best_diam if variant is Variant.MAX_MIN_DEG_DIAM else None,
    )
