"""Peeling algorithms for community search with outliers.

Three peels, one per problem variant, plus the multi-start drivers:

* :func:`peel_min_diam` / :func:`solve_min_diam` -- minimum diameter under a
  minimum-degree floor; 2-approximate.
* :func:`peel_max_min_deg_dist` / :func:`solve_max_min_deg_dist` -- maximum
  minimum degree with every vertex near a retained query vertex; exact.
* :func:`peel_max_min_deg_diam` / :func:`solve_max_min_deg_diam` -- maximum
  minimum degree under a diameter cap; optimal degree, diameter at most
  twice the cap.

All ties are broken towards the smallest vertex id. Constraint violators are
removed in batches; candidates are scored only at quiescent states (no
violator left), which are the only states that can be feasible.
"""
from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable

from ._peel import Levels, PeelState
from .graph import (
    INFINITE,
    Graph,
    bfs_distances,
    connected_components,
    diameter_exact,
    induced_subgraph,
    is_connected,
    multi_source_distances,
)
from .problem import Candidate, PeelTrace, ProblemSpec, QuerySet, Solution, Variant


def _start_checks(G: Graph, qs: QuerySet, q: int) -> None:
    qs.validate(G)
    if q not in qs.Q:
        raise ValueError(f"start vertex {q} is not a query vertex")


def _component_of(G: Graph, q: int) -> list[int]:
    dist = bfs_distances(G, q)
    return [v for v in range(G.n) if dist[v] != INFINITE]


class _RootedPeel:
    """State for the q-rooted peels: everything outside q's component is gone.

    Vertices unreachable from q sit at distance +inf, so they would be the
    first removed anyway and can never join a candidate.
    """

    def __init__(self, G: Graph, qs: QuerySet, q: int, record_sets: bool):
        self.G, self.q, self.record_sets = G, q, record_sets
        self.need = qs.required
        self.isq = bytearray(G.n)
        for v in qs.Q:
            self.isq[v] = 1
        self.comp = _component_of(G, q)
        self.state = PeelState(G)
        inside = bytearray(G.n)
        for v in self.comp:
            inside[v] = 1
        self.state.drop_component((v for v in range(G.n) if not inside[v]), "max-distance-from-q")
        self.qcount = sum(self.isq[v] for v in self.comp)
        self.trace = PeelTrace()
        self.best: tuple | None = None
        self.best_step = -1

    def running(self) -> bool:
        return self.state.edges > 0 and self.qcount >= self.need

    def detach(self, nbrs: list[int]) -> None:
        """Drop whatever deleting a vertex cut off from q."""
        st = self.state
        pieces, rest = st.split(nbrs)
        if not pieces:
            return
        q = self.q
        home = next((p for p in pieces if q in p), None)
        doomed = [p for p in pieces if p is not home]
        if home is not None and rest is not None:
            doomed.append(st.collect(rest))
        for p in doomed:
            self.qcount -= sum(self.isq[v] for v in p)
            st.drop_component(p, "max-distance-from-q")

    def offer(self, score: int) -> None:
        """Score the current quiescent snapshot (q's component); lower key wins."""
        st = self.state
        key = self.key(score, self.qcount, st.n_alive)
        vs = None
        if self.record_sets:
            vs = frozenset(v for v in self.comp if st.alive[v])
        self.trace.candidates.append(Candidate(st.step, score, self.qcount, st.n_alive, self.q, vs))
        if self.best is None or key < self.best:
            self.best = key
            self.best_step = st.step

    def key(self, score, hits, size):
        raise NotImplementedError

    def best_vertices(self) -> list[int]:
        pos, s = self.state.pos, self.best_step
        return [v for v in self.comp if pos[v] < 0 or pos[v] >= s]

    def finish(self) -> PeelTrace:
        self.trace.removals = self.state.removals
        return self.trace


class _MinDiamPeel(_RootedPeel):
    def key(self, score, hits, size):
        return (score, -hits, size)

    def run_sorted(self, delta_min: int) -> None:
        # delta_min <= 1: deleting a farthest vertex never changes another
        # distance, never disconnects, and never isolates anyone but q.
        st = self.state
        dist = bfs_distances(self.G, self.q)
        order = sorted(self.comp, key=lambda v: (-dist[v], v))
        i = 0
        while True:
            size = len(order) - i
            if self.qcount >= self.need and (delta_min == 0 or size > 1):
                self.offer(dist[order[i]])
            if not self.running():
                if delta_min == 1 and size == 1:
                    self.trace.stopped_on_start = True
                break
            v = order[i]
            st.kill(v, "max-distance-from-q")
            self.qcount -= self.isq[v]
            i += 1

    def run_general(self, delta_min: int) -> None:
        st, q = self.state, self.q
        alive, deg = st.alive, st.deg
        far: list[tuple[int, int]] = []
        levels = Levels(st, [q], cap=self.G.n, track=far)
        lvl = levels.lvl
        queued = bytearray(self.G.n)
        pending = deque()
        for v in self.comp:
            if deg[v] < delta_min:
                pending.append(v)
                queued[v] = 1

        def delete(x: int, reason: str) -> None:
            nbrs = st.kill(x, reason)
            self.qcount -= self.isq[x]
            self.detach(nbrs)
            nbrs = [w for w in nbrs if alive[w]]
            levels.delete(x, nbrs)
            for w in nbrs:
                if deg[w] < delta_min and not queued[w]:
                    queued[w] = 1
                    pending.append(w)

        while True:
            if queued[q]:
                self.trace.stopped_on_start = True
                return
            while pending:
                if not self.running():
                    return
                v = pending.popleft()
                if alive[v]:
                    delete(v, "degree-violation")
                if queued[q]:
                    self.trace.stopped_on_start = True
                    return
            while True:
                negl, v = far[0]
                if alive[v] and lvl[v] == -negl:
                    break
                heapq.heappop(far)
            if self.qcount >= self.need:
                self.offer(-negl)
            if not self.running():
                return
            heapq.heappop(far)
            delete(v, "max-distance-from-q")


def peel_min_diam(
    G: Graph, qs: QuerySet, delta_min: int, q: int, *, record_sets: bool = False, fast: bool | None = None
) -> tuple[Solution, PeelTrace]:
    """Peel from start vertex ``q`` for the min-diameter problem.

    Degree violators go first (stopping if ``q`` becomes one); otherwise the
    vertex farthest from ``q`` is removed. Among feasible snapshots the one
    with smallest eccentricity from ``q`` is kept (ties: more query vertices,
    then fewer vertices). The returned objective is the exact diameter of
    that snapshot.

    ``fast`` selects the presorted-distance path; by default it is used when
    ``delta_min <= 1``, where distances never change during the peel.
    """
    _start_checks(G, qs, q)
    if delta_min < 0:
        raise ValueError("delta_min must be >= 0")
    if fast is None:
        fast = delta_min <= 1
    elif fast and delta_min > 1:
        raise ValueError("the presorted path is only valid for delta_min <= 1")
    peel = _MinDiamPeel(G, qs, q, record_sets)
    if fast:
        peel.run_sorted(delta_min)
    else:
        peel.run_general(delta_min)
    trace = peel.finish()
    if peel.best is None:
        return Solution.unfeasible(Variant.MIN_DIAM_MIN_DEG, start=q), trace
    vs = peel.best_vertices()
    H, _ = induced_subgraph(G, vs)
    hits = -peel.best[1]
    return Solution(Variant.MIN_DIAM_MIN_DEG, True, tuple(sorted(vs)), int(diameter_exact(H)), hits, q), trace


def _starts(qs: QuerySet, all_starts: bool) -> list[int]:
    Q = sorted(qs.Q)
    return Q if all_starts else Q[: qs.k + 1]


def solve_min_diam(G: Graph, qs: QuerySet, delta_min: int, *, all_starts: bool = False) -> Solution:
    """2-approximation for the min-diameter problem.

    Runs :func:`peel_min_diam` from the ``k+1`` smallest query ids (every
    query vertex with ``all_starts``) and keeps the feasible result with the
    smallest exact diameter; ties prefer more query vertices, then fewer
    vertices, then the lexicographically smaller vertex list.
    """
    qs.validate(G)
    best = None
    for q in _starts(qs, all_starts):
        sol, _ = peel_min_diam(G, qs, delta_min, q)
        if not sol.feasible:
            continue
        key = (sol.objective, -sol.query_hits, len(sol.vertices), sol.vertices)
        if best is None or key < best[0]:
            best = (key, sol)
    return best[1] if best else Solution.unfeasible(Variant.MIN_DIAM_MIN_DEG)


class _MaxDegDiamPeel(_RootedPeel):
    def key(self, score, hits, size):
        return (-score, -hits, size)

    def run(self, diam_max: int) -> None:
        st, q = self.state, self.q
        alive, deg = st.alive, st.deg
        levels = Levels(st, [q], cap=diam_max)
        pending = deque(levels.over)
        levels.over.clear()
        heap = [(deg[v], v) for v in self.comp]
        heapq.heapify(heap)

        def delete(x: int, reason: str) -> None:
            nbrs = st.kill(x, reason)
            self.qcount -= self.isq[x]
            self.detach(nbrs)
            nbrs = [w for w in nbrs if alive[w]]
            levels.delete(x, nbrs)
            for w in nbrs:
                heapq.heappush(heap, (deg[w], w))
            if levels.over:
                pending.extend(levels.over)
                levels.over.clear()

        while True:
            while pending:
                if not self.running():
                    return
                v = pending.popleft()
                if alive[v]:
                    delete(v, "distance-violation")
            while True:
                d, v = heap[0]
                if alive[v] and deg[v] == d:
                    break
                heapq.heappop(heap)
            if self.qcount >= self.need:
                self.offer(d)
            if not self.running():
                return
            if v == q:
                self.trace.stopped_on_start = True
                return
            heapq.heappop(heap)
            delete(v, "min-degree")


def peel_max_min_deg_diam(
    G: Graph, qs: QuerySet, diam_max: int, q: int, *, record_sets: bool = False
) -> tuple[Solution, PeelTrace]:
    """Peel from ``q`` for the max-min-degree problem under a diameter cap.

    Vertices farther than ``diam_max`` from ``q`` go first, otherwise a
    minimum-degree vertex; the peel stops when ``q`` itself would be the
    minimum-degree pick. A snapshot is feasible when it keeps enough query
    vertices (every vertex is within ``diam_max`` of ``q`` by construction,
    so its diameter is at most ``2 * diam_max``).
    """
    _start_checks(G, qs, q)
    if diam_max < 1:
        raise ValueError("diam_max must be >= 1")
    peel = _MaxDegDiamPeel(G, qs, q, record_sets)
    peel.run(diam_max)
    trace = peel.finish()
    if peel.best is None:
        return Solution.unfeasible(Variant.MAX_MIN_DEG_DIAM, start=q), trace
    vs = peel.best_vertices()
    return Solution(Variant.MAX_MIN_DEG_DIAM, True, tuple(sorted(vs)), -peel.best[0], -peel.best[1], q), trace


def solve_max_min_deg_diam(G: Graph, qs: QuerySet, diam_max: int, *, all_starts: bool = False) -> Solution:
    """Bicriteria driver: max min degree, diameter at most ``2 * diam_max``.

    Ties prefer more query vertices, then smaller exact diameter, then the
    lexicographically smaller vertex list.
    """
    qs.validate(G)
    results = []
    for q in _starts(qs, all_starts):
        sol, _ = peel_max_min_deg_diam(G, qs, diam_max, q)
        if sol.feasible:
            results.append(sol)
    if not results:
        return Solution.unfeasible(Variant.MAX_MIN_DEG_DIAM)
    top = max((s.objective, s.query_hits) for s in results)
    tied = [s for s in results if (s.objective, s.query_hits) == top]
    if len(tied) == 1:
        return tied[0]
    return min(tied, key=lambda s: (diameter_exact(induced_subgraph(G, s.vertices)[0]), s.vertices))


def prune_by_distance(G: Graph, qs: QuerySet, d_max: int) -> tuple[Graph, dict[int, int]]:
    """Drop every vertex farther than ``d_max`` from all query vertices.

    Distances only grow in subgraphs, so none of the dropped vertices can be
    part of a feasible solution.
    """
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    qs.validate(G)
    dist = multi_source_distances(G, qs.Q)
    return induced_subgraph(G, [v for v in range(G.n) if dist[v] <= d_max])


def peel_max_min_deg_dist(
    G: Graph, qs: QuerySet, d_max: int, *, record_sets: bool = False
) -> tuple[Solution, PeelTrace]:
    """Exact peel for max min degree under the query-distance constraint.

    A vertex violates when its component keeps fewer than ``|Q|-k`` query
    vertices or it is farther than ``d_max`` from all of them; violators
    are removed, otherwise the minimum-degree vertex. The graph is peeled to
    empty. At a quiescent state every component is feasible, and the
    component of the vertex about to be removed has that vertex's degree as
    its minimum degree, so each component is scored exactly once, when its
    first vertex goes.
    """
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    qs.validate(G)
    n, need = G.n, qs.required
    isq = bytearray(n)
    for v in qs.Q:
        isq[v] = 1
    st = PeelState(G)
    alive, deg = st.alive, st.deg
    comp = connected_components(G)
    nlab = max(comp, default=-1) + 1
    csize = [0] * nlab
    cq = [0] * nlab
    for v in range(n):
        csize[comp[v]] += 1
        cq[comp[v]] += isq[v]
    st.drop_component((v for v in range(n) if cq[comp[v]] < need), "query-count-violation")

    levels = Levels(st, qs.Q, cap=d_max)
    pending = deque(levels.over)
    levels.over.clear()
    heap = [(deg[v], v) for v in range(n) if alive[v]]
    heapq.heapify(heap)
    trace = PeelTrace()

    def delete(x: int, reason: str) -> None:
        c = comp[x]
        csize[c] -= 1
        cq[c] -= isq[x]
        nbrs = st.kill(x, reason)
        pieces, rest = st.split(nbrs)
        for p in pieces:
            lab = len(csize)
            for v in p:
                comp[v] = lab
            pq = sum(isq[v] for v in p)
            csize.append(len(p))
            cq.append(pq)
            csize[c] -= len(p)
            cq[c] -= pq
            if pq < need:
                st.drop_component(p, "query-count-violation")
        if rest is not None and cq[c] < need:
            st.drop_component(st.collect(rest), "query-count-violation")
        nbrs = [w for w in nbrs if alive[w]]
        levels.delete(x, nbrs)
        for w in nbrs:
            heapq.heappush(heap, (deg[w], w))
        if levels.over:
            pending.extend(levels.over)
            levels.over.clear()

    best = None
    tied: list[Candidate] = []
    while True:
        while pending:
            v = pending.popleft()
            if alive[v]:
                delete(v, "distance-violation")
        if not st.n_alive:
            break
        while True:
            d, v = heap[0]
            if alive[v] and deg[v] == d:
                break
            heapq.heappop(heap)
        c = comp[v]
        cand = Candidate(st.step, d, cq[c], csize[c], v, frozenset(st.collect(v)) if record_sets else None)
        trace.candidates.append(cand)
        key = (d, cq[c], -csize[c])
        if best is None or key > best:
            best, tied = key, [cand]
        elif key == best:
            tied.append(cand)
        heapq.heappop(heap)
        delete(v, "min-degree")
    trace.removals = st.removals
    if best is None:
        return Solution.unfeasible(Variant.MAX_MIN_DEG_DIST), trace
    vs = min(tuple(sorted(_replay_component(G, st.pos, c.step, c.anchor))) for c in tied)
    return Solution(Variant.MAX_MIN_DEG_DIST, True, vs, best[0], best[1]), trace


def _replay_component(G: Graph, pos: list[int], step: int, anchor: int) -> list[int]:
    """Component of ``anchor`` among vertices not yet removed after ``step`` removals."""
    seen = {anchor}
    stack = [anchor]
    adj = G.adj
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen and (pos[w] < 0 or pos[w] >= step):
                seen.add(w)
                stack.append(w)
    return list(seen)


def solve_max_min_deg_dist(G: Graph, qs: QuerySet, d_max: int, *, use_pruning: bool = True) -> Solution:
    """Optimal solution for max min degree under the query-distance constraint.

    With ``use_pruning`` the graph is first restricted to vertices within
    ``d_max`` of some query vertex; the relabelling preserves id order, so
    the peel makes identical choices either way.
    """
    if not use_pruning:
        sol, _ = peel_max_min_deg_dist(G, qs, d_max)
        return sol
    H, relabel = prune_by_distance(G, qs, d_max)
    back = sorted(relabel)
    sol, _ = peel_max_min_deg_dist(H, QuerySet((relabel[q] for q in qs.Q), qs.k), d_max)
    if not sol.feasible:
        return sol
    return Solution(sol.variant, True, tuple(back[v] for v in sol.vertices), sol.objective, sol.query_hits)


def solve(G: Graph, qs: QuerySet, spec: ProblemSpec, *, all_starts: bool = False, use_pruning: bool = True) -> Solution:
    """Dispatch to the driver for ``spec.variant``."""
    if spec.variant is Variant.MIN_DIAM_MIN_DEG:
        return solve_min_diam(G, qs, spec.parameter, all_starts=all_starts)
    if spec.variant is Variant.MAX_MIN_DEG_DIAM:
        return solve_max_min_deg_diam(G, qs, spec.parameter, all_starts=all_starts)
    return solve_max_min_deg_dist(G, qs, spec.parameter, use_pruning=use_pruning)


def check_feasible(
    G: Graph, vertices: Iterable[int], qs: QuerySet, spec: ProblemSpec, *, distance_in: str = "H"
) -> bool:
    """Evaluate the problem constraints on the subgraph induced by ``vertices``.

    Checks connectivity, the query-count bound and the variant constraint
    (degree floor, diameter cap, or distance to retained query vertices).
    ``distance_in="G"`` measures the query-distance constraint in the host
    graph instead of the induced subgraph.
    """
    vs = sorted(set(vertices))
    if not vs:
        return False
    H, relabel = induced_subgraph(G, vs)
    if not is_connected(H):
        return False
    kept = [relabel[q] for q in qs.Q if q in relabel]
    if len(kept) < qs.required:
        return False
    p = spec.parameter
    if spec.variant is Variant.MIN_DIAM_MIN_DEG:
        return min(len(nb) for nb in H.adj) >= p
    if spec.variant is Variant.MAX_MIN_DEG_DIAM:
        return diameter_exact(H) <= p
    if distance_in == "G":
        dist = multi_source_distances(G, [q for q in qs.Q if q in relabel])
        return all(dist[v] <= p for v in vs)
    if distance_in != "H":
        raise ValueError("distance_in must be 'H' or 'G'")
    dist = multi_source_distances(H, kept)
    return max(dist) <= p
