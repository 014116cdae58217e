"""Mutable peeling state shared by the three algorithms.

A peel owns private ``alive``/``deg`` arrays over a read-only :class:`Graph`.
Two decremental structures keep per-removal work small:

* :meth:`PeelState.split` detects whether deleting a vertex disconnected its
  component by running interleaved searches from the surviving neighbours;
  work is bounded by the smaller side(s), so detached pieces are found
  without rescanning the big side.
* :class:`Levels` maintains BFS levels from a source set under deletions
  (levels only grow). Each vertex keeps a count of neighbours one level
  closer; a vertex whose count drops to zero moves down one level at a time.
  Levels above ``cap`` are not tracked; such vertices land in ``over``.
"""
from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable

from .graph import Graph
from .problem import Removal


class PeelState:
    def __init__(self, G: Graph, alive: Iterable[int] | None = None):
        self.G = G
        self.adj = G.adj
        n = G.n
        if alive is None:
            self.alive = bytearray(b"\x01") * n
        else:
            self.alive = bytearray(n)
            for v in alive:
                self.alive[v] = 1
        al = self.alive
        self.deg = [sum(al[w] for w in nb) if al[v] else 0 for v, nb in enumerate(self.adj)]
        self.edges = sum(self.deg) // 2
        self.n_alive = sum(al)
        self.removals: list[Removal] = []
        self.pos = [-1] * n

    def _log(self, v: int, reason: str) -> None:
        self.pos[v] = len(self.removals)
        self.removals.append(Removal(len(self.removals) + 1, v, reason))

    @property
    def step(self) -> int:
        return len(self.removals)

    def kill(self, x: int, reason: str) -> list[int]:
        """Delete ``x``; returns its neighbours that are still alive."""
        alive, deg = self.alive, self.deg
        alive[x] = 0
        self.n_alive -= 1
        self.edges -= deg[x]
        deg[x] = 0
        self._log(x, reason)
        nbrs = [w for w in self.adj[x] if alive[w]]
        for w in nbrs:
            deg[w] -= 1
        return nbrs

    def drop_component(self, vertices: Iterable[int], reason: str) -> None:
        """Delete a whole connected component; no neighbour bookkeeping needed."""
        alive, deg = self.alive, self.deg
        vs = [v for v in vertices if alive[v]]
        self.edges -= sum(deg[v] for v in vs) // 2
        for v in sorted(vs):
            alive[v] = 0
            deg[v] = 0
            self._log(v, reason)
        self.n_alive -= len(vs)

    def collect(self, seed: int) -> list[int]:
        """Alive vertices reachable from ``seed``."""
        alive, adj = self.alive, self.adj
        seen = {seed}
        stack = [seed]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if alive[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return list(seen)

    def split(self, seeds: list[int]) -> tuple[list[list[int]], int | None]:
        """Find components cut off from each other among ``seeds``.

        ``seeds`` were all connected before the last deletion. Returns the
        fully explored pieces and one seed of the unexplored remainder (the
        remainder is ``None`` when every piece got explored). No split is
        reported as ``([], seeds[0])``.
        """
        if len(seeds) < 2:
            return [], (seeds[0] if seeds else None)
        alive, adj = self.alive, self.adj
        k = len(seeds)
        parent = list(range(k))
        owner: dict[int, int] = {}
        queues: dict[int, deque] = {}
        members: dict[int, list[int]] = {}
        for i, s in enumerate(seeds):
            owner[s] = i
            queues[i] = deque([s])
            members[i] = [s]

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        active = set(range(k))
        roots = k
        while roots > 1 and len(active) > 1:
            for r in sorted(active):
                if r not in active:
                    continue
                q = queues[r]
                v = q.popleft()
                for w in adj[v]:
                    if not alive[w]:
                        continue
                    o = owner.get(w)
                    if o is None:
                        owner[w] = r
                        q.append(w)
                        members[r].append(w)
                        continue
                    o = find(o)
                    if o == r:
                        continue
                    big, small = (r, o) if len(members[r]) >= len(members[o]) else (o, r)
                    queues[big].extend(queues.pop(small))
                    members[big].extend(members.pop(small))
                    parent[small] = big
                    active.discard(small)
                    roots -= 1
                    r = big
                    q = queues[r]
                    if queues[r]:
                        active.add(r)
                    if roots == 1:
                        return [], seeds[0]
                if not queues[r]:
                    active.discard(r)
        if roots == 1:
            return [], seeds[0]
        pieces = [members[r] for r in members if r not in active]
        rest = members[next(iter(active))][0] if active else None
        return pieces, rest


class Levels:
    """Decremental BFS levels from ``sources`` over the alive vertices of ``state``.

    When ``track`` is given it is kept as a heap of ``(-level, vertex)``
    entries, one pushed per level change; stale entries are left for the
    caller to skip.
    """

    def __init__(self, state: PeelState, sources: Iterable[int], cap: int, track: list | None = None):
        self.state = state
        self.cap = cap
        self.track = track
        alive, adj = state.alive, state.adj
        n = len(alive)
        top = cap + 1
        lvl = [top] * n
        frontier = [s for s in sources if alive[s]]
        for s in frontier:
            lvl[s] = 0
        d = 0
        while frontier and d < cap:
            d += 1
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if alive[w] and lvl[w] == top:
                        lvl[w] = d
                        nxt.append(w)
            frontier = nxt
        cnt = [0] * n
        over = []
        for v in range(n):
            if not alive[v]:
                continue
            lv = lvl[v]
            if lv > cap:
                over.append(v)
                continue
            if lv:
                cnt[v] = sum(1 for w in adj[v] if alive[w] and lvl[w] == lv - 1)
            if track is not None:
                track.append((-lv, v))
        if track is not None:
            heapq.heapify(track)
        self.lvl = lvl
        self.cnt = cnt
        self.over = over

    def delete(self, x: int, nbrs: list[int]) -> None:
        """Update after ``x`` (already dead) was deleted; ``nbrs`` its alive neighbours."""
        lvl, cnt = self.lvl, self.cnt
        target = lvl[x] + 1
        if target > self.cap:
            return
        stack = []
        for w in nbrs:
            if lvl[w] == target:
                cnt[w] -= 1
                if cnt[w] == 0:
                    stack.append(w)
        if stack:
            self._settle(stack)

    def _settle(self, stack: list[int]) -> None:
        alive, adj = self.state.alive, self.state.adj
        lvl, cnt, cap, track = self.lvl, self.cnt, self.cap, self.track
        while stack:
            w = stack.pop()
            if not alive[w] or cnt[w] > 0 or lvl[w] > cap or lvl[w] == 0:
                continue
            old = lvl[w]
            lvl[w] = new = old + 1
            c = 0
            for u in adj[w]:
                if not alive[u]:
                    continue
                lu = lvl[u]
                if lu == old:
                    c += 1
                elif lu == new:
                    cnt[u] -= 1
                    if cnt[u] == 0:
                        stack.append(u)
                elif lu == new + 1:
                    cnt[u] += 1
            cnt[w] = c
            if new > cap:
                self.over.append(w)
            else:
                if track is not None:
                    heapq.heappush(track, (-new, w))
                if c == 0:
                    stack.append(w)
