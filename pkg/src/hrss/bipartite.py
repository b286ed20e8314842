"""Bipartite matching primitives used by the exact special-case solvers.

Matchings here are plain ``dict`` objects mapping left vertices to right
vertices.  Vertex order in the graph fixes all tie-breaking, so results
are deterministic.
"""

from __future__ import annotations

import heapq
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

INF = float("inf")


@dataclass
class WeightedBipartiteGraph:
    left: list[Hashable]
    right: list[Hashable]
    weights: dict[tuple[Hashable, Hashable], int] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Hashable, Hashable, int] | tuple[Hashable, Hashable]],
        left: Iterable[Hashable] = (),
        right: Iterable[Hashable] = (),
    ) -> WeightedBipartiteGraph:
        """Build from ``(u, v[, w])`` triples; vertex order is first appearance."""
        ls = list(dict.fromkeys(left))
        rs = list(dict.fromkeys(right))
        weights = {}
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else 0
            if u not in ls:
                ls.append(u)
            if v not in rs:
                rs.append(v)
            weights[(u, v)] = w
        return cls(ls, rs, weights)

    def add_edge(self, u: Hashable, v: Hashable, weight: int = 0) -> None:
        self.weights[(u, v)] = weight

    def _indexed(self) -> tuple[dict, dict, list[list[tuple[int, int]]]]:
        li = {u: i for i, u in enumerate(self.left)}
        ri = {v: j for j, v in enumerate(self.right)}
        adj: list[list[tuple[int, int]]] = [[] for _ in self.left]
        for (u, v), w in self.weights.items():
            if w < 0:
                raise ValueError(f"negative weight on edge ({u!r}, {v!r})")
            adj[li[u]].append((ri[v], w))
        for row in adj:
            row.sort()
        return li, ri, adj


def matching_weight(g: WeightedBipartiteGraph, matching: Mapping) -> int:
    return sum(g.weights[(u, v)] for u, v in matching.items())


def _hopcroft_karp(adj: list[list[int]], n_right: int, match_l: list[int], match_r: list[int]) -> None:
    """Grow ``match_l``/``match_r`` in place to maximum cardinality.

    Only augmenting paths are used, so a vertex matched on entry stays matched.
    """
    n_left = len(adj)
    while True:
        dist = [-1] * n_left
        queue = deque(u for u in range(n_left) if match_l[u] == -1)
        for u in queue:
            dist[u] = 0
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return

        def dfs(u: int) -> bool:
            for v in adj[u]:
                w = match_r[v]
                if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                    match_l[u] = v
                    match_r[v] = u
                    return True
            dist[u] = -2
            return False

        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u)


def augment_preserving(g: WeightedBipartiteGraph, matching: Mapping) -> dict:
    """Extend ``matching`` to a maximum-cardinality matching of ``g``.

    Every vertex matched in ``matching`` remains matched in the result.
    """
    li, ri, wadj = g._indexed()
    adj = [[v for v, _ in row] for row in wadj]
    match_l = [-1] * len(g.left)
    match_r = [-1] * len(g.right)
    for u, v in matching.items():
        if (u, v) not in g.weights:
            raise ValueError(f"({u!r}, {v!r}) is not an edge")
        i, j = li[u], ri[v]
        if match_l[i] != -1 or match_r[j] != -1:
            raise ValueError("initial assignment is not a matching")
        match_l[i], match_r[j] = j, i
    limit = sys.getrecursionlimit()
    if 2 * len(g.left) + 100 > limit:
        sys.setrecursionlimit(2 * len(g.left) + 100)
    try:
        _hopcroft_karp(adj, len(g.right), match_l, match_r)
    finally:
        sys.setrecursionlimit(limit)
    return {g.left[i]: g.right[j] for i, j in enumerate(match_l) if j != -1}


def max_cardinality_matching(g: WeightedBipartiteGraph) -> dict:
    return augment_preserving(g, {})


class _MinCostFlow:
    """Min-cost flow with successive shortest paths and Johnson potentials.

    After k unit augmentations the flow has minimum cost among all flows
    of value k.  Potentials are clamped at the sink distance so reduced
    costs stay non-negative for unreachable nodes too.
    """

    def __init__(self, n: int):
        self.n = n
        # edge: [to, residual capacity, cost, index of reverse edge]
        self.graph: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cost: int) -> None:
        self.graph[u].append([v, 1, cost, len(self.graph[v])])
        self.graph[v].append([u, 0, -cost, len(self.graph[u]) - 1])

    def _initial_potentials(self, s: int) -> list[float]:
        pot = [INF] * self.n
        pot[s] = 0
        for _ in range(self.n):
            changed = False
            for u in range(self.n):
                if pot[u] == INF:
                    continue
                for v, cap, cost, _ in self.graph[u]:
                    if cap and pot[u] + cost < pot[v]:
                        pot[v] = pot[u] + cost
                        changed = True
            if not changed:
                break
        return [0 if p == INF else p for p in pot]

    def run(self, s: int, t: int, stop_when_nonnegative: bool) -> None:
        pot = self._initial_potentials(s)
        while True:
            dist = [INF] * self.n
            prev: list[tuple[int, int] | None] = [None] * self.n
            dist[s] = 0
            heap = [(0, s)]
            while heap:
                d, u = heapq.heappop(heap)
                if d > dist[u]:
                    continue
                for k, (v, cap, cost, _) in enumerate(self.graph[u]):
                    if not cap:
                        continue
                    nd = d + cost + pot[u] - pot[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        prev[v] = (u, k)
                        heapq.heappush(heap, (nd, v))
            if dist[t] == INF:
                return
            if stop_when_nonnegative and dist[t] + pot[t] - pot[s] >= 0:
                return
            bound = dist[t]
            for x in range(self.n):
                pot[x] += min(dist[x], bound)
            v = t
            while v != s:
                u, k = prev[v]
                edge = self.graph[u][k]
                edge[1] -= 1
                self.graph[v][edge[3]][1] += 1
                v = u


def _run_ssp(g: WeightedBipartiteGraph, negate: bool) -> dict:
    li, ri, adj = g._indexed()
    nl, nr = len(g.left), len(g.right)
    s, t = nl + nr, nl + nr + 1
    flow = _MinCostFlow(nl + nr + 2)
    for u in range(nl):
        flow.add_edge(s, u, 0)
    for u, row in enumerate(adj):
        for v, w in row:
            flow.add_edge(u, nl + v, -w if negate else w)
    for v in range(nr):
        flow.add_edge(nl + v, t, 0)
    flow.run(s, t, stop_when_nonnegative=negate)
    out = {}
    for u in range(nl):
        for v, cap, _, _ in flow.graph[u]:
            if nl <= v < nl + nr and cap == 0:
                out[g.left[u]] = g.right[v - nl]
    return out


def min_weight_max_cardinality_matching(g: WeightedBipartiteGraph) -> dict:
    """Among maximum-cardinality matchings, one of minimum total weight."""
    return _run_ssp(g, negate=False)


def max_weight_matching(g: WeightedBipartiteGraph) -> dict:
    """A matching of maximum total weight (zero-weight edges may be left out)."""
    return _run_ssp(g, negate=True)
