"""Exact total chromatic number by DSATUR backtracking on the total graph."""
from __future__ import annotations

import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from .coloring import TotalColoring
from .graphs import Edge, Graph

DEFAULT_BUDGET = int(os.environ.get("TOTALCOLOR_BUDGET", "200000"))


@dataclass(frozen=True, eq=False)
class TotalGraph:
    graph: Graph
    original: Graph

    def element(self, i: int) -> int | Edge:
        """Back-map: an original vertex index or an original edge."""
        n = self.original.n_vertices
        return i if i < n else self.original.edges[i - n]

    def to_total_coloring(self, colors: Sequence[int]) -> TotalColoring:
        n = self.original.n_vertices
        return TotalColoring(self.original, tuple(colors[:n]),
                             {e: colors[n + i] for i, e in enumerate(self.original.edges)})


def total_graph(g: Graph) -> TotalGraph:
    """Vertices of ``g`` followed by its edges; proper colorings are total colorings of ``g``."""
    n = g.n_vertices
    edges = list(g.edges)
    for i, (u, v) in enumerate(g.edges):
        edges.append((u, n + i))
        edges.append((v, n + i))
    for v in range(n):
        inc = sorted(n + g.edge_index[e] for e in g.incident_edges(v))
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                edges.append((inc[a], inc[b]))
    labels = tuple(g.labels) + tuple(g.edges)
    tg = Graph.from_edges(n + g.n_edges, edges, labels,
                          recipe={"family": "total-graph", "of": dict(g.recipe)})
    return TotalGraph(tg, g)


class Exhausted(Exception):
    pass


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    exhausted: bool
    nodes: int
    coloring: tuple[int, ...] | None = None

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None


def greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    starts = sorted(range(g.n_vertices), key=lambda v: (-g.degree(v), v))[:8]
    for s in starts:
        clique = [s]
        cand = set(g.adjacency[s])
        while cand:
            w = min(cand, key=lambda x: (-len(cand.intersection(g.adjacency[x])), x))
            clique.append(w)
            cand &= set(g.adjacency[w])
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def dsatur_greedy(g: Graph, precolor: Sequence[int] = ()) -> list[int]:
    n = g.n_vertices
    color = [-1] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    for c, v in enumerate(precolor):
        color[v] = c
        for w in g.adjacency[v]:
            seen[w].add(c)
    for _ in range(n - len(precolor)):
        v = max((x for x in range(n) if color[x] < 0),
                key=lambda x: (len(seen[x]), g.degree(x), -x))
        c = 0
        while c in seen[v]:
            c += 1
        color[v] = c
        for w in g.adjacency[v]:
            seen[w].add(c)
    return color


def _k_color_search(g: Graph, k: int, precolor: Sequence[int], budget: int, spent: int
                    ) -> tuple[list[int] | None, int]:
    """Backtracking for a proper ``k``-coloring; ``None`` means none exists.

    Raises :class:`Exhausted` once the shared node counter passes ``budget``.
    """
    n = g.n_vertices
    adj = g.adjacency
    deg = [len(a) for a in adj]
    color = [-1] * n
    counts = [[0] * k for _ in range(n)]
    sat = [0] * n
    nodes = spent

    def assign(v: int, c: int) -> None:
        color[v] = c
        for w in adj[v]:
            row = counts[w]
            if row[c] == 0:
                sat[w] += 1
            row[c] += 1

    def unassign(v: int) -> None:
        c = color[v]
        color[v] = -1
        for w in adj[v]:
            row = counts[w]
            row[c] -= 1
            if row[c] == 0:
                sat[w] -= 1

    for c, v in enumerate(precolor):
        if c >= k:
            return None, nodes
        assign(v, c)
    uncolored = [v for v in range(n) if color[v] < 0]

    def rec(remaining: list[int], top: int) -> bool:
        nonlocal nodes
        if not remaining:
            return True
        nodes += 1
        if nodes > budget:
            raise Exhausted
        best = remaining[0]
        bkey = (sat[best], deg[best])
        for v in remaining:
            key = (sat[v], deg[v])
            if key > bkey:
                best, bkey = v, key
        if sat[best] >= k:
            return False
        rest = [v for v in remaining if v != best]
        row = counts[best]
        for c in range(min(k, top + 2)):
            if row[c]:
                continue
            assign(best, c)
            if rec(rest, max(top, c)):
                return True
            unassign(best)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 1000))
    try:
        ok = rec(uncolored, len(precolor) - 1)
    except Exhausted:
        raise Exhausted(nodes) from None
    finally:
        sys.setrecursionlimit(limit)
    return (list(color) if ok else None), nodes


def exact_chromatic_number(g: Graph, lower: int = 1, upper: int | None = None,
                           budget: int = DEFAULT_BUDGET,
                           precolor: Sequence[int] | None = None) -> ChromaticResult:
    """Chromatic number by ascending ``k``-coloring searches from the lower bound.

    ``[lower, upper]`` is the initial window; if ``upper`` is infeasible the
    search keeps going up to the greedy bound.  When the node budget runs out the
    best bounds found are returned with ``exhausted=True``.
    """
    if upper is not None and lower > upper:
        raise ValueError("lower > upper")
    if g.n_vertices == 0:
        return ChromaticResult(0, 0, False, 0, ())
    clique = list(precolor) if precolor is not None else greedy_clique(g)
    greedy = dsatur_greedy(g, clique)
    ub = max(greedy) + 1
    best = tuple(greedy)
    lb = max(lower, len(clique), 1 if g.n_edges == 0 else 2)
    spent = 0
    k = lb
    while k < ub:
        try:
            found, spent = _k_color_search(g, k, clique, budget, spent)
        except Exhausted as exc:
            return ChromaticResult(k, ub, True, exc.args[0] if exc.args else budget, best)
        if found is not None:
            return ChromaticResult(k, k, False, spent, tuple(found))
        k += 1
    return ChromaticResult(ub, ub, False, spent, best)


def total_chromatic_number(g: Graph, budget: int = DEFAULT_BUDGET) -> ChromaticResult:
    """χ″ with the window starting at ``[Δ+1, Δ+2]``."""
    tg = total_graph(g)
    if g.n_vertices == 0:
        return ChromaticResult(0, 0, False, 0, ())
    # a max-degree vertex with its incident edges is a (Δ+1)-clique of the total graph
    v = max(range(g.n_vertices), key=lambda x: (g.degree(x), -x))
    clique = [v] + sorted(g.n_vertices + g.edge_index[e] for e in g.incident_edges(v))
    return exact_chromatic_number(tg.graph, g.max_degree + 1, g.max_degree + 2, budget, clique)


def total_coloring_from_result(g: Graph, result: ChromaticResult) -> TotalColoring | None:
    if result.coloring is None:
        return None
    return total_graph(g).to_total_coloring(result.coloring)


class TotalType(str, Enum):
    TYPE_I = "TYPE_I"
    TYPE_II = "TYPE_II"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Classification:
    kind: TotalType
    lower: int
    upper: int


def classify_type(g: Graph, budget: int = DEFAULT_BUDGET) -> Classification:
    res = total_chromatic_number(g, budget)
    delta = g.max_degree
    if res.exact == delta + 1:
        kind = TotalType.TYPE_I
    elif res.exact == delta + 2:
        kind = TotalType.TYPE_II
    else:
        kind = TotalType.UNKNOWN
    return Classification(kind, res.lower, res.upper)
