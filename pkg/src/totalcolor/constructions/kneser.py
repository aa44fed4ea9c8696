"""Parallel classes of k-subsets and total colorings of Kneser-graph complements.

The complement of the Kneser graph joins two k-subsets of ``{1..n}`` when
they intersect.  If its vertices split into ``n/k`` cliques, each clique can be
totally colored on one shared palette (provided same-colored vertices in
different cliques are disjoint sets) and the edges between cliques take fresh
colors.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from math import comb

from ..coloring import (
    TotalColoring,
    konig_bipartite_edge_color,
    misra_gries_edge_color,
)
from ..graphs import KSubset, complete_graph, kneser_complement_graph, ksubsets_colex

DEFAULT_SEARCH_BUDGET = 2_000_000


class SearchExhausted(RuntimeError):
    pass


# ---------------------------------------------------------------- Baranyai


def baranyai_parallel_classes(n: int, k: int) -> list[list[KSubset]]:
    """All k-subsets of ``{1..n}`` split into ``C(n-1, k-1)`` parallel classes."""
    if k < 1 or n < k or n % k:
        raise ValueError(f"k must divide n (n={n}, k={k})")
    if k == n:
        return [[tuple(range(1, n + 1))]]
    if k == 1:
        return [[(i,) for i in range(1, n + 1)]]
    if k == 2:
        return _round_robin(n)
    if n == 2 * k:
        out = []
        for s in ksubsets_colex(n, k):
            if 1 in s:
                rest = tuple(x for x in range(1, n + 1) if x not in s)
                out.append([s, rest])
        return out
    return _flow_classes(n, k)


def _round_robin(n: int) -> list[list[KSubset]]:
    # player n stays fixed while the others rotate
    m = n - 1
    rounds = []
    for r in range(m):
        pairs = [tuple(sorted((r % m + 1, n)))]
        for t in range(1, n // 2):
            a, b = (r + t) % m + 1, (r - t) % m + 1
            pairs.append(tuple(sorted((a, b))))
        rounds.append(sorted(pairs))
    return rounds


def _max_flow(cap: dict, source, sink) -> dict:
    """Edmonds-Karp on a dict-of-dicts capacity map; returns the flow on each arc."""
    arcs = [(u, v) for u, vs in cap.items() for v in vs]
    flow: dict = {}
    for u, v in arcs:
        flow.setdefault(u, {})[v] = 0
        flow.setdefault(v, {}).setdefault(u, 0)
        cap.setdefault(v, {}).setdefault(u, 0)
    while True:
        prev = {source: None}
        queue = deque([source])
        while queue and sink not in prev:
            u = queue.popleft()
            for v in cap[u]:
                if v not in prev and cap[u][v] - flow[u][v] > 0:
                    prev[v] = u
                    queue.append(v)
        if sink not in prev:
            return flow
        path, v = [], sink
        while prev[v] is not None:
            path.append((prev[v], v))
            v = prev[v]
        push = min(cap[u][v] - flow[u][v] for u, v in path)
        for u, v in path:
            flow[u][v] += push
            flow[v][u] -= push


def _flow_classes(n: int, k: int) -> list[list[KSubset]]:
    """Inductive construction: element ``x`` joins exactly one slot of every class.

    Before element ``x`` is placed, every partial set ``S`` of ``{1..x-1}``
    fills ``C(n-x+1, k-|S|)`` slots in total.  An integral flow picks one slot
    per class so that ``S`` grows into ``S + {x}`` exactly ``C(n-x, k-|S|-1)``
    times, which keeps that count true for the next element.
    """
    m = comb(n - 1, k - 1)
    slots: list[list[tuple[int, ...]]] = [[() for _ in range(n // k)] for _ in range(m)]
    for x in range(1, n + 1):
        cap: dict = {"src": {}}
        for c, row in enumerate(slots):
            cap["src"][("c", c)] = 1
            arcs = cap.setdefault(("c", c), {})
            for s in row:
                if len(s) < k:
                    arcs[("s", s)] = arcs.get(("s", s), 0) + 1
        for s in sorted({s for row in slots for s in row if len(s) < k}, key=lambda t: (len(t), t)):
            cap.setdefault(("s", s), {})["sink"] = comb(n - x, k - len(s) - 1)
        flow = _max_flow(cap, "src", "sink")
        if sum(flow["src"].values()) != m:
            raise ValueError(f"flow step for element {x} fell short")
        for c, row in enumerate(slots):
            chosen = next(v[1] for v, f in flow[("c", c)].items() if v != "src" and f > 0)
            row[row.index(chosen)] = chosen + (x,)
    return sorted(sorted(row) for row in slots)


# ---------------------------------------------------------------- clique partition


class PartitionStatus(str, Enum):
    FOUND = "FOUND"
    NONEXISTENT = "NONEXISTENT"
    UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class CliquePartitionResult:
    n: int
    k: int
    status: PartitionStatus
    cliques: tuple[tuple[KSubset, ...], ...] = ()
    nodes: int = 0

    @property
    def exists(self) -> bool:
        return self.status is PartitionStatus.FOUND

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "status": self.status.value, "nodes": self.nodes,
                "cliques": [[list(s) for s in c] for c in self.cliques]}


def kneser_clique_partition(n: int, k: int, budget: int = DEFAULT_SEARCH_BUDGET
                            ) -> CliquePartitionResult:
    """Split all k-subsets into ``n/k`` pairwise-intersecting families of size ``C(n-1, k-1)``.

    Exhaustive search with forward checking; families are unlabeled, so a new
    family is only opened by the first subset that needs it.  Exhausting the
    search space is a proof that no such partition exists.
    """
    if k < 1 or n < k or n % k:
        raise ValueError(f"k must divide n (n={n}, k={k})")
    subsets = ksubsets_colex(n, k)
    m = n // k
    size = comb(n - 1, k - 1)
    sets = [frozenset(s) for s in subsets]
    N = len(subsets)
    disjoint = [[j for j in range(N) if not sets[i] & sets[j]] for i in range(N)]
    family = [-1] * N
    sizes = [0] * m
    # blocked[i][f] counts members of family f disjoint from subset i
    blocked = [[0] * m for _ in range(N)]
    nodes = 0

    def feasible(i: int, f: int) -> bool:
        return sizes[f] < size and blocked[i][f] == 0

    def place(i: int, f: int, sign: int) -> None:
        family[i] = f if sign > 0 else -1
        sizes[f] += sign
        for j in disjoint[i]:
            blocked[j][f] += sign

    def rec(opened: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchExhausted
        best, options = -1, None
        for i in range(N):
            if family[i] >= 0:
                continue
            opts = [f for f in range(min(opened + 1, m)) if feasible(i, f)]
            if not opts:
                return False
            if options is None or len(opts) < len(options):
                best, options = i, opts
                if len(opts) == 1:
                    break
        if best < 0:
            return all(s == size for s in sizes)
        for f in options:
            place(best, f, 1)
            if rec(max(opened, f + 1)):
                return True
            place(best, f, -1)
        return False

    try:
        found = rec(0)
    except SearchExhausted:
        return CliquePartitionResult(n, k, PartitionStatus.UNRESOLVED, nodes=nodes)
    if not found:
        return CliquePartitionResult(n, k, PartitionStatus.NONEXISTENT, nodes=nodes)
    cliques = tuple(tuple(subsets[i] for i in range(N) if family[i] == f) for f in range(m))
    return CliquePartitionResult(n, k, PartitionStatus.FOUND, cliques, nodes)


# ---------------------------------------------------------------- total colorings


def clique_canonical_total(m: int) -> TotalColoring:
    """``K_m`` with ``m`` colors (odd ``m``) or ``m+1`` colors (even ``m``).

    Vertex ``v`` gets ``2v`` and edge ``{u, v}`` gets ``u + v`` modulo the odd
    number ``m`` or ``m+1``; for even ``m`` this is ``K_{m+1}`` minus a vertex.
    """
    if m < 1:
        raise ValueError("m must be positive")
    q = m if m % 2 else m + 1
    g = complete_graph(m)
    return TotalColoring(g, tuple(2 * v % q for v in range(m)),
                         {(u, v): (u + v) % q for u, v in g.edges},
                         {"construction": "clique-canonical", "m": m, "modulus": q})


class ConstructionInapplicable(ValueError):
    """The construction's preconditions fail for this instance."""

    def __init__(self, message: str, partition: CliquePartitionResult | None = None):
        super().__init__(message)
        self.partition = partition


@dataclass(frozen=True)
class KneserResult:
    coloring: TotalColoring
    partition: CliquePartitionResult
    shared_palette: int
    connecting_colors: int
    log: dict = field(default_factory=dict)


def _align(cliques, budget: int) -> list[list[KSubset]]:
    """Order every clique so that equal positions across cliques hold disjoint sets."""
    if len(cliques) == 2:
        # n = 2k: pair every set with its complement
        first = list(cliques[0])
        universe = set(itertools.chain.from_iterable(first + list(cliques[1])))
        comp = {s: tuple(sorted(universe - set(s))) for s in first}
        second = set(cliques[1])
        if all(comp[s] in second for s in first):
            return [first, [comp[s] for s in first]]
    ordered = [list(cliques[0])]
    nodes = 0

    def rec(t: int, pos: int, row: list, free: list) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchExhausted("clique alignment search exhausted")
        if pos == len(ordered[0]):
            ordered.append(list(row))
            if t + 1 == len(cliques) or rec(t + 1, 0, [], list(cliques[t + 1])):
                return True
            ordered.pop()
            return False
        taken = [set(ordered[u][pos]) for u in range(len(ordered))]
        for s in list(free):
            if all(not tk.intersection(s) for tk in taken):
                free.remove(s)
                row.append(s)
                if rec(t, pos + 1, row, free):
                    return True
                row.pop()
                free.append(s)
                free.sort()
        return False

    if len(cliques) > 1 and not rec(1, 0, [], list(cliques[1])):
        raise ValueError("no disjoint alignment of the cliques exists")
    return ordered


def kneser_complement_total(n: int, k: int, budget: int = DEFAULT_SEARCH_BUDGET) -> KneserResult:
    """Clique-by-clique total coloring of the Kneser complement, then the connecting edges."""
    part = kneser_clique_partition(n, k, budget)
    if not part.exists:
        raise ConstructionInapplicable(
            f"clique partition for ({n},{k}) is {part.status.value.lower()}", part)
    g = kneser_complement_graph(n, k)
    idx = g.label_index
    aligned = _align(part.cliques, budget)
    m = len(aligned[0])
    clique_col = clique_canonical_total(m)
    shared = clique_col.palette
    vertex_colors = [0] * g.n_vertices
    edge_colors: dict = {}
    inside: set = set()
    for members in aligned:
        verts = [idx[s] for s in members]
        for p, v in enumerate(verts):
            vertex_colors[v] = clique_col.vertex_colors[p]
        for (a, b), col in clique_col.edge_colors.items():
            e = (min(verts[a], verts[b]), max(verts[a], verts[b]))
            edge_colors[e] = col
            inside.add(e)
    rest = g.subgraph_edges(e for e in g.edges if e not in inside)
    if rest.bipartition() is not None:
        connect, method = konig_bipartite_edge_color(rest), "konig"
    else:
        connect, method = misra_gries_edge_color(rest), "misra-gries"
    for e, col in connect.items():
        edge_colors[e] = shared + col
    n_connect = len(set(connect.values()))
    log = {"construction": "kneser-clique-partition", "n": n, "k": k, "cliques": len(aligned),
           "clique_order": m, "shared_palette": shared, "connecting_degree": rest.max_degree,
           "connecting_method": method, "connecting_colors": n_connect,
           "partition_nodes": part.nodes}
    c = TotalColoring(g, tuple(vertex_colors), edge_colors, log)
    return KneserResult(c, part, shared, n_connect, log)
