"""Naive reference checks that share no code with the package's verifier or solver."""
from __future__ import annotations

import itertools


def conflicts(n_vertices, edges, vertex_colors, edge_colors):
    """Count conflicting pairs straight from the definition of a total coloring."""
    bad = 0
    for u, v in edges:
        if vertex_colors[u] == vertex_colors[v]:
            bad += 1
        for w in (u, v):
            if edge_colors[(u, v)] == vertex_colors[w]:
                bad += 1
    for e, f in itertools.combinations(edges, 2):
        if set(e) & set(f) and edge_colors[e] == edge_colors[f]:
            bad += 1
    return bad


def naive_total_chromatic(n_vertices, edges):
    """Smallest k admitting a total coloring, by plain backtracking in a fixed order."""
    edges = [tuple(sorted(e)) for e in edges]
    items = [("v", v) for v in range(n_vertices)] + [("e", e) for e in edges]
    # every pair of items that must differ
    clash = {i: [] for i in range(len(items))}
    for i, j in itertools.combinations(range(len(items)), 2):
        (ki, a), (kj, b) = items[i], items[j]
        if ki == kj == "v":
            hit = (min(a, b), max(a, b)) in set(edges)
        elif ki == kj == "e":
            hit = bool(set(a) & set(b))
        else:
            vert, edge = (a, b) if ki == "v" else (b, a)
            hit = vert in edge
        if hit:
            clash[j].append(i)
    degree = [0] * n_vertices
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    k = max(degree, default=0) + 1
    while not _fits(len(items), clash, k):
        k += 1
    return k


def _fits(size, clash, k):
    colors = [-1] * size

    def place(i):
        if i == size:
            return True
        for c in range(k):
            if all(colors[j] != c for j in clash[i]):
                colors[i] = c
                if place(i + 1):
                    return True
        colors[i] = -1
        return False

    return place(0)
