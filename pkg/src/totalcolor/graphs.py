"""Immutable indexed graphs and the constructors for each graph family."""
from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Any

from .perms import (
    DihedralElement,
    Family,
    GeneratingSet,
    GroupElement,
    alternating_group,
    compose,
    dihedral_group,
    standard_generating_set,
    symmetric_group,
    validate_generating_set,
)

Edge = tuple[int, int]
KSubset = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with edges stored ``(low, high)``."""

    n_vertices: int
    edges: tuple[Edge, ...]
    labels: tuple[Any, ...]
    recipe: Mapping[str, Any] = field(default_factory=dict)
    generators: GeneratingSet | None = None

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < v < self.n_vertices):
                raise ValueError(f"bad edge ({u}, {v}) for {self.n_vertices} vertices")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if len(self.labels) != self.n_vertices:
            raise ValueError("one label per vertex required")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence | None = None,
                   recipe: Mapping | None = None, generators: GeneratingSet | None = None) -> Graph:
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        if any(u == v for u, v in norm):
            raise ValueError("loops are not allowed")
        return cls(n, tuple(norm), tuple(labels) if labels is not None else tuple(range(n)),
                   dict(recipe or {"family": "explicit", "n": n, "edges": [list(e) for e in norm]}),
                   generators)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def label_index(self) -> dict[Any, int]:
        return {x: i for i, x in enumerate(self.labels)}

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def is_regular(self) -> bool:
        return len({len(a) for a in self.adjacency}) <= 1

    def incident_edges(self, v: int) -> list[Edge]:
        return [(min(v, w), max(v, w)) for w in self.adjacency[v]]

    def bipartition(self) -> tuple[list[int], list[int]] | None:
        """Two sides of a proper 2-coloring, or ``None`` for non-bipartite graphs."""
        side = [-1] * self.n_vertices
        for root in range(self.n_vertices):
            if side[root] >= 0:
                continue
            side[root] = 0
            stack = [root]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return None
        return ([v for v in range(self.n_vertices) if side[v] == 0],
                [v for v in range(self.n_vertices) if side[v] == 1])

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def subgraph_edges(self, keep: Iterable[Edge]) -> Graph:
        """Same vertex set, only the given edges (recipe records the parent)."""
        return Graph.from_edges(self.n_vertices, keep, self.labels,
                                {"family": "edge-subgraph", "parent": dict(self.recipe)})

    def label_str(self, v: int) -> str:
        return _label_text(self.labels[v])


# ---------------------------------------------------------------- constructors


def cayley_graph(group: Sequence[GroupElement], gens: GeneratingSet,
                 recipe: Mapping | None = None) -> Graph:
    """``x ~ y`` iff ``x = y s`` for some ``s`` in ``gens``."""
    problems = validate_generating_set(gens, group)
    if problems:
        raise ValueError("invalid generating set: " + "; ".join(problems))
    elements = list(group)
    if elements and isinstance(elements[0], DihedralElement):
        elements.sort(key=lambda x: (x.refl, x.rot))
    index = {x: i for i, x in enumerate(elements)}
    edges = set()
    for i, x in enumerate(elements):
        for s in gens:
            j = index[compose(x, s)]
            edges.add((min(i, j), max(i, j)))
    return Graph(len(elements), tuple(sorted(edges)), tuple(elements),
                 dict(recipe or {"family": "cayley", "generators": [str(s) for s in gens]}), gens)


def circulant_graph(n: int, diffs: Iterable[int], recipe: Mapping | None = None) -> Graph:
    """Vertices ``0..n-1``; ``i ~ j`` iff ``(i - j) mod n`` lies in ``diffs``."""
    ds = sorted({d % n for d in diffs})
    if 0 in ds:
        raise ValueError("difference 0 would create loops")
    if any((n - d) % n not in ds for d in ds):
        raise ValueError(f"differences {ds} are not symmetric mod {n}")
    edges = {(min(i, (i + d) % n), max(i, (i + d) % n)) for i in range(n) for d in ds}
    return Graph(n, tuple(sorted(edges)), tuple(range(n)),
                 dict(recipe or {"family": "circulant", "n": n, "diffs": ds}))


def ksubsets_colex(n: int, k: int) -> list[KSubset]:
    return sorted(itertools.combinations(range(1, n + 1), k), key=lambda s: s[::-1])


def kneser_complement_graph(n: int, k: int) -> Graph:
    """k-subsets of {1..n}; distinct subsets adjacent iff they intersect."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    verts = ksubsets_colex(n, k)
    sets = [frozenset(s) for s in verts]
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2) if sets[i] & sets[j]]
    return Graph(len(verts), tuple(edges), tuple(verts),
                 {"family": "kneser-complement", "n": n, "k": k})


def kneser_complement_degree(n: int, k: int) -> int:
    return comb(n, k) - 1 - comb(n - k, k)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)],
                            recipe={"family": "cycle", "n": n})


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], recipe={"family": "path", "n": n})


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2),
                            recipe={"family": "complete", "n": n})


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)],
                            recipe={"family": "complete-bipartite", "a": a, "b": b})


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, recipe={"family": "petersen"})


# ---------------------------------------------------------------- recipes

PERMUTATION_FAMILIES = {
    "sn-tm": (Family.MIN_TRANSPOSITIONS, symmetric_group),
    "sn-all": (Family.ALL_TRANSPOSITIONS, symmetric_group),
    "an-star3": (Family.STAR_3CYCLES, alternating_group),
    "sn-cycle": (Family.SN_ADJACENT_CYCLE, symmetric_group),
    "an-cycle": (Family.AN_3CYCLE_NCYCLE, alternating_group),
}

FAMILIES = sorted([*PERMUTATION_FAMILIES, "dihedral-interval", "dihedral-custom",
                   "dihedral-complement", "circulant", "kneser-complement", "cycle", "path",
                   "complete", "complete-bipartite", "petersen", "explicit"])


def dihedral_complement_params(k: int) -> tuple[int, list[int], list[int]]:
    """Order, rotation differences and reflection indices of the ``n = 8k+4`` family.

    Rotations are ``±1..±k``; reflections are every ``r s^i`` except
    ``i`` in ``{2k+1, 4k+2, 6k+3, 8k+4 = 0}``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = 8 * k + 4
    excluded = {(t * (2 * k + 1)) % n for t in range(1, 5)}
    rotations = list(range(1, k + 1)) + list(range(n - k, n))
    reflections = [i for i in range(n) if i not in excluded]
    return n, rotations, reflections


def build_graph(recipe: Mapping[str, Any]) -> Graph:
    """Rebuild a graph from its recipe; the result is index-identical every time."""
    fam = recipe.get("family")
    if fam in PERMUTATION_FAMILIES:
        family, group_fn = PERMUTATION_FAMILIES[fam]
        n = int(recipe["n"])
        gens = standard_generating_set(family, n)
        return cayley_graph(group_fn(n), gens, {"family": fam, "n": n})
    if fam == "dihedral-interval":
        n, k = int(recipe["n"]), int(recipe["k"])
        gens = standard_generating_set(Family.DIHEDRAL_INTERVAL, n, k=k)
        return cayley_graph(dihedral_group(n), gens, {"family": fam, "n": n, "k": k})
    if fam in ("dihedral-custom", "dihedral-complement"):
        if fam == "dihedral-complement":
            n, rotations, reflections = dihedral_complement_params(int(recipe["k"]))
            rec = {"family": fam, "k": int(recipe["k"])}
        else:
            n = int(recipe["n"])
            rotations = [int(d) for d in recipe.get("rotations", [])]
            reflections = [int(i) for i in recipe.get("reflections", [])]
            rec = {"family": fam, "n": n, "rotations": sorted(d % n for d in rotations),
                   "reflections": sorted(i % n for i in reflections)}
        gens = standard_generating_set(Family.DIHEDRAL_CUSTOM, n, rotations=rotations,
                                       reflections=reflections)
        return cayley_graph(dihedral_group(n), gens, rec)
    if fam == "circulant":
        return circulant_graph(int(recipe["n"]), [int(d) for d in recipe["diffs"]])
    if fam == "kneser-complement":
        return kneser_complement_graph(int(recipe["n"]), int(recipe["k"]))
    if fam == "cycle":
        return cycle_graph(int(recipe["n"]))
    if fam == "path":
        return path_graph(int(recipe["n"]))
    if fam == "complete":
        return complete_graph(int(recipe["n"]))
    if fam == "complete-bipartite":
        return complete_bipartite_graph(int(recipe["a"]), int(recipe["b"]))
    if fam == "petersen":
        return petersen_graph()
    if fam == "explicit":
        return Graph.from_edges(int(recipe["n"]), [tuple(e) for e in recipe["edges"]])
    raise ValueError(f"unknown graph family {fam!r}")


# ---------------------------------------------------------------- export


def _label_text(x: Any) -> str:
    if isinstance(x, tuple):
        return "{" + ",".join(str(v) for v in x) + "}"
    return str(x)


def graph_to_dict(g: Graph) -> dict:
    return {
        "recipe": dict(g.recipe),
        "labels": [_label_text(x) for x in g.labels],
        "edges": [list(e) for e in g.edges],
    }


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True, indent=1) + "\n"


def graph_from_json(text: str) -> Graph:
    """Load a graph document; the recipe is trusted only if it reproduces the edges."""
    doc = json.loads(text)
    recipe = doc.get("recipe") or {}
    edges = [tuple(e) for e in doc["edges"]]
    try:
        g = build_graph(recipe)
    except (ValueError, KeyError):
        g = None
    if g is not None and [list(e) for e in g.edges] == [list(e) for e in edges]:
        return g
    return Graph.from_edges(len(doc["labels"]), edges, doc["labels"])


def graph_to_dot(g: Graph, vertex_colors: Sequence[int | None] | None = None,
                 edge_colors: Mapping[Edge, int] | None = None) -> str:
    lines = ["graph G {"]
    title = ",".join(f"{k}={v}" for k, v in sorted(g.recipe.items()) if k != "edges")
    lines.append(f'  label="{title}";')
    for v in range(g.n_vertices):
        attrs = f'label="{g.label_str(v)}"'
        if vertex_colors is not None and vertex_colors[v] is not None:
            attrs += f', color="{vertex_colors[v]}"'
        lines.append(f"  {v} [{attrs}];")
    for u, v in g.edges:
        if edge_colors is not None and (u, v) in edge_colors:
            lines.append(f'  {u} -- {v} [label="{edge_colors[(u, v)]}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
