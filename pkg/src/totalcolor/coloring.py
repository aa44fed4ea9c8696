"""Total colorings, the verifier, and the edge-coloring and matching subroutines.

Color ids are dense non-negative integers.  A missing vertex color (``None``)
or a missing key in ``edge_colors`` marks an unset entry of a partial coloring.
"""
from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .graphs import Edge, Graph, build_graph
from .perms import GroupElement, compose, inverse


class IncompleteColoringError(ValueError):
    """The coloring has unset entries or does not match the graph."""


class MergeConflictError(ValueError):
    def __init__(self, message: str, location: Any):
        super().__init__(f"{message} at {location}")
        self.location = location


@dataclass(frozen=True, eq=False)
class TotalColoring:
    graph: Graph
    vertex_colors: tuple[int | None, ...]
    edge_colors: Mapping[Edge, int]
    log: Mapping[str, Any] = field(default_factory=dict)

    @property
    def unset_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self.vertex_colors) if c is None]

    @property
    def unset_edges(self) -> list[Edge]:
        return [e for e in self.graph.edges if e not in self.edge_colors]

    @property
    def is_complete(self) -> bool:
        return (len(self.vertex_colors) == self.graph.n_vertices and not self.unset_vertices
                and not self.unset_edges)

    @property
    def palette(self) -> int:
        used = [c for c in self.vertex_colors if c is not None] + list(self.edge_colors.values())
        return max(used) + 1 if used else 0

    def colors_used(self) -> set[int]:
        return {c for c in self.vertex_colors if c is not None} | set(self.edge_colors.values())

    def compacted(self) -> TotalColoring:
        """Relabel used colors to ``0..p-1`` keeping their relative order."""
        remap = {c: i for i, c in enumerate(sorted(self.colors_used()))}
        return TotalColoring(
            self.graph,
            tuple(None if c is None else remap[c] for c in self.vertex_colors),
            {e: remap[c] for e, c in sorted(self.edge_colors.items())},
            self.log,
        )

    def with_log(self, **entries) -> TotalColoring:
        return TotalColoring(self.graph, self.vertex_colors, self.edge_colors,
                             {**self.log, **entries})


@dataclass(frozen=True)
class VertexPartition:
    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_colors(cls, colors: Sequence[int], n_classes: int | None = None) -> VertexPartition:
        k = n_classes if n_classes is not None else max(colors, default=-1) + 1
        buckets: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(colors):
            buckets[c].append(v)
        return cls(tuple(tuple(b) for b in buckets))

    def __len__(self) -> int:
        return len(self.classes)

    def color_map(self) -> dict[int, int]:
        return {v: i for i, cls_ in enumerate(self.classes) for v in cls_}

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def covers(self, n: int) -> bool:
        members = [v for c in self.classes for v in c]
        return len(members) == len(set(members)) == n and set(members) == set(range(n))

    def conflicts(self, g: Graph) -> list[Edge]:
        """Edges with both endpoints in one class."""
        where = self.color_map()
        return [(u, v) for u, v in g.edges if u in where and where.get(u) == where.get(v)]

    def is_proper(self, g: Graph) -> bool:
        return self.covers(g.n_vertices) and not self.conflicts(g)


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]
    perfect: bool

    def __len__(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------- verifier


@dataclass(frozen=True)
class Violation:
    kind: str  # "vertex-vertex", "vertex-edge" or "edge-edge"
    first: int | Edge
    second: int | Edge
    color: int

    def as_dict(self) -> dict:
        return {"kind": self.kind, "first": _loc(self.first), "second": _loc(self.second),
                "color": self.color}


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...]
    palette: int

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def _loc(x: int | Edge) -> str:
    return f"{x[0]}-{x[1]}" if isinstance(x, tuple) else str(x)


def verify_total(g: Graph, c: TotalColoring) -> VerificationReport:
    """Check every vertex-vertex, vertex-edge and edge-edge constraint."""
    if len(c.vertex_colors) != g.n_vertices:
        raise IncompleteColoringError(
            f"coloring has {len(c.vertex_colors)} vertex entries, graph has {g.n_vertices}")
    extra = [e for e in c.edge_colors if e not in g.edge_index]
    if extra:
        raise IncompleteColoringError(f"colored edges not in graph: {extra[:5]}")
    if c.unset_vertices or c.unset_edges:
        raise IncompleteColoringError(
            f"{len(c.unset_vertices)} vertices and {len(c.unset_edges)} edges unset")
    vc = c.vertex_colors
    ec = c.edge_colors
    found: list[Violation] = []
    for e in g.edges:
        u, v = e
        if vc[u] == vc[v]:
            found.append(Violation("vertex-vertex", u, v, vc[u]))
        for w in e:
            if ec[e] == vc[w]:
                found.append(Violation("vertex-edge", w, e, vc[w]))
    for v in range(g.n_vertices):
        by_color: dict[int, list[Edge]] = defaultdict(list)
        for e in g.incident_edges(v):
            by_color[ec[e]].append(e)
        for col, es in by_color.items():
            es.sort()
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    found.append(Violation("edge-edge", es[i], es[j], col))
    return VerificationReport(tuple(found), c.palette)


# ---------------------------------------------------------------- edge colorings


def _free_color(used: Mapping[int, int], limit: int) -> int:
    for col in range(limit):
        if col not in used:
            return col
    raise RuntimeError("no free color")


def _swap_path(at: list[dict[int, int]], colors: dict[Edge, int], start: int, a: int, b: int) -> None:
    """Exchange colors ``a``/``b`` on the alternating path leaving ``start`` by an ``a`` edge."""
    path = []
    x, want = start, a
    visited = {start}
    while want in at[x]:
        y = at[x][want]
        path.append((x, y, want))
        if y in visited:
            break
        visited.add(y)
        x, want = y, (b if want == a else a)
    for x, y, col in path:
        del at[x][col]
        del at[y][col]
    for x, y, col in path:
        new = b if col == a else a
        at[x][new] = y
        at[y][new] = x
        colors[(min(x, y), max(x, y))] = new


def misra_gries_edge_color(g: Graph) -> dict[Edge, int]:
    """Proper edge coloring with at most ``Δ + 1`` colors."""
    limit = g.max_degree + 1
    at: list[dict[int, int]] = [{} for _ in range(g.n_vertices)]
    colors: dict[Edge, int] = {}

    def color_of(x: int, y: int) -> int | None:
        return colors.get((min(x, y), max(x, y)))

    def set_color(x: int, y: int, col: int | None) -> None:
        e = (min(x, y), max(x, y))
        old = colors.pop(e, None)
        if old is not None:
            del at[x][old]
            del at[y][old]
        if col is not None:
            colors[e] = col
            at[x][col] = y
            at[y][col] = x

    for u, v in g.edges:
        fan = [v]
        in_fan = {v}
        grew = True
        while grew:
            grew = False
            last = fan[-1]
            for w in g.adjacency[u]:
                col = color_of(u, w)
                if w not in in_fan and col is not None and col not in at[last]:
                    fan.append(w)
                    in_fan.add(w)
                    grew = True
                    break
        c = _free_color(at[u], limit)
        d = _free_color(at[fan[-1]], limit)
        if c != d:
            _swap_path(at, colors, u, d, c)
        # after the swap d is free at u; pick the first fan prefix ending where d is free
        w_idx = None
        for i, w in enumerate(fan):
            if i > 0:
                prev_ok = color_of(u, w) is not None and color_of(u, w) not in at[fan[i - 1]]
                if not prev_ok:
                    break
            if d not in at[w]:
                w_idx = i
                break
        if w_idx is None:
            raise RuntimeError(f"Misra-Gries invariant broken at edge ({u}, {v})")
        for i in range(w_idx):
            nxt = color_of(u, fan[i + 1])
            set_color(u, fan[i + 1], None)
            set_color(u, fan[i], nxt)
        set_color(u, fan[w_idx], d)
    return colors


def konig_bipartite_edge_color(g: Graph) -> dict[Edge, int]:
    """Proper edge coloring of a bipartite graph with exactly ``Δ`` colors."""
    if g.bipartition() is None:
        raise ValueError("graph is not bipartite")
    limit = g.max_degree
    at: list[dict[int, int]] = [{} for _ in range(g.n_vertices)]
    colors: dict[Edge, int] = {}
    for u, v in g.edges:
        a = _free_color(at[u], limit)
        if a in at[v]:
            b = _free_color(at[v], limit)
            # the a/b path from v cannot reach u in a bipartite graph
            _swap_path(at, colors, v, a, b)
        colors[(u, v)] = a
        at[u][a] = v
        at[v][a] = u
    return colors


def is_proper_edge_coloring(g: Graph, colors: Mapping[Edge, int]) -> bool:
    if set(colors) != set(g.edges):
        return False
    for v in range(g.n_vertices):
        seen = [colors[e] for e in g.incident_edges(v)]
        if len(seen) != len(set(seen)):
            return False
    return True


# ---------------------------------------------------------------- factors and matchings


@dataclass(frozen=True)
class FactorClass:
    generators: tuple[GroupElement, ...]
    edges: tuple[Edge, ...]
    kind: str  # "matching" or "2-factor"


def generator_factor_decomposition(g: Graph) -> dict[str, FactorClass]:
    """Partition a Cayley graph's edges by the generator pair ``{s, s^-1}`` inducing them."""
    if g.generators is None:
        raise ValueError("graph carries no Cayley generators")
    gens = list(g.generators)
    pairs: list[tuple[GroupElement, ...]] = []
    owner: dict[GroupElement, int] = {}
    for s in gens:
        if s in owner:
            continue
        t = inverse(s)
        owner[s] = owner[t] = len(pairs)
        pairs.append((s,) if s == t else (s, t))
    buckets: list[list[Edge]] = [[] for _ in pairs]
    for u, v in g.edges:
        x, y = g.labels[u], g.labels[v]
        s = compose(inverse(x), y)
        buckets[owner[s]].append((u, v))
    out = {}
    for pair, es in zip(pairs, buckets):
        key = "|".join(str(s) for s in pair)
        out[key] = FactorClass(pair, tuple(es), "matching" if len(pair) == 1 else "2-factor")
    return out


def max_bipartite_matching(left: Sequence[int], right: Iterable[int],
                           adjacency: Sequence[Sequence[int]]) -> dict[int, int]:
    """Augmenting-path maximum matching; returns ``{left vertex: right vertex}``."""
    right_set = set(right)
    match_right: dict[int, int] = {}
    match_left: dict[int, int] = {}
    for root in left:
        # iterative DFS over alternating paths, scanning neighbors by index
        parent: dict[int, int] = {}
        stack = [(root, iter(w for w in adjacency[root] if w in right_set))]
        seen_right: set[int] = set()
        found = None
        while stack and found is None:
            x, it = stack[-1]
            for w in it:
                if w in seen_right:
                    continue
                seen_right.add(w)
                parent[w] = x
                if w not in match_right:
                    found = w
                    break
                nxt = match_right[w]
                stack.append((nxt, iter(z for z in adjacency[nxt] if z in right_set)))
                break
            else:
                stack.pop()
        if found is None:
            continue
        w = found
        while True:
            x = parent[w]
            prev = match_left.get(x)
            match_left[x] = w
            match_right[w] = x
            if x == root:
                break
            w = prev
    return match_left


def matching_between_classes(g: Graph, a: Iterable[int], b: Iterable[int]) -> Matching:
    """Maximum matching in the bipartite subgraph between disjoint vertex sets."""
    a = sorted(a)
    b = sorted(b)
    if set(a) & set(b):
        raise ValueError("classes must be disjoint")
    pairs = max_bipartite_matching(a, b, g.adjacency)
    edges = tuple(sorted((min(x, y), max(x, y)) for x, y in pairs.items()))
    return Matching(edges, len(edges) == len(a) == len(b))


def merge_partial_total(g: Graph, base: VertexPartition,
                        class_matchings: Mapping[int, Iterable[Edge]],
                        remainder_edge_coloring: Mapping[Edge, int] | None = None,
                        log: Mapping[str, Any] | None = None) -> TotalColoring:
    """Vertex class ``i`` and the matching placed in class ``i`` share color ``i``;
    remainder colors are shifted past the partition's colors."""
    k = len(base)
    where = base.color_map()
    vertex_colors = tuple(where.get(v) for v in range(g.n_vertices))
    edge_colors: dict[Edge, int] = {}
    for cls_idx in sorted(class_matchings):
        if not 0 <= cls_idx < k:
            raise MergeConflictError("matching assigned to unknown class", cls_idx)
        touched: set[int] = set()
        for e in class_matchings[cls_idx]:
            e = (min(e), max(e))
            if e not in g.edge_index:
                raise MergeConflictError("matching edge not in graph", e)
            if e in edge_colors:
                raise MergeConflictError("edge placed in two classes", e)
            for w in e:
                if where.get(w) == cls_idx:
                    raise MergeConflictError(f"edge colored {cls_idx} touches a vertex of that class", e)
                if w in touched:
                    raise MergeConflictError(f"two class-{cls_idx} edges share vertex {w}", e)
                touched.add(w)
            edge_colors[e] = cls_idx
    for e, col in sorted((remainder_edge_coloring or {}).items()):
        if e in edge_colors:
            raise MergeConflictError("remainder recolors a matching edge", e)
        if e not in g.edge_index:
            raise MergeConflictError("remainder edge not in graph", e)
        edge_colors[e] = k + col
    return TotalColoring(g, vertex_colors, edge_colors, dict(log or {}))


# ---------------------------------------------------------------- certificates


def _payload(recipe: Mapping, vertex_colors: Sequence, edge_colors: Mapping[str, int],
             palette: int) -> dict:
    return {"recipe": dict(recipe), "vertex_colors": list(vertex_colors),
            "edge_colors": dict(sorted(edge_colors.items())), "palette": palette}


def _digest(payload: Mapping) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def certificate_dict(c: TotalColoring) -> dict:
    report = verify_total(c.graph, c)
    edge_colors = {f"{u}-{v}": col for (u, v), col in c.edge_colors.items()}
    doc = _payload(c.graph.recipe, c.vertex_colors, edge_colors, report.palette)
    doc["verified"] = report.valid
    doc["violations"] = [v.as_dict() for v in report.violations]
    doc["log"] = _jsonable(c.log)
    doc["digest"] = _digest(_payload(c.graph.recipe, c.vertex_colors, edge_colors, report.palette))
    return doc


def certificate_json(c: TotalColoring) -> str:
    return json.dumps(certificate_dict(c), sort_keys=True, indent=1) + "\n"


def _jsonable(x: Any) -> Any:
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    problems: tuple[str, ...]
    report: VerificationReport | None


def verify_certificate(doc: Mapping[str, Any]) -> CertificateCheck:
    """Rebuild the graph from the recipe and re-verify the stored colors."""
    problems = []
    try:
        g = build_graph(doc["recipe"])
        vertex_colors = tuple(None if c is None else int(c) for c in doc["vertex_colors"])
        edge_colors = {}
        for key, col in doc["edge_colors"].items():
            u, v = (int(t) for t in key.split("-"))
            edge_colors[(u, v)] = int(col)
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        return CertificateCheck(False, (f"malformed certificate: {exc}",), None)
    expected = _digest(_payload(doc["recipe"], doc["vertex_colors"], doc["edge_colors"],
                                doc.get("palette")))
    if doc.get("digest") != expected:
        problems.append("digest mismatch: colors or palette were altered")
    try:
        report = verify_total(g, TotalColoring(g, vertex_colors, edge_colors))
    except IncompleteColoringError as exc:
        return CertificateCheck(False, tuple(problems) + (str(exc),), None)
    if not report.valid:
        problems.append(f"{len(report.violations)} coloring violations")
    if doc.get("palette") != report.palette:
        problems.append(f"stated palette {doc.get('palette')} != actual {report.palette}")
    return CertificateCheck(not problems, tuple(problems), report)
