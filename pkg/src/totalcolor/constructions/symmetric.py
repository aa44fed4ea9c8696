"""Total colorings of Cayley graphs on S_n and A_n via three vertex classes.

Every colorer here follows the same pattern: split the vertices into three
independent classes, move a matching between each pair of classes into the
color of the third class, then edge-color what is left with fresh colors.
"""
from __future__ import annotations

import sys
from collections import deque
from collections.abc import Sequence

from ..coloring import (
    TotalColoring,
    VertexPartition,
    konig_bipartite_edge_color,
    matching_between_classes,
    merge_partial_total,
    misra_gries_edge_color,
)
from ..graphs import Graph, build_graph
from ..perms import GroupElement, Permutation, compose, inverse
from .orbits import (
    N_CLASSES,
    OrbitConflictError,
    OrbitStep,
    classes_of,
    from_left_action,
    greedy_residue,
    orbit_extend_partition,
    plan_coset_steps,
)

DESK_LIMIT = 6

# seed classes of S_3 and the two S_4 multipliers, as printed (left-action notation)
S3_SEED = (("e", "(23)"), ("(12)", "(132)"), ("(13)", "(123)"))
S4_TM_MULTIPLIERS = ("(12)(14)", "(13)(14)")
S4_CYCLE_MULTIPLIERS = ("(12)(1234)", "(13)(1234)")

# the S_4 example classes as printed, in the same notation
S4_EXAMPLE_CLASSES = (
    ("e", "(23)", "(124)", "(1324)", "(134)", "(1234)", "(142)", "(1432)"),
    ("(12)", "(132)", "(24)", "(243)", "(1342)", "(12)(34)", "(14)", "(14)(23)"),
    ("(13)", "(123)", "(1243)", "(13)(24)", "(34)", "(234)", "(143)", "(1423)"),
)


class ConstructionError(ValueError):
    """The construction could not be carried out for this instance."""

    def __init__(self, message: str, log=None):
        super().__init__(message)
        self.log = dict(log or {})


def seed_partition() -> list[list[Permutation]]:
    return [[from_left_action(s, 3) for s in cls_] for cls_ in S3_SEED]


def example_s4_classes() -> list[list[Permutation]]:
    return [[from_left_action(s, 4) for s in cls_] for cls_ in S4_EXAMPLE_CLASSES]


def _check_partition(g: Graph, part: VertexPartition, what: str) -> None:
    bad = part.conflicts(g)
    if bad or not part.covers(g.n_vertices):
        pair = tuple(g.label_str(v) for v in bad[0]) if bad else None
        raise OrbitConflictError(f"{what}: partition is not a proper cover", pair)


def class_matchings(g: Graph, part: VertexPartition) -> dict[int, tuple]:
    """Matching between the two classes other than ``i``, keyed by ``i``."""
    out = {}
    for i in range(N_CLASSES):
        a, b = [j for j in range(N_CLASSES) if j != i]
        out[i] = matching_between_classes(g, part.classes[a], part.classes[b])
    return out


def matchable(g: Graph, part: VertexPartition) -> bool:
    if len(set(part.sizes())) != 1:
        return False
    return all(m.perfect for m in class_matchings(g, part).values())


def _remainder(g: Graph, matchings) -> Graph:
    used = {e for m in matchings.values() for e in m.edges}
    return g.subgraph_edges(e for e in g.edges if e not in used)


def three_class_total(g: Graph, part: VertexPartition, log: dict | None = None) -> TotalColoring:
    """Absorb class-pair matchings, then color the remainder (König if bipartite)."""
    _check_partition(g, part, "three-class total coloring")
    ms = class_matchings(g, part)
    rest = _remainder(g, ms)
    if rest.bipartition() is not None:
        remainder = konig_bipartite_edge_color(rest)
        method = "konig"
    else:
        remainder = misra_gries_edge_color(rest)
        method = "misra-gries"
    entry = dict(log or {})
    entry.update({
        "class_sizes": part.sizes(),
        "matching_sizes": {str(i): len(m) for i, m in ms.items()},
        "matchings_perfect": all(m.perfect for m in ms.values()),
        "remainder_degree": rest.max_degree,
        "remainder_method": method,
    })
    c = merge_partial_total(g, part, {i: m.edges for i, m in ms.items()}, remainder, entry)
    return c.compacted()


def _stabilizer_key(n: int):
    return lambda x: x(n)


def _extend(g: Graph, base: Sequence[Sequence[GroupElement]], preferred, accept,
            level: int, budget: int, group: str = "S") -> tuple[VertexPartition, dict]:
    plan = plan_coset_steps(g, base, _stabilizer_key(level), preferred, accept, budget)
    if plan is None:
        raise OrbitConflictError(f"no orbit program extends the {group}_{level - 1} partition "
                                 f"to {group}_{level}")
    ext = orbit_extend_partition(base, plan.steps, g)
    return ext.partition, {"level": level, "steps": [s.describe() for s in plan.steps],
                           "planner_nodes": plan.nodes, "repaired": plan.repaired}


# ---------------------------------------------------------------- S_n with T_m


def equitable_three_partition(g: Graph, n: int, budget: int = 2_000_000) -> VertexPartition:
    """Three classes splitting every vertex's ``n-1`` neighbors evenly between the other two.

    Vertices are processed in BFS order from the identity; each takes the lowest
    class compatible with the even split, with backtracking when that fails.
    """
    if n <= 2 or n % 2 == 0:
        raise ValueError(f"equitable split needs odd n > 2, got n={n}")
    half = (n - 1) // 2
    adj = g.adjacency
    order = _bfs_order(g, 0)
    colors = [-1] * g.n_vertices
    counts = [[0] * N_CLASSES for _ in range(g.n_vertices)]
    nodes = 0

    def fits(v: int, c: int) -> bool:
        if counts[v][c]:
            return False
        for w in adj[v]:
            if colors[w] >= 0 and counts[w][c] >= half:
                return False
        return True

    def put(v: int, c: int, sign: int) -> None:
        colors[v] = c if sign > 0 else -1
        for w in adj[v]:
            counts[w][c] += sign

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        nodes += 1
        if nodes > budget:
            raise OrbitConflictError("equitable split repair exhausted its budget")
        v = order[i]
        for c in range(N_CLASSES):
            if fits(v, c):
                put(v, c, 1)
                if rec(i + 1):
                    return True
                put(v, c, -1)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 3 * g.n_vertices + 1000))
    try:
        ok = rec(0)
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        raise OrbitConflictError("no equitable three-class split exists")
    return VertexPartition.from_colors(colors, N_CLASSES)


def _bfs_order(g: Graph, root: int) -> list[int]:
    seen = [False] * g.n_vertices
    seen[root] = True
    order = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    order.extend(v for v in range(g.n_vertices) if not seen[v])
    return order


def sn_tm_partition(n: int, budget: int = 200_000) -> tuple[VertexPartition, Graph, list[dict]]:
    """Three classes of C(S_n, T_m) with perfect matchings between every pair.

    Level 3 is the seed; level 4 runs the two printed multipliers and colors the
    last coset greedily; higher levels place one orbit per coset of S_{n-1},
    trying the multipliers ``g (1 n)`` with ``g`` from the second and third
    classes first.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    g3 = build_graph({"family": "sn-tm", "n": 3})
    part = VertexPartition.from_colors(
        [next(i for i, c in enumerate(seed_partition()) if x in c) for x in g3.labels])
    log = [{"level": 3, "seed": [list(c) for c in S3_SEED]}]
    g = g3
    for level in range(4, n + 1):
        g = build_graph({"family": "sn-tm", "n": level})
        base = classes_of(build_graph({"family": "sn-tm", "n": level - 1}), part)
        base = [[x.extend(level) for x in cls_] for cls_ in base]
        if level == 4:
            steps = [OrbitStep(from_left_action(m, 4), 0, 0, (from_left_action(m, 4),))
                     for m in S4_TM_MULTIPLIERS]
            try:
                ext = orbit_extend_partition(base, steps, g)
                if matchable(g, ext.partition):
                    part = ext.partition
                    log.append({"level": 4, "steps": [s.describe() for s in steps],
                                "greedy": len(ext.greedy_vertices), "repaired": False})
                    continue
            except OrbitConflictError:
                pass
        transposition = Permutation.cycle(level, 1, level)
        prefer = [compose(x, transposition) for x in base[1] + base[2]]
        part, entry = _extend(g, base, lambda key, p=prefer: p,
                              lambda col, gg=g: matchable(gg, VertexPartition.from_colors(col, 3)),
                              level, budget)
        log.append(entry)
    return part, g, log


def total_color_sn_tm(n: int) -> TotalColoring:
    """Total coloring of C(S_n, T_m) with ``n`` colors."""
    if not 3 <= n <= DESK_LIMIT:
        raise ValueError(f"n must lie in [3, {DESK_LIMIT}]")
    part, g, log = sn_tm_partition(n)
    if not matchable(g, part):
        raise ConstructionError("class-pair matchings are not perfect", {"levels": log})
    return three_class_total(g, part, {"theorem": "sn-tm", "n": n, "levels": log})


# ---------------------------------------------------------------- A_n with star 3-cycles


def total_color_an_star3(n: int, budget: int = 2_000_000) -> TotalColoring:
    """Total coloring of C(A_n, {(12m), (1m2)}) from a triangle-respecting 3-partition."""
    if not 4 <= n <= DESK_LIMIT:
        raise ValueError(f"n must lie in [4, {DESK_LIMIT}]")
    g = build_graph({"family": "an-star3", "n": n})
    e = g.label_index[Permutation.identity(n)]
    t = g.label_index[Permutation.cycle(n, 1, 2, 3)]
    t_inv = g.label_index[Permutation.cycle(n, 1, 3, 2)]
    colors = [-1] * g.n_vertices
    # the triangle e, (123), (132) gets three distinct classes
    colors[e], colors[t], colors[t_inv] = 0, 1, 2
    order = [v for v in _bfs_order(g, e) if colors[v] < 0]
    if not greedy_residue(g, colors, order, budget):
        raise ConstructionError("triangle rule conflicts with a three-class split",
                                {"theorem": "an-star3", "n": n})
    part = VertexPartition.from_colors(colors, N_CLASSES)
    return three_class_total(g, part, {"theorem": "an-star3", "n": n,
                                       "triangle": ["e", "(1 2 3)", "(1 3 2)"]})


# ---------------------------------------------------------------- cycle generators


def _adjacent_cycle_accept(g: Graph):
    def accept(col: list[int]) -> bool:
        part = VertexPartition.from_colors(col, N_CLASSES)
        if not matchable(g, part):
            return False
        rest = _remainder(g, class_matchings(g, part))
        return rest.bipartition() is not None
    return accept


def adjacent_cycle_partition(group_kind: str, n: int, budget: int = 200_000
                             ) -> tuple[VertexPartition, Graph, list[dict]]:
    family = "sn-cycle" if group_kind == "SN" else "an-cycle"
    g = build_graph({"family": family, "n": n})
    if group_kind == "SN" and n == 3:
        part = VertexPartition.from_colors(
            [next(i for i, c in enumerate(seed_partition()) if x in c) for x in g.labels])
        return part, g, [{"level": 3, "seed": [list(c) for c in S3_SEED]}]
    if group_kind == "SN":
        part, g_prev, log = adjacent_cycle_partition("SN", n - 1, budget)
        base = [[x.extend(n) for x in cls_] for cls_ in classes_of(g_prev, part)]
    else:
        # A_{n-1} inside A_n: its 3-cycle triangles colored greedily
        sub = [x for x in g.labels if x(n) == n]
        t = Permutation.cycle(n, 1, 2, 3)
        col: dict[GroupElement, int] = {}
        for x in sorted(sub):
            taken = {col.get(compose(x, t)), col.get(compose(x, inverse(t)))}
            col[x] = min(c for c in range(N_CLASSES) if c not in taken)
        base = [[x for x in sub if col[x] == c] for c in range(N_CLASSES)]
        log = [{"level": n - 1, "base": "greedy on A_{n-1} triangles"}]
    cycle_inv = inverse(Permutation.cycle(n, *range(1, n + 1)))
    prefer = [compose(x, cycle_inv) for x in base[1] + base[2]]
    if group_kind == "SN" and n == 4:
        prefer = [from_left_action(m, 4) for m in S4_CYCLE_MULTIPLIERS] + prefer
    part, entry = _extend(g, base, lambda key, p=prefer: p, _adjacent_cycle_accept(g), n, budget,
                          "S" if group_kind == "SN" else "A")
    return part, g, log + [entry]


def total_color_adjacent_cycle(group_kind: str, n: int) -> TotalColoring:
    """Type I total coloring of C(S_n, {(12), c, c^-1}) or C(A_n, {(123), (132), c, c^-1})."""
    group_kind = group_kind.upper()
    if group_kind == "SN":
        if not 3 <= n <= DESK_LIMIT:
            raise ValueError(f"SN needs 3 <= n <= {DESK_LIMIT}")
    elif group_kind == "AN":
        if n < 5 or n % 2 == 0 or n > DESK_LIMIT:
            raise ValueError("AN needs odd n >= 5 (the n-cycle is odd for even n)")
    else:
        raise ValueError(f"group_kind must be SN or AN, got {group_kind!r}")
    part, g, log = adjacent_cycle_partition(group_kind, n)
    return three_class_total(g, part, {"theorem": f"{group_kind.lower()}-cycle", "n": n,
                                       "levels": log})
