"""Three-class vertex partitions of Cayley graphs built from coset orbits.

Left multiplication ``x -> m x`` is an automorphism of a Cayley graph whose
edges are ``x ~ x s``.  A proper partition of a subgroup ``H`` (on the edges
with generators in ``H``) is therefore carried onto every left coset ``mH``;
only the edges between cosets can clash.  An :class:`OrbitStep` records one
such transport and the class shift it applies.

Element lists quoted from the literature use the left-to-right product, under
which the Cayley graph reads ``x ~ s x``.  :func:`from_left_action` maps them
onto this package's right-multiplication graphs (inversion is an isomorphism
between the two).
"""
from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field

from ..coloring import VertexPartition
from ..graphs import Graph
from ..perms import GroupElement, Permutation, compose, inverse, parse_cycles

N_CLASSES = 3


class OrbitConflictError(ValueError):
    """An orbit placement (or the greedy residue) broke independence."""

    def __init__(self, message: str, pair=None, log=()):
        super().__init__(message if pair is None else f"{message}: {pair}")
        self.pair = pair
        self.log = tuple(log)


@dataclass(frozen=True)
class OrbitStep:
    """Transport the base partition by left multiplication with ``multiplier``.

    Base class ``source_class`` lands in ``target_class``; the other classes
    follow with the same cyclic shift.  ``seeds`` are the transported elements
    that pin the placement (the multiplier itself, i.e. the image of the
    identity, by default).
    """

    multiplier: GroupElement
    source_class: int = 0
    target_class: int = 0
    seeds: tuple[GroupElement, ...] = ()

    @property
    def shift(self) -> int:
        return (self.target_class - self.source_class) % N_CLASSES

    def describe(self) -> dict:
        return {"multiplier": str(self.multiplier), "source_class": self.source_class,
                "target_class": self.target_class, "seeds": [str(s) for s in self.seeds]}


@dataclass(frozen=True)
class OrbitExtension:
    partition: VertexPartition
    steps: tuple[OrbitStep, ...]
    greedy_vertices: tuple[int, ...]
    log: tuple[dict, ...] = field(default=())


def from_left_action(text: str, n: int) -> Permutation:
    """Read a cycle-notation word written for the left-multiplication Cayley graph."""
    word = Permutation.identity(n)
    for part in _split_cycles(text):
        # left-to-right product, then inversion onto the right-action graph
        word = compose(parse_cycles(part, n), word)
    return inverse(word)


def _split_cycles(text: str) -> list[str]:
    text = text.strip()
    if text in ("e", ""):
        return []
    return ["(" + chunk for chunk in text.split("(") if chunk.strip()]


def _embed(x: GroupElement, like: GroupElement) -> GroupElement:
    if isinstance(x, Permutation) and isinstance(like, Permutation) and x.degree < like.degree:
        return x.extend(like.degree)
    return x


def _base_assignment(base: Sequence[Iterable[GroupElement]], g: Graph) -> dict[GroupElement, int]:
    like = g.labels[0]
    out: dict[GroupElement, int] = {}
    for c, members in enumerate(base):
        for x in members:
            x = _embed(x, like)
            if x in out:
                raise ValueError(f"{x} appears in two base classes")
            out[x] = c
    return out


def greedy_residue(g: Graph, colors: list[int], residue: Sequence[int], budget: int) -> bool:
    """Lowest-feasible-class coloring of ``residue`` with bounded backtracking (in place)."""
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == len(residue):
            return True
        nodes += 1
        if nodes > budget:
            return False
        v = residue[i]
        taken = {colors[w] for w in g.adjacency[v]}
        for c in range(N_CLASSES):
            if c not in taken:
                colors[v] = c
                if rec(i + 1):
                    return True
                colors[v] = -1
        return False

    return rec(0)


def orbit_extend_partition(base: Sequence[Iterable[GroupElement]], steps: Sequence[OrbitStep],
                           g: Graph, repair_budget: int | None = None) -> OrbitExtension:
    """Apply an orbit program to a base partition and greedily finish the rest.

    Raises :class:`OrbitConflictError` carrying the clashing pair when a step
    puts two adjacent vertices in one class or the residue cannot be colored.
    """
    assignment = _base_assignment(base, g)
    idx = g.label_index
    colors = [-1] * g.n_vertices
    for x, c in assignment.items():
        colors[idx[x]] = c
    log: list[dict] = [{"step": "base", "placed": len(assignment)}]
    for k, step in enumerate(steps):
        placed = 0
        for x, c in assignment.items():
            v = idx[compose(step.multiplier, x)]
            target = (c + step.shift) % N_CLASSES
            if colors[v] >= 0:
                if colors[v] != target:
                    raise OrbitConflictError(f"step {k} revisits a colored vertex",
                                             (g.label_str(v),), log)
                continue
            colors[v] = target
            placed += 1
        log.append({"step": k, **step.describe(), "placed": placed})
    for u, v in g.edges:
        if colors[u] >= 0 and colors[u] == colors[v]:
            raise OrbitConflictError("orbit placement joins adjacent vertices",
                                     (g.label_str(u), g.label_str(v)), log)
    residue = [v for v in range(g.n_vertices) if colors[v] < 0]
    if residue:
        budget = repair_budget if repair_budget is not None else max(64, len(residue) ** 2)
        if not greedy_residue(g, colors, residue, budget):
            raise OrbitConflictError("greedy residue coloring failed",
                                     tuple(g.label_str(v) for v in residue[:4]), log)
        log.append({"step": "greedy", "placed": len(residue)})
    partition = VertexPartition.from_colors(colors, N_CLASSES)
    return OrbitExtension(partition, tuple(steps), tuple(residue), tuple(log))


# ---------------------------------------------------------------- step planning


@dataclass(frozen=True)
class StepPlan:
    steps: tuple[OrbitStep, ...]
    nodes: int
    repaired: bool  # True when a non-default candidate was needed


def plan_coset_steps(g: Graph, base: Sequence[Iterable[GroupElement]],
                     coset_key: Callable[[GroupElement], Hashable],
                     preferred: Callable[[Hashable], Sequence[GroupElement]],
                     accept: Callable[[list[int]], bool] | None = None,
                     budget: int = 200_000) -> StepPlan | None:
    """Choose one orbit step per uncovered coset by backtracking.

    Candidates for each coset are the ``preferred`` multipliers first (the
    construction's own choice) and then every other coset element, each with
    shifts 0, 1, 2.  ``accept`` is checked on complete assignments.  Returns
    ``None`` when the budget runs out or no program exists.
    """
    assignment = _base_assignment(base, g)
    idx = g.label_index
    colors = [-1] * g.n_vertices
    for x, c in assignment.items():
        colors[idx[x]] = c
    base_key = coset_key(next(iter(assignment)))
    members: dict[Hashable, list[GroupElement]] = {}
    for x in g.labels:
        members.setdefault(coset_key(x), []).append(x)
    keys = [k for k in members if k != base_key]
    source = assignment
    ident_class = next((c for x, c in source.items() if x.is_identity()), 0)
    chosen: list[OrbitStep] = []
    nodes = 0
    repaired = False

    def candidates(key):
        pref = [m for m in preferred(key) if coset_key(m) == key]
        seen = set(pref)
        rest = [m for m in members[key] if m not in seen]
        for rank, m in enumerate(pref + rest):
            for shift in range(N_CLASSES):
                yield rank >= len(pref) or shift != 0, m, shift

    def rec(t: int) -> bool:
        nonlocal nodes, repaired
        if t == len(keys):
            return accept is None or accept(colors)
        tried = set()
        for nondefault, m, shift in candidates(keys[t]):
            nodes += 1
            if nodes > budget:
                raise TimeoutError
            image = {idx[compose(m, x)]: (c + shift) % N_CLASSES for x, c in source.items()}
            sig = frozenset(image.items())
            if sig in tried:
                continue
            tried.add(sig)
            if any(colors[w] == c for v, c in image.items() for w in g.adjacency[v]):
                continue
            for v, c in image.items():
                colors[v] = c
            chosen.append(OrbitStep(m, ident_class, (ident_class + shift) % N_CLASSES, (m,)))
            if rec(t + 1):
                repaired = repaired or nondefault
                return True
            chosen.pop()
            for v in image:
                colors[v] = -1
        return False

    try:
        ok = rec(0)
    except TimeoutError:
        return None
    return StepPlan(tuple(chosen), nodes, repaired) if ok else None


def classes_of(g: Graph, partition: VertexPartition) -> list[list[GroupElement]]:
    return [[g.labels[v] for v in cls_] for cls_ in partition.classes]
