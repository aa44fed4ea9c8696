"""Total colorings of circulants and of Cayley graphs on dihedral groups.

A dihedral Cayley graph with rotation differences ``T1`` and reflections
``T2 = {r s^i}`` has two copies of the circulant ``C(n, T1)`` (rotations and
reflections) joined by one perfect matching per reflection generator: the
rotation ``s^a`` meets the reflection ``r s^(i-a)``.  The rotation layer takes a
total coloring of the circulant; the reflection layer reuses it through the
map ``b -> j - b`` with every color advanced by one, and each matching gets a
fresh color.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..coloring import TotalColoring, verify_total
from ..graphs import Graph, build_graph, circulant_graph
from ..perms import DihedralElement
from ..solver import DEFAULT_BUDGET, total_chromatic_number, total_coloring_from_result
from .orbits import OrbitConflictError


def canonical_power_cycle_total(n: int, k: int) -> TotalColoring:
    """Total coloring of ``C_n^k`` with ``2k+1`` colors when ``2k+1`` divides ``n``.

    Vertex ``v`` gets ``2v`` and edge ``{u, v}`` gets ``u + v``, both mod ``2k+1``.
    """
    q = 2 * k + 1
    if k < 1 or q > n or n % q:
        raise ValueError(f"canonical coloring needs 2k+1 | n with 2k+1 <= n (n={n}, k={k})")
    diffs = list(range(1, k + 1)) + [n - d for d in range(1, k + 1)]
    g = circulant_graph(n, diffs, {"family": "circulant", "n": n, "diffs": sorted(set(diffs))})
    vertex_colors = tuple(2 * v % q for v in range(n))
    edge_colors = {(u, v): (u + v) % q for u, v in g.edges}
    return TotalColoring(g, vertex_colors, edge_colors,
                         {"construction": "canonical-power-cycle", "n": n, "k": k, "modulus": q})


class DihedralVariant(str, Enum):
    INTERVAL = "INTERVAL"
    SAME_DIFFERENCE = "SAME_DIFFERENCE"
    COMPLEMENT = "COMPLEMENT"


@dataclass(frozen=True)
class DihedralColoringSpec:
    """Parameters of one dihedral instance.

    INTERVAL: rotations ``±1..±k`` and the single reflection ``r``.
    SAME_DIFFERENCE: explicit ``rotations`` and ``reflections`` (indices ``i`` of ``r s^i``).
    COMPLEMENT: rotations ``±1..±k``; reflections are all ``r s^i`` except the
    progression ``base, base+d, base+2d, ...`` (mod n).
    """

    variant: DihedralVariant
    n: int
    rotations: tuple[int, ...] = ()
    reflections: tuple[int, ...] = ()
    k: int = 0
    d: int = 0
    base: int = 0

    @classmethod
    def interval(cls, n: int, k: int) -> DihedralColoringSpec:
        return cls(DihedralVariant.INTERVAL, n, _interval(n, k), (0,), k=k)

    @classmethod
    def same_difference(cls, n: int, rotations, reflections) -> DihedralColoringSpec:
        rot = tuple(sorted({r % n for r in rotations}))
        return cls(DihedralVariant.SAME_DIFFERENCE, n, rot, tuple(sorted({i % n for i in reflections})))

    @classmethod
    def complement(cls, n: int, k: int, d: int, base: int = 0) -> DihedralColoringSpec:
        excluded = _progression(n, base, d)
        refl = tuple(i for i in range(n) if i not in excluded)
        return cls(DihedralVariant.COMPLEMENT, n, _interval(n, k), refl, k=k, d=d, base=base)

    @classmethod
    def eight_k_plus_four(cls, k: int) -> DihedralColoringSpec:
        return cls.complement(8 * k + 4, k, 2 * k + 1, 0)

    @property
    def generator_count(self) -> int:
        return len(self.rotations) + len(self.reflections)

    def validate(self) -> list[str]:
        problems = []
        n = self.n
        if n < 3:
            problems.append("n must be at least 3")
            return problems
        if any(r % n == 0 for r in self.rotations):
            problems.append("rotation difference 0 is the identity")
        if any((n - r) % n not in self.rotations for r in self.rotations):
            problems.append("rotation differences are not closed under negation")
        if self.variant is not DihedralVariant.SAME_DIFFERENCE and not 1 <= self.k < n / 2:
            problems.append(f"k={self.k} must satisfy 1 <= k < n/2")
        if self.variant is DihedralVariant.COMPLEMENT:
            if self.d <= 0:
                problems.append("complement needs a positive difference d")
            else:
                excluded = _progression(n, self.base, self.d)
                expect = tuple(i for i in range(n) if i not in excluded)
                if self.reflections != expect:
                    problems.append("reflections must be the complement of the excluded progression")
        if not self.rotations and not self.reflections:
            problems.append("empty generating set")
        return problems

    def recipe(self) -> dict:
        return {"family": "dihedral-custom", "n": self.n, "rotations": list(self.rotations),
                "reflections": list(self.reflections)}

    def describe(self) -> dict:
        out = {"variant": self.variant.value, "n": self.n, "rotations": list(self.rotations),
               "reflections": list(self.reflections)}
        if self.variant is not DihedralVariant.SAME_DIFFERENCE:
            out["k"] = self.k
        if self.variant is DihedralVariant.COMPLEMENT:
            out.update(d=self.d, base=self.base)
        return out


def _interval(n: int, k: int) -> tuple[int, ...]:
    return tuple(sorted({d % n for d in range(1, k + 1)} | {(n - d) % n for d in range(1, k + 1)}))


def _progression(n: int, base: int, d: int) -> set[int]:
    out, x = set(), base % n
    while x not in out:
        out.add(x)
        x = (x + d) % n
    return out


def circulant_total(n: int, diffs) -> tuple[TotalColoring, str]:
    """Canonical coloring when ``diffs`` is ``±1..±k`` with ``2k+1 | n``, else the exact solver's."""
    ds = sorted({d % n for d in diffs})
    k = len(ds) // 2
    if ds == list(_interval(n, k)) and n % (2 * k + 1) == 0 and 2 * k + 1 <= n:
        return canonical_power_cycle_total(n, k), "canonical"
    g = circulant_graph(n, ds)
    res = total_chromatic_number(g, DEFAULT_BUDGET)
    c = total_coloring_from_result(g, res)
    if c is None or not verify_total(g, c).valid:
        raise OrbitConflictError(f"no total coloring of the circulant C({n}, {ds}) within budget")
    return c, "exact-solver" if not res.exhausted else "solver-greedy"


@dataclass(frozen=True)
class DihedralResult:
    coloring: TotalColoring
    transfer_index: int
    layer_palette: int
    rotation_vertex_palette: int
    log: dict = field(default_factory=dict)


def _layered(g: Graph, spec: DihedralColoringSpec, layer: TotalColoring, j: int, shift: int
             ) -> TotalColoring:
    n = spec.n
    p = layer.palette
    idx = g.label_index
    rot = [idx[DihedralElement(a, False, n)] for a in range(n)]
    refl = [idx[DihedralElement(b, True, n)] for b in range(n)]
    vertex_colors = [0] * g.n_vertices
    for a in range(n):
        vertex_colors[rot[a]] = layer.vertex_colors[a]
        vertex_colors[refl[a]] = (layer.vertex_colors[(j - a) % n] + shift) % p
    edge_colors = {}
    cross = {i: p + t for t, i in enumerate(spec.reflections)}
    for u, v in g.edges:
        x, y = g.labels[u], g.labels[v]
        if x.refl != y.refl:
            a, b = (x, y) if not x.refl else (y, x)
            edge_colors[(u, v)] = cross[(a.rot + b.rot) % n]
        elif not x.refl:
            edge_colors[(u, v)] = layer.edge_colors[(min(x.rot, y.rot), max(x.rot, y.rot))]
        else:
            s, t = (j - x.rot) % n, (j - y.rot) % n
            edge_colors[(u, v)] = (layer.edge_colors[(min(s, t), max(s, t))] + shift) % p
    return TotalColoring(g, tuple(vertex_colors), edge_colors)


def dihedral_total_color(spec: DihedralColoringSpec) -> DihedralResult:
    """Two-layer total coloring of the dihedral Cayley graph described by ``spec``.

    The transfer index ``j`` is the first one (in index order) for which the
    reflection layer does not clash with the rotation layer across a matching.
    Raises :class:`OrbitConflictError` when no index works.
    """
    problems = spec.validate()
    if problems:
        raise ValueError("; ".join(problems))
    g = build_graph(spec.recipe())
    layer, source = circulant_total(spec.n, spec.rotations)
    p = layer.palette
    tried = []
    for shift in [1] + list(range(2, p)) + [0]:
        for j in range(spec.n):
            c = _layered(g, spec, layer, j, shift)
            report = verify_total(g, c)
            if report.valid:
                log = {"construction": "dihedral-orbit-transfer", "spec": spec.describe(),
                       "layer_source": source, "layer_palette": p, "transfer_index": j,
                       "color_shift": shift, "cross_colors": len(spec.reflections),
                       "rejected_indices": len(tried)}
                return DihedralResult(c.with_log(**log), j, p, len(set(layer.vertex_colors)), log)
            tried.append((j, shift))
    raise OrbitConflictError("no reflection transfer avoids a cross-layer clash", (spec.n,),
                             [{"tried": len(tried)}])
