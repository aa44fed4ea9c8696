"""Audit each theorem at concrete instances: construct, verify, solve, compare."""
from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, field
from enum import Enum
from math import comb
from typing import Any

from .coloring import TotalColoring, verify_total
from .graphs import Graph, build_graph
from .perms import (
    Family,
    alternating_group,
    standard_generating_set,
    symmetric_group,
    validate_generating_set,
)
from .solver import DEFAULT_BUDGET, total_chromatic_number

# the solver is skipped on total graphs larger than this (vertices + edges)
SOLVER_SIZE_LIMIT = 400


class Verdict(str, Enum):
    CONFIRMED = "CONFIRMED"
    BOUND_ONLY = "BOUND_ONLY"
    REFUTED_AT_INSTANCE = "REFUTED_AT_INSTANCE"
    INAPPLICABLE = "INAPPLICABLE"


class ClaimKind(str, Enum):
    EXACT = "EXACT"          # chi'' equals the claimed value
    UPPER = "UPPER"          # chi'' is at most the claimed value
    PARTITION = "PARTITION"  # the proof's clique partition exists


@dataclass(frozen=True)
class ClaimReport:
    theorem: str
    params: dict
    claim: str
    claimed: int | None
    delta: int | None
    constructed: int | None
    failure: str | None
    exact: int | None
    lower: int | None
    upper: int | None
    verdict: Verdict
    notes: tuple[str, ...] = ()

    @property
    def instance(self) -> str:
        return ",".join(f"{k}={_short(v)}" for k, v in self.params.items())

    def as_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        out["notes"] = list(self.notes)
        return out

    def key(self) -> tuple[str, str]:
        return (self.theorem, self.instance)


def _short(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(str(x) for x in v) + "]"
    return str(v)


@dataclass
class _Outcome:
    graph: Graph | None = None
    coloring: TotalColoring | None = None
    failure: str | None = None
    inapplicable: str | None = None
    partition_status: str | None = None
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------- theorem table


def _sn_tm(p):
    from .constructions.symmetric import total_color_sn_tm
    g = build_graph({"family": "sn-tm", "n": p["n"]})
    return _attempt(g, lambda: total_color_sn_tm(p["n"])), ClaimKind.EXACT, p["n"], "chi'' = n"


def _an_star3(p):
    from .constructions.symmetric import total_color_an_star3
    g = build_graph({"family": "an-star3", "n": p["n"]})
    return _attempt(g, lambda: total_color_an_star3(p["n"])), ClaimKind.UPPER, g.max_degree + 2, \
        "TCC: chi'' <= Delta+2"


def _an_star3_count(p):
    out, _, _, _ = _an_star3(p)
    out.notes.append(f"printed count: 3 + (n-3) = {p['n']} colors; lower bound Delta+1 = "
                     f"{out.graph.max_degree + 1}")
    return out, ClaimKind.UPPER, p["n"], "colored with n colors"


def _adjacent_cycle(kind: str):
    def run(p):
        from .constructions.symmetric import total_color_adjacent_cycle
        family = "sn-cycle" if kind == "SN" else "an-cycle"
        fam_tag = Family.SN_ADJACENT_CYCLE if kind == "SN" else Family.AN_3CYCLE_NCYCLE
        group = symmetric_group(p["n"]) if kind == "SN" else alternating_group(p["n"])
        problems = validate_generating_set(standard_generating_set(fam_tag, p["n"]), group)
        if problems:
            return _Outcome(inapplicable="; ".join(problems)), ClaimKind.EXACT, None, "type I"
        g = build_graph({"family": family, "n": p["n"]})
        out = _attempt(g, lambda: total_color_adjacent_cycle(kind, p["n"]))
        return out, ClaimKind.EXACT, g.max_degree + 1, "type I: chi'' = Delta+1"
    return run


def _dihedral_interval(p):
    from .constructions.dihedral import DihedralColoringSpec, dihedral_total_color
    spec = DihedralColoringSpec.interval(p["n"], p["k"])
    g = build_graph(spec.recipe())
    out = _attempt(g, lambda: dihedral_total_color(spec).coloring)
    return out, ClaimKind.UPPER, 2 * p["k"] + 3, "chi'' <= 2k+3"


def _dihedral_same_difference(p):
    from .constructions.dihedral import DihedralColoringSpec, dihedral_total_color
    spec = DihedralColoringSpec.same_difference(p["n"], p["rotations"], p["reflections"])
    g = build_graph(spec.recipe())
    out = _attempt(g, lambda: dihedral_total_color(spec).coloring)
    return out, ClaimKind.UPPER, spec.generator_count + 2, "chi'' <= |T|+2"


def _dihedral_complement(p):
    from .constructions.dihedral import DihedralColoringSpec, dihedral_total_color
    spec = DihedralColoringSpec.eight_k_plus_four(p["k"])
    g = build_graph(spec.recipe())
    out = _attempt(g, lambda: dihedral_total_color(spec).coloring)
    n, t = spec.n, spec.generator_count
    out.notes.append(f"|T|+1 = {t + 1}; printed alternative 2n-2k-2 = {2 * n - 2 * p['k'] - 2}")
    return out, ClaimKind.EXACT, t + 1, "type I with |T|+1 colors"


def _kneser(p):
    from .constructions.kneser import ConstructionInapplicable, kneser_complement_total
    n, k = p["n"], p["k"]
    g = build_graph({"family": "kneser-complement", "n": n, "k": k})
    note = f"printed budget C(n-k,k)+3 = {comb(n - k, k) + 3}; built Delta+3 = {g.max_degree + 3}"
    if n % 2 or n % k:
        out = _Outcome(graph=g, inapplicable="needs n even and k | n")
    else:
        try:
            out = _attempt(g, lambda: kneser_complement_total(n, k).coloring)
        except ConstructionInapplicable as exc:
            out = _Outcome(graph=g, inapplicable=str(exc))
    out.notes.append(note)
    return out, ClaimKind.UPPER, g.max_degree + 3, "chi'' <= Delta+3"


def _kneser_partition(p):
    from .constructions.kneser import kneser_clique_partition
    res = kneser_clique_partition(p["n"], p["k"])
    out = _Outcome(partition_status=res.status.value)
    out.notes.append(f"search nodes {res.nodes}")
    return out, ClaimKind.PARTITION, None, "n/k cliques of size C(n-1,k-1)"


THEOREMS = {
    "sn-tm": _sn_tm,
    "an-star3": _an_star3,
    "an-star3-count": _an_star3_count,
    "sn-cycle": _adjacent_cycle("SN"),
    "an-cycle": _adjacent_cycle("AN"),
    "dihedral-interval": _dihedral_interval,
    "dihedral-same-difference": _dihedral_same_difference,
    "dihedral-complement": _dihedral_complement,
    "kneser": _kneser,
    "kneser-partition": _kneser_partition,
}


def default_matrix() -> list[tuple[str, dict]]:
    rows: list[tuple[str, dict]] = []
    rows += [("sn-tm", {"n": n}) for n in (3, 4, 5)]
    rows += [("an-star3", {"n": n}) for n in (4, 5)]
    rows += [("an-star3-count", {"n": n}) for n in (4, 5)]
    rows += [("sn-cycle", {"n": n}) for n in (3, 4, 5)]
    rows += [("an-cycle", {"n": n}) for n in (4, 5)]
    rows.append(("dihedral-interval", {"n": 36, "k": 4}))
    rows.append(("dihedral-same-difference",
                 {"n": 18, "rotations": [1, 2, 3, 4, 14, 15, 16, 17], "reflections": [0, 2]}))
    rows += [("dihedral-complement", {"k": k}) for k in (1, 2, 3)]
    kneser = [(4, 2), (6, 2), (6, 3), (8, 4), (8, 2)]
    rows += [("kneser", {"n": n, "k": k}) for n, k in kneser]
    rows += [("kneser-partition", {"n": n, "k": k}) for n, k in kneser]
    return rows


# ---------------------------------------------------------------- audit


def _attempt(g: Graph, make) -> _Outcome:
    from .constructions.orbits import OrbitConflictError
    from .constructions.symmetric import ConstructionError
    try:
        c = make()
    except (OrbitConflictError, ConstructionError) as exc:
        return _Outcome(graph=g, failure=f"{type(exc).__name__}: {exc}")
    report = verify_total(c.graph, c)
    if not report.valid:
        return _Outcome(graph=g, failure=f"construction failed verification "
                                         f"({len(report.violations)} violations)")
    return _Outcome(graph=g, coloring=c)


def _verdict(kind: ClaimKind, claimed: int | None, constructed: int | None,
             lower: int | None, upper: int | None, exact: int | None) -> Verdict:
    if kind is ClaimKind.EXACT:
        if exact is not None:
            return Verdict.CONFIRMED if exact == claimed else Verdict.REFUTED_AT_INSTANCE
        if lower is not None and lower > claimed:
            return Verdict.REFUTED_AT_INSTANCE
        if upper is not None and upper < claimed:
            return Verdict.REFUTED_AT_INSTANCE
        return Verdict.BOUND_ONLY
    best = min(x for x in (constructed, upper, exact) if x is not None) \
        if any(x is not None for x in (constructed, upper, exact)) else None
    if best is not None and best <= claimed:
        return Verdict.CONFIRMED
    if lower is not None and lower > claimed:
        return Verdict.REFUTED_AT_INSTANCE
    return Verdict.BOUND_ONLY


def audit_claim(theorem: str, params: Mapping[str, Any], budget: int = DEFAULT_BUDGET
                ) -> ClaimReport:
    """Run the theorem's construction and the exact solver at one instance."""
    if theorem not in THEOREMS:
        raise KeyError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    params = dict(params)
    out, kind, claimed, claim = THEOREMS[theorem](params)
    notes = list(out.notes)
    if kind is ClaimKind.PARTITION:
        verdict = {"FOUND": Verdict.CONFIRMED, "NONEXISTENT": Verdict.REFUTED_AT_INSTANCE
                   }.get(out.partition_status, Verdict.BOUND_ONLY)
        notes.insert(0, f"partition {out.partition_status.lower()}")
        return ClaimReport(theorem, params, claim, None, None, None, None, None, None, None,
                           verdict, tuple(notes))
    g = out.graph
    delta = g.max_degree if g is not None else None
    constructed = out.coloring.palette if out.coloring is not None else None
    lower = delta + 1 if delta is not None else None
    upper = constructed
    exact = None
    if constructed is not None and constructed == lower:
        exact = constructed
    elif g is not None and g.n_vertices + g.n_edges <= SOLVER_SIZE_LIMIT:
        res = total_chromatic_number(g, budget)
        lower = max(lower, res.lower)
        upper = res.upper if upper is None else min(upper, res.upper)
        if res.exact is not None:
            exact = res.exact
            notes.append(f"solver exact in {res.nodes} nodes")
        else:
            notes.append(f"solver budget exhausted at {res.nodes} nodes")
    elif g is not None:
        notes.append("solver skipped: total graph above size limit")
    if exact is not None:
        lower = upper = exact
    if out.inapplicable is not None:
        verdict = Verdict.INAPPLICABLE
        notes.insert(0, out.inapplicable)
    else:
        if out.failure is not None:
            notes.insert(0, out.failure)
        verdict = _verdict(kind, claimed, constructed, lower, upper, exact)
    return ClaimReport(theorem, params, claim, claimed, delta, constructed, out.failure, exact,
                       lower, upper, verdict, tuple(notes))


def run_matrix(rows: Sequence[tuple[str, dict]] | None = None, budget: int = DEFAULT_BUDGET
               ) -> list[ClaimReport]:
    return [audit_claim(t, p, budget) for t, p in (rows if rows is not None else default_matrix())]


# ---------------------------------------------------------------- output


FLAGGED = (Verdict.INAPPLICABLE, Verdict.REFUTED_AT_INSTANCE)


def flagged_rows(reports: Sequence[ClaimReport]) -> list[dict]:
    return [{"theorem": r.theorem, "instance": r.instance, "verdict": r.verdict.value}
            for r in reports if r.verdict in FLAGGED]


def load_manifest(text: str) -> list[dict]:
    doc = json.loads(text)
    return sorted(doc["flagged"], key=lambda d: (d["theorem"], d["instance"]))


def manifest_matches(reports: Sequence[ClaimReport], manifest: Sequence[Mapping]) -> bool:
    have = {(d["theorem"], d["instance"], d["verdict"]) for d in flagged_rows(reports)}
    want = {(d["theorem"], d["instance"], d["verdict"]) for d in manifest}
    return have == want


def reports_json(reports: Sequence[ClaimReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=1, sort_keys=True)


def _cell(x) -> str:
    return "-" if x is None else str(x)


def reports_table(reports: Sequence[ClaimReport]) -> str:
    head = ("theorem", "instance", "constructed", "exact", "claimed", "verdict")
    rows = []
    for r in reports:
        exact = _cell(r.exact) if r.exact is not None or r.lower is None \
            else f"[{r.lower},{_cell(r.upper)}]"
        constructed = _cell(r.constructed) if r.failure is None else "failed"
        rows.append((r.theorem, r.instance, constructed, exact, _cell(r.claimed), r.verdict.value))
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(head)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"
