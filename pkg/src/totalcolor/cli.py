"""Command-line entry point: build, color, verify, exact, claims, export."""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from . import claims as claims_mod
from .coloring import TotalColoring, certificate_json, verify_certificate
from .graphs import Graph, build_graph, graph_from_json, graph_to_dot, graph_to_json
from .solver import (
    dsatur_greedy,
    total_chromatic_number,
    total_coloring_from_result,
    total_graph,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# parameters each family needs on the command line
FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "sn-tm": ("n",), "sn-all": ("n",), "an-star3": ("n",), "sn-cycle": ("n",), "an-cycle": ("n",),
    "dihedral-interval": ("n", "k"), "dihedral-custom": ("n", "rotations", "reflections"),
    "dihedral-complement": ("k",), "circulant": ("n", "diffs"), "kneser-complement": ("n", "k"),
    "cycle": ("n",), "path": ("n",), "complete": ("n",), "complete-bipartite": ("a", "b"),
    "petersen": (),
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    recipe: dict = field(default_factory=dict)
    strategy: str | None = None
    budget: int = 200_000
    out: str | None = None
    fmt: str = "json"


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    return int(os.environ.get("TOTALCOLOR_BUDGET", "200000"))


def recipe_from_args(args) -> dict:
    fam = args.family
    if fam not in FAMILY_PARAMS:
        raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILY_PARAMS)}")
    recipe: dict[str, Any] = {"family": fam}
    for name in FAMILY_PARAMS[fam]:
        value = getattr(args, name, None)
        if value is None:
            if name == "reflections":
                value = []
            else:
                raise UsageError(f"family {fam} needs --{name}")
        recipe[name] = value
    return recipe


def config_from_args(args) -> RunConfig:
    recipe = recipe_from_args(args) if getattr(args, "family", None) else {}
    if recipe:
        try:
            build_graph(recipe)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"invalid parameters for {recipe['family']}: {exc}") from exc
    return RunConfig(args.command, recipe, getattr(args, "strategy", None), _budget(args),
                     getattr(args, "out", None), getattr(args, "format", None) or "json")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- coloring strategies


def theorem_coloring(recipe: dict) -> TotalColoring:
    """The family's own construction."""
    from .constructions import dihedral, kneser, symmetric
    fam = recipe["family"]
    if fam == "sn-tm":
        return symmetric.total_color_sn_tm(recipe["n"])
    if fam == "an-star3":
        return symmetric.total_color_an_star3(recipe["n"])
    if fam in ("sn-cycle", "an-cycle"):
        return symmetric.total_color_adjacent_cycle("SN" if fam == "sn-cycle" else "AN", recipe["n"])
    if fam == "dihedral-interval":
        spec = dihedral.DihedralColoringSpec.interval(recipe["n"], recipe["k"])
        return dihedral.dihedral_total_color(spec).coloring
    if fam == "dihedral-custom":
        spec = dihedral.DihedralColoringSpec.same_difference(
            recipe["n"], recipe["rotations"], recipe["reflections"])
        return dihedral.dihedral_total_color(spec).coloring
    if fam == "dihedral-complement":
        return dihedral.dihedral_total_color(
            dihedral.DihedralColoringSpec.eight_k_plus_four(recipe["k"])).coloring
    if fam == "kneser-complement":
        return kneser.kneser_complement_total(recipe["n"], recipe["k"]).coloring
    if fam == "complete":
        return kneser.clique_canonical_total(recipe["n"])
    if fam in ("circulant", "cycle"):
        n = recipe["n"]
        diffs = recipe.get("diffs", [1, n - 1])
        return dihedral.circulant_total(n, diffs)[0]
    raise UsageError(f"no theorem construction for family {fam}")


def greedy_coloring(g: Graph) -> TotalColoring:
    tg = total_graph(g)
    colors = dsatur_greedy(tg.graph)
    return tg.to_total_coloring(colors).with_log(construction="dsatur-greedy")


def exact_coloring(g: Graph, budget: int) -> TotalColoring:
    res = total_chromatic_number(g, budget)
    c = total_coloring_from_result(g, res)
    return c.with_log(construction="exact-solver", lower=res.lower, upper=res.upper,
                      exhausted=res.exhausted, nodes=res.nodes)


# ---------------------------------------------------------------- commands


def cmd_build(cfg: RunConfig) -> int:
    g = build_graph(cfg.recipe)
    _emit(graph_to_dot(g) if cfg.fmt == "dot" else graph_to_json(g), cfg.out)
    return EXIT_OK


def cmd_color(cfg: RunConfig) -> int:
    from .constructions.kneser import ConstructionInapplicable
    from .constructions.orbits import OrbitConflictError
    from .constructions.symmetric import ConstructionError
    g = build_graph(cfg.recipe)
    try:
        if cfg.strategy == "theorem":
            c = theorem_coloring(cfg.recipe)
        elif cfg.strategy == "greedy":
            c = greedy_coloring(g)
        else:
            c = exact_coloring(g, cfg.budget)
    except (OrbitConflictError, ConstructionError, ConstructionInapplicable) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.fmt == "dot":
        _emit(graph_to_dot(c.graph, c.vertex_colors, c.edge_colors), cfg.out)
    else:
        _emit(certificate_json(c), cfg.out)
    return EXIT_OK


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_verify(path: str, fmt: str) -> int:
    try:
        doc = json.loads(_read(path))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    check = verify_certificate(doc)
    if fmt == "json":
        out = {"valid": check.valid, "problems": list(check.problems),
               "palette": check.report.palette if check.report else None,
               "violations": [v.as_dict() for v in check.report.violations] if check.report else []}
        sys.stdout.write(json.dumps(out, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(("VALID" if check.valid else "INVALID") + "\n")
        for p in check.problems:
            sys.stdout.write(f"  {p}\n")
    return EXIT_OK if check.valid else EXIT_FAIL


def cmd_exact(cfg: RunConfig) -> int:
    g = build_graph(cfg.recipe)
    res = total_chromatic_number(g, cfg.budget)
    doc = {"recipe": cfg.recipe, "delta": g.max_degree, "chi2": res.exact, "lower": res.lower,
           "upper": res.upper, "exhausted": res.exhausted, "nodes": res.nodes}
    if cfg.fmt == "table":
        value = res.exact if res.exact is not None else f"[{res.lower},{res.upper}]"
        text = f"delta  chi''  nodes\n{g.max_degree}  {value}  {res.nodes}\n"
    else:
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_claims(args, cfg: RunConfig) -> int:
    if args.all:
        rows = claims_mod.default_matrix()
    else:
        if args.theorem is None:
            raise UsageError("claims needs --all or --theorem ID")
        if args.theorem not in claims_mod.THEOREMS:
            raise UsageError(f"unknown theorem {args.theorem!r}; known: "
                             f"{', '.join(claims_mod.THEOREMS)}")
        params = {name: getattr(args, name) for name in
                  ("n", "k", "rotations", "reflections") if getattr(args, name) is not None}
        rows = [(args.theorem, params)]
    try:
        reports = claims_mod.run_matrix(rows, cfg.budget)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    text = claims_mod.reports_json(reports) + "\n" if cfg.fmt == "json" \
        else claims_mod.reports_table(reports)
    _emit(text, cfg.out)
    if args.manifest:
        manifest = claims_mod.load_manifest(_read(args.manifest))
        ok = claims_mod.manifest_matches(reports, manifest)
        if not ok:
            print("flagged rows differ from the audit manifest", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_FAIL if claims_mod.flagged_rows(reports) else EXIT_OK


def cmd_export(path: str, fmt: str, out: str | None) -> int:
    doc = json.loads(_read(path))
    if "vertex_colors" in doc:
        g = build_graph(doc["recipe"])
        edge_colors = {tuple(int(t) for t in k.split("-")): v for k, v in doc["edge_colors"].items()}
        text = graph_to_dot(g, doc["vertex_colors"], edge_colors) if fmt == "dot" \
            else json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        g = graph_from_json(json.dumps(doc))
        text = graph_to_dot(g) if fmt == "dot" else graph_to_json(g)
    _emit(text, out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, help="graph family, e.g. sn-tm or dihedral-interval")
    _add_params(p)


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--diffs", type=_ints, help="circulant differences, e.g. '1,11'")
    p.add_argument("--rotations", type=_ints, help="dihedral rotation differences")
    p.add_argument("--reflections", type=_ints, help="indices i of reflections r s^i")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="totalcolor",
                                     description="Total colorings of Cayley and Kneser-type graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a graph as JSON or DOT")
    _add_family(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("color", help="emit a total-coloring certificate")
    _add_family(p)
    p.add_argument("--strategy", choices=("theorem", "greedy", "exact"), default="theorem")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a certificate (exit 0 iff valid)")
    p.add_argument("certificate")
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("exact", help="exact total chromatic number or bounds")
    _add_family(p)
    p.add_argument("--budget", type=int)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("claims", help="audit theorem claims at instances")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run the default instance matrix")
    group.add_argument("--theorem", help="one theorem id")
    _add_params(p)
    p.add_argument("--manifest", help="exit 0 iff flagged rows match this manifest")
    p.add_argument("--budget", type=int)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--out")

    p = sub.add_parser("export", help="convert a graph or certificate file")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="dot")
    p.add_argument("--out")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args.certificate, args.format)
        if args.command == "export":
            return cmd_export(args.input, args.format, args.out)
        cfg = config_from_args(args)
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "color":
            return cmd_color(cfg)
        if args.command == "exact":
            return cmd_exact(cfg)
        return cmd_claims(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
