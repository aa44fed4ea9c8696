import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracle import conflicts

from totalcolor.coloring import (
    IncompleteColoringError,
    MergeConflictError,
    TotalColoring,
    VertexPartition,
    certificate_dict,
    certificate_json,
    generator_factor_decomposition,
    is_proper_edge_coloring,
    konig_bipartite_edge_color,
    matching_between_classes,
    merge_partial_total,
    misra_gries_edge_color,
    verify_certificate,
    verify_total,
)
from totalcolor.constructions.symmetric import total_color_sn_tm
from totalcolor.graphs import (
    Graph,
    build_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def bipartite_graphs(draw):
    a, b = draw(st.integers(1, 7)), draw(st.integers(1, 7))
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph.from_edges(a + b, draw(st.lists(st.sampled_from(pairs), unique=True)))


def test_triangle_canonical_is_valid():
    g = cycle_graph(3)
    c = TotalColoring(g, (0, 1, 2), {(0, 1): 2, (1, 2): 0, (0, 2): 1})
    report = verify_total(g, c)
    assert report.valid and report.palette == 3


def test_monochrome_c4_has_four_vertex_clashes():
    g = cycle_graph(4)
    c = TotalColoring(g, (0, 0, 0, 0), {e: 1 + i % 2 for i, e in enumerate(g.edges)})
    kinds = [v.kind for v in verify_total(g, c).violations]
    assert kinds.count("vertex-vertex") == 4


def test_sn_tm_coloring_verifies():
    c = total_color_sn_tm(4)
    assert verify_total(c.graph, c).valid and c.palette == 4


def test_verify_rejects_incomplete_or_foreign():
    g = cycle_graph(4)
    with pytest.raises(IncompleteColoringError):
        verify_total(g, TotalColoring(g, (0, 1, 0, None), {e: 2 for e in g.edges}))
    with pytest.raises((IncompleteColoringError, ValueError)):
        verify_total(g, TotalColoring(g, (0, 1, 0), {}))


@settings(max_examples=60, deadline=None)
@given(graphs(8), st.data())
def test_verifier_agrees_with_naive_count(g, data):
    k = g.max_degree + 2
    vc = tuple(data.draw(st.integers(0, k - 1)) for _ in range(g.n_vertices))
    ec = {e: data.draw(st.integers(0, k - 1)) for e in g.edges}
    report = verify_total(g, TotalColoring(g, vc, ec))
    assert len(report.violations) == conflicts(g.n_vertices, g.edges, vc, ec)


def test_misra_gries_examples():
    assert max(misra_gries_edge_color(complete_graph(4)).values()) + 1 <= 4
    assert len(set(misra_gries_edge_color(cycle_graph(5)).values())) == 3
    pet = misra_gries_edge_color(petersen_graph())
    assert is_proper_edge_coloring(petersen_graph(), pet) and len(set(pet.values())) == 4


@settings(max_examples=500, deadline=None)
@given(graphs(40))
def test_misra_gries_within_vizing(g):
    colors = misra_gries_edge_color(g)
    assert is_proper_edge_coloring(g, colors)
    assert set(colors) == set(g.edges)
    assert not colors or max(colors.values()) <= g.max_degree


def test_konig_examples():
    assert len(set(konig_bipartite_edge_color(complete_bipartite_graph(3, 3)).values())) == 3
    assert len(set(konig_bipartite_edge_color(cycle_graph(6)).values())) == 2
    assert len(set(konig_bipartite_edge_color(path_graph(4)).values())) == 2
    with pytest.raises(ValueError):
        konig_bipartite_edge_color(cycle_graph(5))


@settings(max_examples=500, deadline=None)
@given(bipartite_graphs())
def test_konig_uses_delta_colors(g):
    colors = konig_bipartite_edge_color(g)
    assert is_proper_edge_coloring(g, colors)
    assert not colors or max(colors.values()) + 1 == g.max_degree


@pytest.mark.parametrize("recipe, expect", [
    ({"family": "sn-tm", "n": 4}, {"matching": 3}),
    ({"family": "dihedral-custom", "n": 6, "rotations": [1, 5], "reflections": [0]},
     {"matching": 1, "2-factor": 1}),
    ({"family": "sn-cycle", "n": 3}, {"matching": 1, "2-factor": 1}),
])
def test_factor_decomposition(recipe, expect):
    g = build_graph(recipe)
    classes = generator_factor_decomposition(g)
    kinds = {}
    for fc in classes.values():
        kinds[fc.kind] = kinds.get(fc.kind, 0) + 1
    assert kinds == expect
    edges = [e for fc in classes.values() for e in fc.edges]
    assert sorted(edges) == sorted(g.edges)
    for fc in classes.values():
        ends = [v for e in fc.edges for v in e]
        if fc.kind == "matching":
            assert len(ends) == len(set(ends)) == g.n_vertices


def test_factor_decomposition_needs_generators():
    with pytest.raises(ValueError):
        generator_factor_decomposition(cycle_graph(4))


def test_matchings_between_classes():
    g = cycle_graph(6)
    m = matching_between_classes(g, [0, 2, 4], [1, 3, 5])
    assert m.perfect and len(m) == 3
    assert not matching_between_classes(g, [0, 2], [1, 3, 5]).perfect
    with pytest.raises(ValueError):
        matching_between_classes(g, [0, 1], [1, 2])


def test_merge_on_hexagon():
    g = build_graph({"family": "sn-tm", "n": 3})
    part = VertexPartition.from_colors([i % 3 for i in range(6)])
    assert part.is_proper(g) or part.conflicts(g)
    # a proper 3-class split of the hexagon found by walking it
    order = [0]
    while len(order) < 6:
        order.append(next(w for w in g.adjacency[order[-1]] if w not in order))
    colors = [0] * 6
    for i, v in enumerate(order):
        colors[v] = i % 3
    part = VertexPartition.from_colors(colors)
    ms = {}
    for i in range(3):
        a, b = [j for j in range(3) if j != i]
        ms[i] = matching_between_classes(g, part.classes[a], part.classes[b]).edges
    c = merge_partial_total(g, part, ms)
    assert c.is_complete and verify_total(g, c).valid and c.palette == 3


def test_merge_reports_conflicts():
    g = cycle_graph(6)
    part = VertexPartition.from_colors([0, 1, 0, 1, 0, 1])
    c = merge_partial_total(g, part, {})
    assert not c.is_complete and len(c.unset_edges) == 6
    with pytest.raises(MergeConflictError) as err:
        merge_partial_total(g, part, {0: [(0, 1)]})
    assert err.value.location == (0, 1)


def test_certificate_round_trip_and_tamper():
    c = total_color_sn_tm(4)
    doc = json.loads(certificate_json(c))
    assert doc["verified"] and doc["palette"] == 4 and doc["violations"] == []
    assert verify_certificate(doc).valid
    bad = json.loads(certificate_json(c))
    key = next(iter(bad["edge_colors"]))
    bad["edge_colors"][key] = (bad["edge_colors"][key] + 1) % 4
    assert not verify_certificate(bad).valid
    assert not verify_certificate({"recipe": {}}).valid


def test_single_planted_violation_is_located():
    rng = random.Random(11)
    c = total_color_sn_tm(4)
    g = c.graph
    for _ in range(50):
        u, v = g.edges[rng.randrange(g.n_edges)]
        vc = list(c.vertex_colors)
        vc[u] = vc[v]
        report = verify_total(g, TotalColoring(g, tuple(vc), c.edge_colors))
        assert any(x.kind == "vertex-vertex" and {x.first, x.second} == {u, v}
                   for x in report.violations)


def test_certificates_are_byte_deterministic():
    assert certificate_json(total_color_sn_tm(4)) == certificate_json(total_color_sn_tm(4))
    assert certificate_dict(total_color_sn_tm(3))["digest"]
