import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from totalcolor.claims import (
    THEOREMS,
    ClaimKind,
    Verdict,
    _verdict,
    audit_claim,
    default_matrix,
    flagged_rows,
    load_manifest,
    manifest_matches,
    reports_json,
    reports_table,
    run_matrix,
)

MANIFEST = Path(__file__).resolve().parents[1] / "audit" / "manifest.json"


@pytest.fixture(scope="module")
def matrix():
    return run_matrix()


def test_matrix_covers_every_theorem():
    assert {t for t, _ in default_matrix()} == set(THEOREMS)


def test_matrix_matches_manifest(matrix):
    manifest = load_manifest(MANIFEST.read_text())
    assert manifest_matches(matrix, manifest)
    assert len(flagged_rows(matrix)) == len(manifest)


def test_confirmed_rows_are_type_one_or_bounded(matrix):
    for r in matrix:
        if r.verdict is Verdict.CONFIRMED and r.claimed is not None and r.exact is not None:
            assert r.delta + 1 <= r.exact <= r.delta + 2


@pytest.mark.parametrize("theorem, params, verdict", [
    ("sn-tm", {"n": 4}, Verdict.CONFIRMED),
    ("an-star3-count", {"n": 4}, Verdict.REFUTED_AT_INSTANCE),
    ("an-cycle", {"n": 4}, Verdict.INAPPLICABLE),
    ("kneser", {"n": 4, "k": 2}, Verdict.CONFIRMED),
    ("kneser-partition", {"n": 6, "k": 2}, Verdict.REFUTED_AT_INSTANCE),
])
def test_single_audits(theorem, params, verdict):
    assert audit_claim(theorem, params).verdict is verdict


def test_unknown_theorem():
    with pytest.raises(KeyError):
        audit_claim("no-such-theorem", {})


def test_reports_render_deterministically():
    rows = [("sn-tm", {"n": 3}), ("kneser", {"n": 4, "k": 2})]
    a, b = run_matrix(rows), run_matrix(rows)
    assert reports_json(a) == reports_json(b)
    doc = json.loads(reports_json(a))
    assert [d["verdict"] for d in doc] == ["CONFIRMED", "CONFIRMED"]
    assert "sn-tm" in reports_table(a)


opt = st.none() | st.integers(1, 12)


@given(st.sampled_from([ClaimKind.EXACT, ClaimKind.UPPER]), st.integers(1, 12), opt, opt, opt, opt)
def test_verdict_is_consistent(kind, claimed, constructed, lower, upper, exact):
    v = _verdict(kind, claimed, constructed, lower, upper, exact)
    assert v in (Verdict.CONFIRMED, Verdict.REFUTED_AT_INSTANCE, Verdict.BOUND_ONLY)
    if kind is ClaimKind.EXACT and exact is not None:
        assert (v is Verdict.CONFIRMED) == (exact == claimed)
    if kind is ClaimKind.UPPER and v is Verdict.REFUTED_AT_INSTANCE:
        assert lower is not None and lower > claimed
