import json
from pathlib import Path

import pytest

from totalcolor.cli import run

MANIFEST = str(Path(__file__).resolve().parents[1] / "audit" / "manifest.json")


def test_build_json_and_dot(capsys):
    assert run(["build", "--family", "sn-tm", "--n", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["edges"]) == 6  # S_3 with two transpositions is a hexagon
    assert run(["build", "--family", "circulant", "--n", "6", "--diffs", "1,5",
                "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph")


@pytest.mark.parametrize("strategy", ["theorem", "greedy", "exact"])
def test_color_then_verify(strategy, tmp_path, capsys):
    cert = tmp_path / "c.json"
    assert run(["color", "--family", "sn-tm", "--n", "4", "--strategy", strategy,
                "--out", str(cert)]) == 0
    doc = json.loads(cert.read_text())
    assert doc["verified"]
    if strategy != "greedy":
        assert doc["palette"] == 4
    assert run(["verify", str(cert)]) == 0
    assert "VALID" in capsys.readouterr().out


def test_verify_rejects_tampering(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run(["color", "--family", "sn-tm", "--n", "3", "--out", str(cert)])
    doc = json.loads(cert.read_text())
    doc["vertex_colors"] = [0] * len(doc["vertex_colors"])
    cert.write_text(json.dumps(doc))
    assert run(["verify", str(cert), "--format", "json"]) == 1
    assert not json.loads(capsys.readouterr().out)["valid"]


def test_color_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(["color", "--family", "dihedral-interval", "--n", "9", "--k", "1", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_failed_construction_exits_one(capsys):
    assert run(["color", "--family", "an-cycle", "--n", "5"]) == 1
    assert "construction failed" in capsys.readouterr().err


def test_exact(capsys):
    assert run(["exact", "--family", "complete", "--n", "4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["chi2"] == 5 and doc["delta"] == 3


def test_export_certificate_to_dot(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run(["color", "--family", "sn-tm", "--n", "3", "--out", str(cert)])
    assert run(["export", str(cert)]) == 0
    assert "graph" in capsys.readouterr().out


def test_claims_single_theorem(capsys):
    assert run(["claims", "--theorem", "sn-tm", "--n", "3", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["verdict"] == "CONFIRMED"
    assert run(["claims", "--theorem", "an-star3-count", "--n", "4"]) == 1


def test_claims_all_against_manifest(capsys):
    assert run(["claims", "--all"]) == 1
    assert run(["claims", "--all", "--manifest", MANIFEST]) == 0


@pytest.mark.parametrize("argv", [
    [], ["color"], ["build", "--family", "nope", "--n", "3"],
    ["claims", "--theorem", "nope"], ["build", "--family", "sn-tm"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert run(argv) == 2


def test_missing_file_exits_one(capsys):
    assert run(["verify", "/nonexistent/cert.json"]) == 1
