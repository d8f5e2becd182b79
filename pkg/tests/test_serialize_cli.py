"""Serialization round trips and the command-line driver."""

import json
import subprocess
import sys

import pytest

from latcoh import serialize
from latcoh.cli import main
from latcoh.verify import run_checks


def test_context_roundtrip(ctx):
    doc = serialize.context_to_doc(ctx)
    text = serialize.canonical_json(doc)
    rebuilt = serialize.context_from_doc(json.loads(text))
    assert serialize.canonical_json(serialize.context_to_doc(rebuilt)) == text


def test_fingerprint_stable(ctx):
    doc = serialize.context_to_doc(ctx)
    assert serialize.fingerprint(doc) == serialize.fingerprint(
        json.loads(serialize.canonical_json(doc)))


def test_tamper_detection(ctx):
    doc = json.loads(serialize.canonical_json(serialize.context_to_doc(ctx)))
    doc["family"][0]["res_order"] = "27"
    with pytest.raises(ValueError):
        serialize.context_from_doc(doc)


def test_report_json_deterministic(ctx):
    results = run_checks(ctx, ["nondegeneracy", "commutator-residues"])
    config = {"p": "3"}
    fp = serialize.fingerprint(serialize.context_to_doc(ctx))
    one = serialize.report_json(config, fp, results)
    two = serialize.report_json(config, fp, results)
    assert one == two
    doc = json.loads(one)
    assert doc["summary"]["passed"] == "2"
    md = serialize.report_markdown(config, fp, results)
    assert "| nondegeneracy | p1 | pass |" in md


def test_cli_verify_subset(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--id", "p1", "--id", "l2",
                 "--out", str(out), "--format", "json"])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["summary"] == {"total": "2", "passed": "2", "failed": "0"}
    ids = [r["id"] for r in doc["results"]]
    assert ids == ["nondegeneracy", "commutator-residues"]


def test_cli_build_and_read(tmp_path):
    out = tmp_path / "ctx.json"
    code = main(["build", "--out", str(out)])
    assert code == 0
    ctx2 = serialize.read_context(str(out))
    assert ctx2.p == 3


def test_cli_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["verify"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "--id", "unknown-check"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["build", "--p", "5", "--out", str(tmp_path / "x.json")])
    assert err.value.code == 2  # p != 3 needs --allow-slow
    assert main(["build", "--p", "9", "--allow-slow",
                 "--out", str(tmp_path / "y.json")]) == 2  # not prime


def test_cli_entrypoint_subprocess(tmp_path):
    out = tmp_path / "rep.md"
    proc = subprocess.run(
        [sys.executable, "-m", "latcoh.cli", "verify", "--id", "lemma6",
         "--format", "markdown", "--out", str(out)],
        capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    assert "restriction-orders" in out.read_text()


def test_cli_tables(tmp_path):
    exp = tmp_path / "exp.md"
    code = main(["exponent-table", "--format", "markdown", "--out", str(exp)])
    assert code == 0
    text = exp.read_text()
    assert text.count("| ") > 9
