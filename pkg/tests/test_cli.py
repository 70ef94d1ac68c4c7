import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from flagtc import cli
from flagtc.f2poly import RawPoly
from flagtc.flag_ring import FlagRing


def schema(name):
    text = resources.files("flagtc").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def run(*argv):
    doc, code = cli.run(list(argv))
    name = doc.get("command", "error")
    jsonschema.validate(doc, schema(name))
    return doc, code


def test_basis():
    doc, code = run("basis", "--space", "F(1,1,1)")
    assert code == 0
    assert doc["size"] == 6 and doc["poincare"] == [1, 2, 2, 1]
    assert len(doc["basis"]) == 6


def test_basis_surface():
    doc, code = run("basis", "--space", "N(3)")
    assert doc["basis"] == ["1", "a1", "a2", "a3", "T"] and doc["poincare"] == [1, 3, 1]


def test_reduce():
    doc, code = run("reduce", "--space", "F(1,1,1)", "--expr", "x2^2")
    assert doc["normal_form"] == "x1^2 + x1*x2" and not doc["zero"]
    doc, code = run("reduce", "--space", "F(1^2,2)", "--expr", "x1^4")
    assert doc["zero"]


def test_verify_ring():
    doc, code = run("verify-ring", "--space", "F(1^3,2)")
    assert code == 0 and doc["passed"]


def test_zdp_evidence():
    doc, code = run("zdp", "--space", "F(1^4,1)", "--s", "2", "--expr",
                    "z[2,1]^7*z[2,2]^6*z[2,3]^3*z[2,4]^2")
    assert code == 0
    assert doc["nonzero"] is True and doc["degree"] == 18


def test_zdp_dump_terms():
    doc, code = run("zdp", "--space", "F(1,1,3)", "--s", "2", "--expr", "z1^7*z2^6", "--dump-terms")
    assert doc["nonzero"] and len(doc["terms"]) == 2


def test_search():
    doc, code = run("search", "--space", "F(1^4,1)", "--s", "3", "--prefix",
                    "z[2,1]^7*z[2,2]^6*z[2,3]^3*z[2,4]^2", "--free", "z[3,1],z[3,2],z[3,3],z[3,4]",
                    "--degree", "30")
    assert code == 0 and doc["count"] == 6
    assert "z[2,1]^7*z[2,2]^6*z[2,3]^3*z[2,4]^2*z[3,1]*z[3,2]^3*z[3,3]^5*z[3,4]^3" in doc["solutions"]


def test_sharpness():
    doc, code = run("sharpness", "--k", "3", "--e", "2")
    assert doc["vanishes"] is True and code == 0


def test_tc_report():
    doc, code = run("tc-report", "--space", "F(1^3,6)", "--s", "2")
    assert (doc["lower"], doc["upper"]) == (36, 42)
    doc, code = run("tc-report", "--space", "N(2)", "--s", "3")
    assert (doc["lower"], doc["upper"]) == (6, 6)


def test_gap():
    doc, code = run("gap", "--space", "F(1,2)", "--s", "4")
    assert [g["gap"] for g in doc["gaps"]] == [1, 0, 0]


def test_verify_paper_passes():
    doc, code = run("verify-paper")
    assert code == 0 and doc["passed"]
    assert any(item["skipped"] for item in doc["items"])


def test_fault_injection(monkeypatch):
    original = FlagRing._relation_rule

    def corrupted(self, i):
        rule = original(self, i)
        if self.k >= 2 and i == 2:
            rule = rule + RawPoly.gen(self.k, 1, self.bounds[1] + 1)
        return rule

    monkeypatch.setattr(FlagRing, "_relation_rule", corrupted)
    doc, code = run("verify-paper")
    assert code == 1 and not doc["passed"]
    failed = {item["name"] for item in doc["items"] if not item["passed"]}
    assert "ring-oracle" in failed


@pytest.mark.parametrize("argv", [
    ["zdp", "--space", "F(1,1,1)", "--s", "2", "--expr", "z[2,1]^^3"],
    ["tc-report", "--space", "G(2)", "--s", "2"],
    ["zdp", "--space", "F(1,1,1)", "--s", "2", "--expr", "z[3,1]"],
    ["zdp", "--space", "F(1,1,1)", "--s", "2"],
    ["bogus"],
    [],
    ["sharpness", "--k", "9", "--e", "1"],
    ["search", "--space", "F(1,1,1)", "--s", "2", "--free", "z[2,1]", "--degree", "99"],
])
def test_usage_errors(argv):
    doc, code = run(*argv)
    assert code == 2 and doc["error"] == "usage"


def test_parse_error_position():
    doc, code = run("zdp", "--space", "F(1,1,1)", "--s", "2", "--expr", "z[2,1]^^3")
    assert (doc["line"], doc["column"]) == (1, 8)


def test_resource_exit_code():
    doc, code = run("search", "--space", "F(1^4,5)", "--s", "3", "--prefix",
                    "z[2,1]^15*z[2,2]^14*z[2,3]^7*z[2,4]^6", "--free", "z[3,1],z[3,2],z[3,3],z[3,4]",
                    "--degree", "78", "--max-candidates", "10")
    assert code == 3 and doc["error"] == "resource"
    doc, code = run("zdp", "--space", "F(1^4,3)", "--s", "2", "--expr", "(z1*z2*z3)^7*z4^6",
                    "--dump-terms", "--max-terms", "1000")
    assert code == 3


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_candidates": 10}))
    argv = ["search", "--space", "F(1^4,5)", "--s", "3", "--prefix", "z[2,1]^15*z[2,2]^14*z[2,3]^7*z[2,4]^6",
            "--free", "z[3,1],z[3,2],z[3,3],z[3,4]", "--degree", "78", "--config", str(cfg)]
    assert run(*argv)[1] == 3
    # flags override the file
    assert run(*argv, "--max-candidates", "100000")[1] == 0
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(*argv)[1] == 2


def test_store_records(tmp_path):
    path = tmp_path / "store.jsonl"
    run("zdp", "--space", "F(1^4,1)", "--s", "2", "--expr", "z[2,1]^7*z[2,2]^6*z[2,3]^3*z[2,4]^2",
        "--store", str(path))
    run("zdp", "--space", "F(1,1,1)", "--s", "2", "--expr", "(z1*z2)^3", "--store", str(path))
    lines = [json.loads(x) for x in path.read_text().splitlines()]
    assert len(lines) == 2
    for rec in lines:
        jsonschema.validate(rec, schema("store-record"))
    assert lines[0]["nonzero"] and not lines[1]["nonzero"]


def test_pretty_output(capsys):
    code = cli.main(["basis", "--space", "F(1,2)", "--pretty"])
    out = capsys.readouterr().out
    assert code == 0 and "poincare:" in out and not out.startswith("{")


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "flagtc", "sharpness", "--k", "2", "--e", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["vanishes"] is True
    out = subprocess.run([sys.executable, "-m", "flagtc", "basis", "--space", "nope"],
                         capture_output=True, text=True)
    assert out.returncode == 2
    assert json.loads(out.stdout)["error"] == "usage"


@pytest.mark.long
def test_verify_paper_long():
    doc, code = run("verify-paper", "--include-long")
    assert code == 0 and not any(item["skipped"] for item in doc["items"])
