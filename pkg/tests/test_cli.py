from __future__ import annotations

import json

import pytest

from fano10.cli import main
from fano10.exactalg.fields import GF, QQ
from fano10.instance import SPEC_VERSION, InstanceError, load, render_text
from fano10.suites import ConfigError, RunConfig, appendix_suite


def run_cli(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out)])
    return code, (out.read_text() if out.exists() else "")


def test_appendix_suite_over_q():
    checks = appendix_suite(QQ)
    assert len(checks) == 7 and all(c.ok for c in checks)


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(GF(10007), suite="everything")
    with pytest.raises(ConfigError):
        RunConfig(GF(10007), budget=0)
    with pytest.raises(ConfigError):
        RunConfig(GF(10007), seed=-1)
    assert RunConfig(QQ).echo() == {"field": "q", "seed": 1, "suite": "all", "trials": 20, "budget": 16}


def test_verify_appendix(tmp_path):
    code, text = run_cli(tmp_path, "verify", "--suite", "appendix", "--field", "q")
    doc = json.loads(text)
    assert code == 0 and doc["verdict"] == "pass" and doc["spec_version"] == SPEC_VERSION
    assert doc["summary"] == {"checks": 7, "passed": 7, "failed": 0}


def test_net_over_q_needs_an_extension(tmp_path):
    code, text = run_cli(tmp_path, "verify", "--suite", "net", "--field", "q")
    doc = json.loads(text)
    assert code == 2 and doc["verdict"] == "degenerate"
    assert "extension required" in doc["degeneracy"]["reason"]


@pytest.mark.parametrize("argv", [
    ["verify", "--field", "fp:2"],
    ["verify", "--field", "fp:10007", "--suite", "nope"],
    ["verify", "--budget", "0"],
    ["verify", "--suite", "net", "--field", "fpk:10007:1,0,1"],
    ["frobnicate"],
])
def test_usage_errors(tmp_path, argv):
    assert main(argv) == 64


def test_engineered_instance_is_degenerate(tmp_path):
    inst = tmp_path / "tangent.json"
    assert main(["gen", "--engineered", "tangent", "--suite", "net", "--out", str(inst)]) == 0
    code, text = run_cli(tmp_path, "verify", "--instance", str(inst))
    doc = json.loads(text)
    assert code == 2 and doc["degeneracy"]["failed_checks"] == ["s_i distinct"]


def test_gen_verify_report_roundtrip(tmp_path):
    inst = tmp_path / "inst.json"
    assert main(["gen", "--suite", "net", "--seed", "3", "--out", str(inst)]) == 0
    code, text = run_cli(tmp_path, "verify", "--instance", str(inst))
    assert code == 0
    doc = load(text)
    assert doc["checks"][0]["anchor"] == "instance.reproduced" and doc["checks"][0]["status"] == "pass"
    rep = tmp_path / "out.json"
    txt = tmp_path / "rep.txt"
    assert main(["report", str(rep), "--out", str(txt)]) == 0
    lines = txt.read_text().splitlines()
    assert lines[-1].startswith("verdict: pass") and len(lines) == len(doc["checks"]) + 2
    assert main(["report", str(rep), "--format", "yaml"]) == 64


def test_tampered_instance_fails(tmp_path):
    inst = tmp_path / "inst.json"
    assert main(["gen", "--suite", "net", "--out", str(inst)]) == 0
    doc = json.loads(inst.read_text())
    doc["net"]["six_points"] = list(reversed(doc["net"]["six_points"]))
    inst.write_text(json.dumps(doc))
    code, text = run_cli(tmp_path, "verify", "--instance", str(inst))
    assert code == 1 and json.loads(text)["verdict"] == "fail"


def test_version_mismatch(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"spec_version": "other", "kind": "instance"}))
    assert main(["verify", "--instance", str(bad)]) == 64
    with pytest.raises(InstanceError):
        load("not json")
    with pytest.raises(InstanceError):
        render_text({"kind": "instance"})
