import json
import re
import subprocess
import sys

import pytest

from hopfact.cli import main
from hopfact.report import Check
from hopfact.scenario import (Report, ScenarioError, bundled_scenarios, emit_report, load_scenario, parse_scenario,
                              run_scenario)

V2 = {"group": [4], "generators": [{"name": "x1", "g": [1], "chi": [2]}, {"name": "x2", "g": [1], "chi": [1]}]}


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_load_valid_taft0(tmp_path):
    cfg = load_scenario(write(tmp_path, {"kind": "taft0", "n": 4, "m": 2, "cutoff": 8}))
    assert cfg.kind == "taft0" and cfg.params["cutoff"] == 8 and cfg.seed == 0


def test_m_not_dividing_n_rejected(tmp_path):
    with pytest.raises(ScenarioError, match="m=3 does not divide n=4"):
        load_scenario(write(tmp_path, {"kind": "taft0", "n": 4, "m": 3}))


def test_non_cartan_braiding_rejected():
    cfg = dict(V2, kind="cartan", cartan=[[2, -1], [-1, 2]])
    with pytest.raises(ScenarioError, match=re.escape("q_ij q_ji = q_ii^a_ij")):
        parse_scenario(json.dumps(cfg))


def test_parse_error_reports_position():
    with pytest.raises(ScenarioError, match="line 2, column"):
        parse_scenario('{"kind": "taft0",\n  "n": }')


@pytest.mark.parametrize("raw,msg", [
    ({"n": 4}, "missing field 'kind'"),
    ({"kind": "nope"}, "unknown kind"),
    ({"kind": "taft1", "n": 4}, "missing field 'm'"),
    ({"kind": "universal", **V2, "relations": [{"bogus": 1}]}, "'power' or 'adjoint'"),
    ([1, 2], "top level must be an object"),
])
def test_validation_errors(raw, msg):
    with pytest.raises(ScenarioError, match=re.escape(msg)):
        parse_scenario(json.dumps(raw))


def test_word_budget_enforced(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HOPFACT_MAX_WORDS", "1000")
    path = write(tmp_path, {"kind": "taft0", "n": 4, "m": 2, "cutoff": 12})
    assert main(["run", str(path)]) == 2
    assert "word budget" in capsys.readouterr().err


def test_empty_report():
    body = json.loads(emit_report(Report("empty", "1", []), "json"))
    assert body == {"scenario": "empty", "zeta": "1", "checks": []}
    assert emit_report(Report("empty", "1", []), "text").startswith(b"scenario empty")


def test_failing_check_serializes_witness():
    r = Report("s", "zeta4", [Check("a", True, data={"x": (1, 2)}, ms=1.0), Check("b", False, data={"k": 3})])
    body = json.loads(emit_report(r, "json"))
    a, b = body["checks"]
    assert list(a) == ["id", "status", "data", "ms"]
    assert a["data"] == {"x": [1, 2]}
    assert b["status"] == "fail" and b["witness"] == {"k": 3}
    text = emit_report(r, "text").decode()
    assert "fail" in text and "witness" in text


def test_failure_without_payload_still_has_witness():
    assert Check("c", False).witness == {"check": "c"}
    assert Check("c", True).witness is None


def strip_ms(data):
    return re.sub(rb'"ms": [0-9.]+', b'"ms": 0', data)


def test_run_json_schema_and_determinism(tmp_path, capsys):
    path = write(tmp_path, {"kind": "inner-solve", "name": "q22"})
    assert main(["run", str(path), "--format", "json"]) == 0
    first = capsys.readouterr().out.encode()
    out = tmp_path / "report.json"
    assert main(["run", str(path), "--format", "json", "--out", str(out)]) == 0
    assert strip_ms(first) == strip_ms(out.read_bytes())
    body = json.loads(first)
    assert set(body) == {"scenario", "zeta", "checks"}
    for c in body["checks"]:
        assert set(c) <= {"id", "status", "witness", "data", "ms"} and c["status"] == "pass"


def test_exact_strings_in_reports(tmp_path, capsys):
    path = write(tmp_path, {"kind": "omega", "m_max": 3, "s_max": 2})
    assert main(["run", str(path), "--format", "json"]) == 0
    text = capsys.readouterr().out
    assert "zeta" in text and not re.search(r'"omega[^"]*": \[[^\]]*\d\.\d', text)


def test_exit_code_nonzero_on_failure(tmp_path, monkeypatch):
    import hopfact.scenario as sc
    monkeypatch.setitem(sc.RUNNERS, "inner-solve", lambda cfg: ("1", [Check("broken", False)]))
    assert main(["run", str(write(tmp_path, {"kind": "inner-solve"})), "--out", str(tmp_path / "r.txt")]) == 1


def test_cutoff_override(tmp_path, capsys):
    path = write(tmp_path, {"kind": "taft0", "n": 4, "m": 2, "cutoff": 4, "invariant_cutoff": 6})
    assert main(["run", str(path), "--cutoff", "5", "--format", "json"]) == 0
    capsys.readouterr()
    assert main(["run", str(path), "--cutoff", "-1"]) == 2


def test_missing_file(tmp_path):
    assert main(["run", str(tmp_path / "nope.json")]) == 2


def test_bundled_scenarios_are_valid():
    names = [cfg.name for cfg in bundled_scenarios()]
    assert len(names) == len(set(names)) == 10


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "hopfact.cli", "run", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "--cutoff" in out.stdout


def test_run_scenario_noncartan():
    cfg = next(c for c in bundled_scenarios() if c.kind == "noncartan")
    r = run_scenario(cfg)
    assert r.passed
    ids = {c.id: c for c in r.checks}
    assert ids["nichols_dimension"].data["dim"] == 16
    assert ids["x1^2_implies_ad(x1)^2(x2)"].passed
    assert ids["pi_well_defined"].passed
