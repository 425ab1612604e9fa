import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from amodlab.cli import main


def schema(name):
    return json.loads((resources.files("amodlab") / "schemas" / f"{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, name, *argv):
    code, out = run(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return code, data


def test_schemas_are_valid():
    for path in (resources.files("amodlab") / "schemas").iterdir():
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


def test_torsion(capsys):
    code, data = run_json(capsys, "torsion", "torsion", "--family", "higman:2:3", "--hmax", "8")
    assert code == 0 and data["orders"] == [1, 2, 3]
    code, data = run_json(capsys, "torsion", "torsion", "--family", "higman:3:2")
    assert data["unbounded"] and data["orders"] is None


def test_torsion_unsupported_family(capsys):
    assert main(["torsion", "--family", "lamplighter"]) == 2


def test_witness(capsys):
    code, data = run_json(capsys, "witness", "witness", "3", "1", "--homology")
    assert code == 0 and data["homology"]["betti"] == [0, 0, 1]
    code, out = run(capsys, "witness", "2", "1", "--format", "text")
    assert out.splitlines() == ["0 1", "0 3", "1 2", "2 3"]


def test_bounds(capsys):
    code, data = run_json(capsys, "bounds", "bounds", "--p", "4", "--q", "6", "--r", "1")
    assert code == 0 and data["bound"] == 0
    assert run(capsys, "bounds", "--p", "4", "--q", "6", "--r", "1", "--format", "text")[1] == "0\n"


def test_fdomain(capsys):
    code, data = run_json(capsys, "fdomain", "fdomain", "6", "2", "--homology")
    assert data["facets"] == [[0, 3], [1, 4], [2, 5]]
    assert data["homology"]["betti"] == [2, 0]
    code, data = run_json(capsys, "fdomain", "fdomain", "6", "0", "--cap", "2")
    assert data["dimension"] == 1


def test_distinguish(capsys):
    code, data = run_json(capsys, "distinguish", "distinguish", "higman:2:3", "higman:2:4")
    assert data["verdict"] == "DISTINGUISHED" and data["order"] == 4
    code, data = run_json(capsys, "distinguish", "distinguish", "regular:5", "higman:4:6")
    assert data["verdict"] == "INCONCLUSIVE" and "open" in data["note"]


def test_lcm_claim(capsys):
    code, data = run_json(capsys, "lcm_claim", "lcm-claim", "6", "4", "100")
    assert code == 0 and data["set"] == [1, 2] and data["equal"]


def test_check_presentation(capsys):
    code, data = run_json(capsys, "presentation", "check-presentation", "brh2", "--nmax", "30")
    assert code == 0 and data["passed"] and data["degrees"] == {"t": 1, "tau": 0}
    code, out = run(capsys, "check-presentation", "brh2", "--nmax", "2", "--print")
    assert len([l for l in out.splitlines() if not l.startswith("#")]) == 3


def test_census(capsys):
    code, data = run_json(capsys, "census", "census", "--family", "higman:2:3", "--height", "3", "--oracle")
    assert code == 0 and data["counts"] == [[1, 1], [2, 3], [3, 9]] and data["agree"]


def test_dlink_params(capsys):
    code, data = run_json(capsys, "dlink_params", "dlink-params", "--family", "higman:2:3", "--height", "4")
    assert (data["p"], data["q"], data["r"]) == (4, 6, 1)
    assert main(["dlink-params", "--family", "higman:2:3", "--height", "3"]) == 2


def test_retract(capsys):
    code, data = run_json(capsys, "retract", "retract", "--family", "star:3", "--vertex", "1", "--vertex", "1,1/0")
    assert code == 0 and data["preserved"]
    assert data["spine_vertices"] == [".,1", ".,1,1/0"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--q", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["torsion", "--family", "cube:3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["retract", "--family", "star:3", "--vertex", "0,1/0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_reproduce_filter(capsys):
    code, data = run_json(capsys, "reproduce", "reproduce", "--filter", "presentations", "--format", "json")
    assert code == 0 and [r["criterion"] for r in data["results"]] == [12]


def test_reproduce_corrupted_golden(tmp_path, capsys):
    bad = tmp_path / "golden.json"
    bad.write_text("{not json")
    code, out = run(capsys, "reproduce", "--filter", "5", "--golden", str(bad))
    assert code == 1 and "[FAIL]" in out
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"census": {"higman:2:3": [1, 3, 9, 28, 90, 298]}}))
    code, out = run(capsys, "reproduce", "--filter", "census", "--golden", str(wrong))
    assert code == 1


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "amodlab.cli", "torsion", "--family", "higman:2:4", "--hmax", "6"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_reproduce_deterministic_without_timing(capsys):
    args = ["reproduce", "--filter", "cubes", "--no-timing", "--seed", "3"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("AMODLAB_THREADS", "4")
    code, out = run(capsys, "reproduce", "--filter", "arcs", "--no-timing")
    lines = out.splitlines()
    assert [l.split()[1] for l in lines[:3]] == ["4", "6", "7"]
