import json

import pytest

from ccquad.cli import main


def run(capsysbinary, *argv):
    code = main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out, err


def test_check_pentagon(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--edges", "6,4,3,5,4", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["kind"] == "unique" and d["solutions"] == [[3, 2, 1, 1, 4]]


def test_check_infeasible(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--edges", "6,2,2")
    assert code == 1 and b"InequalityViolation" in out


def test_check_validation_error(capsysbinary):
    code, _, err = run(capsysbinary, "check", "--edges", "1,3,2")
    assert code == 2 and b"error" in err
    code, _, _ = run(capsysbinary, "check", "--edges", "2,x")
    assert code == 2


def test_check_beyond_eight(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--edges", ",".join(["3"] * 12), "--format", "json")
    assert code == 0 and json.loads(out)["solution_count"] == 4


def test_non_strict_flag(capsysbinary):
    assert run(capsysbinary, "check", "--edges", "2,2,2,4,2")[0] == 1
    code, out, _ = run(capsysbinary, "check", "--edges", "2,2,2,4,2", "--non-strict")
    assert code == 0 and b"corner" in out


def test_enumerate(capsysbinary):
    code, out, _ = run(capsysbinary, "enumerate", "--edges", "4,3,4,3,4,3,4,3", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["count"] == 6 and len(d["solutions"]) == 6
    assert d["solutions"][0]["pick"] == [1, 1]


def test_mesh_outputs(tmp_path, capsysbinary):
    obj, svg = tmp_path / "m.obj", tmp_path / "m.svg"
    code, _, _ = run(capsysbinary, "mesh", "--edges", "6,4,3,5,4", "--out", str(obj), "--svg", str(svg))
    assert code == 0
    text = obj.read_text()
    assert text.count("\nv ") == 37 and text.count("\nf ") == 25
    assert svg.read_text().startswith("<?xml")


def test_mesh_to_stdout_matches_file(tmp_path, capsysbinary):
    obj = tmp_path / "m.obj"
    run(capsysbinary, "mesh", "--edges", "4,3,4,3,4,3,4,3", "--pick", "2,3", "--out", str(obj))
    _, out, _ = run(capsysbinary, "mesh", "--edges", "4,3,4,3,4,3,4,3", "--pick", "2,3")
    assert out == obj.read_bytes()


def test_mesh_pick_errors(capsysbinary):
    assert run(capsysbinary, "mesh", "--edges", "4,3,4,3,4,3,4,3", "--pick", "3,1")[0] == 2
    assert run(capsysbinary, "mesh", "--edges", "6,4,3,5,4", "--pick", "1,1")[0] == 2
    assert run(capsysbinary, "mesh", "--edges", "6,2,2")[0] == 1


def test_input_file(tmp_path, capsysbinary):
    doc = tmp_path / "p.json"
    doc.write_text(json.dumps({"edges": [2, 2, 2, 4, 2], "mode": "nonstrict"}))
    assert run(capsysbinary, "check", "--input", str(doc))[0] == 0
    assert run(capsysbinary, "check", "--input", str(doc), "--mode", "strict")[0] == 1
    doc.write_text('{"edges": [2, 2],\n "mode": "loose"}')
    code, _, err = run(capsysbinary, "check", "--input", str(doc))
    assert code == 2 and b"line 2" in err
    assert run(capsysbinary, "check", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_scan(capsysbinary):
    code, out, _ = run(
        capsysbinary, "scan", "--n", "5", "--min", "1", "--max", "3", "--verify", "oracle,uniqueness", "--format", "json"
    )
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["total"] == 243


def test_scan_usage_errors(capsysbinary):
    assert run(capsysbinary, "scan", "--n", "5", "--max", "3", "--verify", "speed")[0] == 2
    assert run(capsysbinary, "scan", "--n", "8", "--max", "9", "--cap", "10")[0] == 2
    assert run(capsysbinary, "scan", "--n", "5", "--max", "3", "--verify", "feasibility")[0] == 2
    assert run(capsysbinary, "scan", "--n", "4", "--max", "3", "--verify", "uniqueness")[0] == 2


def test_oracle(capsysbinary):
    code, out, _ = run(capsysbinary, "oracle", "--edges", "4,3,4,3,4,3,4,3")
    assert code == 0 and out.startswith(b"6 solution(s)")
    assert run(capsysbinary, "oracle", "--edges", "9,9,9,9,9,9,9,9", "--non-strict", "--budget", "10")[0] == 2


def test_missing_input_is_argparse_error():
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2
