import io
import json
import shutil
import subprocess
import sys

import pytest

from tightcm import cli
from tightcm.errors import InvariantViolation
from tightcm.serialize import (
    interlacing_from_json,
    interlacing_to_json,
    rep_from_json,
    rep_to_json,
    result_from_json,
    result_to_json,
)

WORKED = {"I": {"n": 8, "members": [1, 3, 5, 7]}, "J": {"n": 8, "members": [2, 4, 6, 8]},
          "b": [["1"], ["0"], ["0", "1"], ["0"], ["-1"], ["0"], ["0", "-1"], ["0"]],
          "truncation": 16}
INDECOMPOSABLE = {"I": {"n": 6, "members": [1, 3, 5]}, "J": {"n": 6, "members": [2, 4, 6]},
                  "b": [["1"], ["0"], ["-2"], ["0"], ["1"], ["0"]]}


@pytest.fixture
def spec_file(tmp_path):
    def write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_worked_example(capsys, spec_file):
    code, out, _ = run(capsys, "classify", "--spec", spec_file(WORKED))
    assert code == 0
    assert json.loads(out) == {"verdict": "split", "S": [0, 2], "failing_pair": None}


def test_classify_indecomposable(capsys, spec_file):
    code, out, _ = run(capsys, "classify", "--spec", spec_file(INDECOMPOSABLE))
    assert json.loads(out) == {"verdict": "indecomposable", "S": [0, 1, 2], "failing_pair": [0, 1]}


def test_enumerate_48(capsys):
    code, out, _ = run(capsys, "enumerate", "--I", "1,3,5,7", "--J", "2,4,6,8", "--n", "8")
    data = json.loads(out)
    assert code == 0 and data["count"] == 8 and len(data["entries"]) == 8
    assert data["entries"][0]["peaks"] == [0]


def test_interlace_equal_rims(capsys):
    code, out, _ = run(capsys, "interlace", "--I", "1,2", "--J", "1,2", "--n", "4")
    data = json.loads(out)
    assert code == 0 and data["r"] == 0
    assert interlacing_to_json(interlacing_from_json(data)) == data


def test_construct(capsys, spec_file):
    code, out, _ = run(capsys, "construct", "--spec", spec_file(WORKED))
    data = json.loads(out)
    assert code == 0 and data["relations_hold"] is True
    assert rep_to_json(rep_from_json(data["representation"])) == data["representation"]


def test_decompose_round_trip(capsys, spec_file):
    code, out, _ = run(capsys, "decompose", "--spec", spec_file(WORKED), "--with-witness")
    data = json.loads(out)
    assert code == 0 and "witness" in data
    assert result_to_json(result_from_json(data)) == data
    code, out, _ = run(capsys, "decompose", "--spec", spec_file(WORKED))
    slim = json.loads(out)
    assert "witness" not in slim and slim["X"]["members"] == [1, 2, 4, 7]
    assert result_to_json(result_from_json(slim)) == slim


def test_oracle_check_agrees(capsys, spec_file):
    code, out, _ = run(capsys, "oracle-check", "--spec", spec_file(INDECOMPOSABLE))
    data = json.loads(out)
    assert code == 0 and data["agree"] is True
    assert data["oracle"]["candidates"] == []


def test_render_to_file(capsys, spec_file, tmp_path):
    target = tmp_path / "fig.svg"
    code, out, _ = run(capsys, "render", "--spec", spec_file(WORKED), "--format", "svg",
                       "--out", str(target))
    assert code == 0 and json.loads(out)["written"] == str(target)
    assert target.read_text().count("<polyline") == 4


def test_render_ascii_stdout(capsys):
    code, out, _ = run(capsys, "render", "--I", "1,4,5", "--n", "8")
    assert code == 0 and out.startswith("L_{1,4,5}")


def test_spec_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(WORKED)))
    code, out, _ = run(capsys, "classify", "--spec", "-")
    assert code == 0 and json.loads(out)["verdict"] == "split"


def test_truncation_precedence(capsys, spec_file, monkeypatch):
    no_n = {k: v for k, v in WORKED.items() if k != "truncation"}
    monkeypatch.setenv("CM_TRUNCATION", "20")
    _, out, _ = run(capsys, "construct", "--spec", spec_file(no_n))
    assert json.loads(out)["representation"]["truncation"] == 20
    _, out, _ = run(capsys, "construct", "--spec", spec_file(WORKED))
    assert json.loads(out)["representation"]["truncation"] == 16
    _, out, _ = run(capsys, "construct", "--spec", spec_file(WORKED), "--truncation", "24")
    assert json.loads(out)["representation"]["truncation"] == 24


@pytest.mark.parametrize("argv", [
    ["classify"],
    ["classify", "--spec", "/nonexistent/spec.json"],
    ["interlace", "--I", "1,x", "--J", "2", "--n", "4"],
    ["interlace", "--I", "1,2", "--J", "1,2"],
    ["enumerate", "--I", "1,2", "--J", "3,4", "--n", "4"],
    ["frobnicate"],
    ["construct", "--spec", "SPEC", "--truncation", "1"],
])
def test_invalid_input_exits_1(capsys, spec_file, argv):
    argv = [spec_file(WORKED) if a == "SPEC" else a for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    payload = json.loads(err)
    assert set(payload) == {"error", "message"}


def test_bad_spec_contents_exit_1(capsys, spec_file, tmp_path):
    bad = dict(WORKED, b=[["1"]] * 8)
    code, _, err = run(capsys, "classify", "--spec", spec_file(bad))
    assert code == 1 and json.loads(err)["error"] == "BadParameters"
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    code, _, err = run(capsys, "classify", "--spec", str(junk))
    assert code == 1


def test_invariant_violation_exits_2(capsys, spec_file, monkeypatch):
    def broken(spec, verify=True):
        raise InvariantViolation("witness failed")

    monkeypatch.setattr(cli, "decompose", broken)
    code, _, err = run(capsys, "decompose", "--spec", spec_file(WORKED))
    assert code == 2 and json.loads(err)["error"] == "InvariantViolation"


@pytest.mark.skipif(shutil.which("tightcm") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["tightcm", "interlace", "--I", "1,3,5", "--J", "2,4,6", "--n", "6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["r"] == 3
