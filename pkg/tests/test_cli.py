import json
import subprocess
import sys
from pathlib import Path

import pytest

from gl11bethe.cli import main

MODELS = Path(__file__).resolve().parent.parent / "models"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_MA(capsys):
    code, out, err = run(capsys, "verify", "--model", MODELS / "MA.json")
    assert code == 0, err
    rep = json.loads(out)
    assert rep["status"] == "pass" and rep["tool"] == "gl11bethe"
    assert rep["data"]["phi"] == "2*x - 1"
    names = {c["name"] for c in rep["checks"]}
    assert {"T = G2", "G0 = Id", "universal oper", "spectrum l=1"} <= names
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_bae_MD_sector_one(capsys):
    code, out, _ = run(capsys, "bae", "--model", MODELS / "MD.json", "--sector", "1")
    assert code == 0
    recs = json.loads(out)["data"]["divisors"]["1"]
    assert [r["roots"] for r in recs] == [["1/2"], ["3/2"]]
    assert all(r["bethe_vector"] == "ok" and r["eigenvalue_H"] for r in recs)


def test_spectrum_and_oper_single(capsys):
    for cmd in ("spectrum", "oper"):
        code, out, err = run(capsys, cmd, "--model", MODELS / "single.json")
        assert code == 0, err
        assert json.loads(out)["command"] == cmd


def test_non_splitting_exit_code(capsys):
    code, out, err = run(capsys, "verify", "--model", MODELS / "MC.json")
    assert code == 2 and not out
    assert "NonSplitting" in err and "phi = 4*x^2 - 11*x + 3" in err


def test_parse_error_names_token(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"field": "Q", "weights": [["1", "0"], ["1", "zz"]], "points": ["0", "1"]}))
    code, _, err = run(capsys, "bae", "--model", bad)
    assert code == 2 and "ParseError" in err and "zz" in err


def test_degenerate_weight(tmp_path, capsys):
    bad = tmp_path / "deg.json"
    bad.write_text(json.dumps({"field": "Q", "weights": [["1", "-1"], ["1", "0"]], "points": ["0", "1"]}))
    code, _, err = run(capsys, "bae", "--model", bad)
    assert code == 2 and "DegenerateWeight" in err


def test_bad_options(capsys):
    assert run(capsys, "bae", "--model", MODELS / "MA.json", "--sector", "one")[0] == 2
    assert run(capsys, "oper", "--model", MODELS / "MA.json", "--order", "1")[0] == 2
    with pytest.raises(SystemExit):
        main(["frobnicate", "--model", str(MODELS / "MA.json")])


def test_out_of_desk_range(capsys):
    code, _, err = run(capsys, "character", "--model", MODELS / "MD.json")
    assert code == 2 and "OutOfDeskRange" in err


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, out, _ = run(capsys, "verify", "--model", MODELS / "MD.json", "--seed", "5", "--out", path)
        assert code == 0 and out == ""
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["config"]["seed"] == 5


def test_character_command(capsys):
    code, out, err = run(capsys, "character", "--model", MODELS / "weyl_2_1.json", "--qdegree", "5")
    assert code == 0, err
    rep = json.loads(out)
    assert rep["data"]["n"] == 3
    assert {c["status"] for c in rep["checks"]} == {"pass"}


def test_weyl_command(capsys):
    code, out, err = run(capsys, "weyl", "--model", MODELS / "weyl_2_1.json")
    assert code == 0, err
    data = json.loads(out)["data"]
    assert data["psi"] == "3*x^2 - 2*x"
    assert [r for r, _ in data["psi_roots"]] == ["0", "2/3"]
    assert sum(len(s["divisors"]) for s in data["spectrum"]["sectors"]) == 4


def test_console_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "gl11bethe", "bae", "--model", str(MODELS / "MA.json"), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["status"] == "pass"
