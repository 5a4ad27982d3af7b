"""The opcalc command line: examples, exit codes, documents, determinism."""

import io
import json
import subprocess
import sys

import pytest

from cli_corpus import CORPUS
from opcalc.cli import run


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,code", CORPUS, ids=lambda a: " ".join(a) if isinstance(a, list) else str(a))
def test_corpus_exit_codes(argv, code):
    assert call(argv)[0] == code


def test_builtin_then_check(tmp_path):
    path = str(tmp_path / "lie.json")
    assert call(["operad", "builtin", "--name", "lie", "--max-arity", "4", "--out", path])[0] == 0
    code, out, _ = call(["operad", "check", path])
    assert code == 0 and "pass" in out


def test_induced_table():
    code, out, _ = call(["operad", "induced", "--triple", "assoc", "--max-arity", "4"])
    rows = [line.split() for line in out.splitlines()[3:]]
    assert code == 0 and [int(r[1]) for r in rows] == [1, 2, 6, 24]


def test_hh_table():
    code, out, _ = call(["hh", "--vars", "2", "--q-max", "3", "--degree", "4", "--json"])
    doc = json.loads(out)
    assert code == 0 and doc["payload"]["ok"] is True
    assert doc["payload"]["result"]["hh"]["2"]["2"] == 1


def test_json_output_is_a_report_document():
    code, out, _ = call(["operad", "induced", "--triple", "sym", "--max-arity", "3", "--json"])
    doc = json.loads(out)
    assert doc["kind"] == "report" and doc["version"] == 1
    assert doc["payload"]["result"]["dims"] == [1, 1, 1]


def test_non_reduced_rational_exit_2(tmp_path):
    path = tmp_path / "lie.json"
    call(["operad", "builtin", "--name", "lie", "--max-arity", "3", "--out", str(path)])
    d = json.loads(path.read_text())
    d["payload"]["components"][2]["generators"][0][0][0] = "2/4"
    path.write_text(json.dumps(d))
    code, _, err = call(["operad", "check", str(path)])
    assert code == 2 and "payload.components[2].generators[0][0][0]" in err


def test_version_mismatch_exit_2(tmp_path):
    path = tmp_path / "v.json"
    call(["operad", "builtin", "--name", "com", "--max-arity", "3", "--out", str(path)])
    d = json.loads(path.read_text())
    d["version"] = 99
    path.write_text(json.dumps(d))
    code, _, err = call(["operad", "check", str(path)])
    assert code == 2 and "version" in err


def test_corrupted_document_is_verified_false(tmp_path):
    path = tmp_path / "assoc.json"
    call(["operad", "builtin", "--name", "assoc", "--max-arity", "3", "--out", str(path)])
    d = json.loads(path.read_text())
    d["payload"]["gamma"]["2;1,1"]["0,0,0"] = {"0": "2"}
    path.write_text(json.dumps(d))
    code, out, _ = call(["operad", "check", str(path)])
    assert code == 1 and "FAIL" in out


def test_triple_document_roundtrip(tmp_path):
    path = str(tmp_path / "t.json")
    assert call(["triple", "check", "--name", "lie", "--max-arity", "3", "--out", path])[0] == 0
    assert call(["triple", "check", path])[0] == 0
    assert call(["triple", "compat", path, "--degree", "3"])[0] == 0


def test_algebra_document_roundtrip(tmp_path):
    path = str(tmp_path / "c.json")
    assert call(["algebra", "free", "--operad", "com", "--degree", "5", "--out", path])[0] == 0
    assert call(["algebra", "split", path])[0] == 0
    code, out, _ = call(["algebra", "split", path, "--relation", "1:1"])
    assert code == 1 and "layer n=2, degree 2" in out


def test_wrong_document_kind(tmp_path):
    path = str(tmp_path / "o.json")
    call(["operad", "builtin", "--name", "com", "--max-arity", "2", "--out", path])
    assert call(["algebra", "check", path])[0] == 2


def test_missing_file():
    assert call(["operad", "check", "/nonexistent/x.json"])[0] == 2


def test_console_script_is_deterministic():
    argv = [sys.executable, "-m", "opcalc.cli", "triple", "nu", "--name", "assoc", "--max-arity", "3", "--json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
