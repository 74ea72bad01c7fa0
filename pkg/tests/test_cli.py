import json

import pytest

from lmkit.checks import default_corpus
from lmkit.cli import main
from lmkit.formats import FORMAT


@pytest.fixture
def c3_file(tmp_path):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"format": FORMAT, "kind": "chain", "n": 3}))
    return str(path)


@pytest.fixture
def product_file(tmp_path):
    path = tmp_path / "c3xc3.json"
    factor = {"kind": "chain", "n": 3}
    path.write_text(json.dumps({"format": FORMAT, "kind": "product", "factors": [factor, factor]}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_chain(capsys):
    code, out, _ = run(capsys, "gen", "chain", "-n", "4")
    assert code == 0
    assert json.loads(out) == {"format": FORMAT, "kind": "chain", "n": 4}


def test_gen_power_explicit(capsys):
    code, out, _ = run(capsys, "gen", "power", "-n", "3", "-k", "2", "--explicit")
    spec = json.loads(out)
    assert code == 0 and spec["kind"] == "explicit" and len(spec["elements"]) == 9


def test_gen_needs_n(capsys):
    code, _, err = run(capsys, "gen", "chain")
    assert code == 1 and "-n" in err


def test_gen_corpus_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "corpus", "--dir", str(tmp_path / "corpus"))
    assert code == 0
    assert len(list((tmp_path / "corpus").glob("*.json"))) == len(default_corpus())


def test_validate_ok(capsys, product_file):
    code, out, _ = run(capsys, "validate", product_file)
    assert code == 0
    assert "9 elements" in out and "(0,1)" in out and "valid" in out


def test_validate_corrupted(capsys, data_dir):
    code, out, _ = run(capsys, "validate", str(data_dir / "staircase_not_closed.json"))
    assert code == 1
    assert "L2" in out


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 3 and "cannot read" in err


def test_validate_bad_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert run(capsys, "validate", str(path))[0] == 3


def test_dual_text_and_json(capsys, c3_file):
    code, out, _ = run(capsys, "dual", c3_file)
    assert code == 0 and "2 points" in out and "all hold" in out
    code, out, _ = run(capsys, "dual", c3_file, "--json")
    data = json.loads(out)
    assert data["points"] == ["[1)", "[1/2)"]
    assert data["round_trip"] is True and data["violations"] == []


def test_con_lists_lattice(capsys, product_file):
    code, out, _ = run(capsys, "con", product_file)
    assert code == 0 and "4 congruences" in out
    code, out, _ = run(capsys, "con", product_file, "--theta")
    assert "Con_theta" in out and "4 congruences" in out


def test_con_pair(capsys, c3_file):
    code, out, _ = run(capsys, "con", c3_file, "--pair", "0", "1/2")
    assert code == 0
    assert "oracle" in out and "filter" in out


def test_con_unknown_element(capsys, c3_file):
    code, _, err = run(capsys, "con", c3_file, "--pair", "0", "z")
    assert code == 1 and "unknown element" in err


def test_boolean(capsys, product_file):
    code, out, _ = run(capsys, "boolean", product_file)
    assert code == 0 and out.startswith("4 Boolean congruences, |C(A)| = 4")
    code, out, _ = run(capsys, "boolean", product_file, "--pair", "(0,0)", "(1/2,0)")
    assert "is Boolean; generator (0,1)" in out


def test_check_default_corpus(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--suite", "boolean", "--report", str(report))
    assert code == 0 and "all checks passed" in out
    assert json.loads(report.read_text())["ok"] is True


def test_check_files_json(capsys, c3_file, product_file):
    code, out, _ = run(capsys, "check", c3_file, product_file, "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and len(data["algebras"]) == 2


def test_check_with_corrupted_entry(capsys, c3_file, data_dir):
    code, out, _ = run(capsys, "check", c3_file, str(data_dir / "staircase_not_closed.json"))
    assert code == 1
    assert "skipped staircase_not_closed" in out


def test_check_failure_exit_code(capsys, c3_file, monkeypatch):
    from lmkit import checks

    theorem = checks.Theorem("forced", "duality", "always fails", lambda A, ctx: (1, [((), "forced")]))
    monkeypatch.setattr(checks, "REGISTRY", [theorem])
    code, out, _ = run(capsys, "check", c3_file)
    assert code == 2 and "1 failure(s)" in out


def test_dot_outputs(capsys, product_file):
    code, out, _ = run(capsys, "dot", product_file)
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "dot", product_file, "--what", "con")
    assert out.count("[label=") == 4
    code, out, _ = run(capsys, "dot", product_file, "--what", "space")
    assert "dashed" in out


def test_out_flag_before_and_after_verb(capsys, tmp_path, c3_file):
    first, second = tmp_path / "a.dot", tmp_path / "b.dot"
    assert run(capsys, "--out", str(first), "dot", c3_file)[0] == 0
    assert run(capsys, "dot", c3_file, "--out", str(second))[0] == 0
    assert first.read_text() == second.read_text() != ""


def test_max_space_size_flag(capsys, product_file):
    code, out, _ = run(capsys, "--max-space-size", "2", "con", product_file)
    assert code == 0 and "4 congruences" in out and "Y=" not in out


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "lmkit", "gen", "chain", "-n", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["n"] == 2
