import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

import nbihom
from nbihom.cli import main
from nbihom.serialize import algebra_to_json, dumps, loads_algebra

DATA = Path(nbihom.__file__).parent / "data"
ALPHA = '[["0","-1","0","0"],["-1","0","0","0"],["0","0","0","-1"],["0","0","-1","0"]]'
BETA = '[["0","1","0","0"],["1","0","0","0"],["0","0","0","1"],["0","0","1","0"]]'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def lie3_file(tmp_path, capsys):
    path = tmp_path / "lie3.json"
    assert main(["example", "example-3lie-dim4", "-o", str(path)]) == 0
    return str(path)


def test_golden_twisted_example(capsys):
    code, out, _ = run(capsys, "example", "example-3bihom-dim4")
    assert code == 0
    assert out == (DATA / "example-3bihom-dim4.json").read_text()


def test_twist_induce_reproduces_golden(capsys, lie3_file):
    code, out, _ = run(capsys, "construct", "twist-induce", lie3_file, "--alpha", ALPHA, "--beta", BETA)
    assert code == 0
    assert out == (DATA / "example-3bihom-dim4.json").read_text()


def test_round_trip(capsys, tmp_path):
    for name in ("example-3lie-dim4", "example-3bihom-dim4", "example-bihom-dim2"):
        _, out, _ = run(capsys, "example", name)
        A = loads_algebra(out)
        assert dumps(algebra_to_json(A)) == out


def test_verify_exit_codes(capsys, lie3_file, tmp_path):
    code, out, _ = run(capsys, "verify", lie3_file)
    assert code == 0 and json.loads(out)["commuting"]
    doc = json.loads(Path(lie3_file).read_text())
    entry = doc["bracket"][0]
    entry["value"][0] = str(int(entry["value"][0]) + 1)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and json.loads(out)["skew_failures"]
    code, out, _ = run(capsys, "theorems", str(bad))
    assert code == 1


def test_malformed_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_unknown_example_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["example", "no-such-algebra"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "example", "example-bihom-dim2", "--m", "0")
    assert code == 2


def test_spaces_der_dim2(capsys, monkeypatch):
    _, doc, _ = run(capsys, "example", "example-bihom-dim2", "--m", "2", "--n", "1")
    monkeypatch.setattr(sys, "stdin", io.StringIO(doc))
    code, out, _ = run(capsys, "spaces", "-", "--kind", "der", "--smax", "1")
    assert code == 0
    res = json.loads(out)
    assert [c["dim"] for c in res["cells"]] == [1, 2]


def test_t_extend_grading(capsys, lie3_file):
    code, out, _ = run(capsys, "construct", "t-extend", lie3_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 8
    assert doc["grading"]["t_block"] == [0, 4] and doc["grading"]["tn_block"] == [4, 8]


def test_tau_induce(capsys, lie3_file):
    code, out, _ = run(capsys, "construct", "tau-induce", lie3_file, "--tau", '["0","0","0","0"]')
    assert code == 0 and json.loads(out)["arity"] == 4
    code, _, err = run(capsys, "construct", "tau-induce", lie3_file, "--tau", '["1","0","0","0"]')
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "construct", "tau-induce", lie3_file, "--tau", '["1","0","0","0"]',
                     "--override-trace")
    assert code == 0


def test_theorems_json_lines(capsys, lie3_file):
    code, out, err = run(capsys, "theorems", lie3_file, "--smax", "1")
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert reports[0]["theorem_id"] == "axioms"
    assert {r["conclusion"] for r in reports} <= {"pass", "skipped"}
    assert "tower" in err


def test_theorems_empty_window(capsys, lie3_file):
    code, out, _ = run(capsys, "theorems", lie3_file, "--cells", "")
    assert code == 0 and out == ""
    code, _, _ = run(capsys, "theorems", lie3_file, "--cells", "0,x")
    assert code == 2


def test_module_entry_point(lie3_file):
    res = subprocess.run([sys.executable, "-m", "nbihom", "verify", lie3_file], capture_output=True, text=True)
    assert res.returncode == 0
