import json
import subprocess
import sys
from pathlib import Path

import pytest

from lie2plectic.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(argv, tmp_path=None):
    report = None
    if tmp_path is not None:
        report = tmp_path / "report.json"
        argv = ["--report", str(report)] + argv
    code = main(argv)
    return code, (json.loads(report.read_text()) if report else None)


def test_verify_algebra_passes(tmp_path):
    code, rep = run(["verify", str(DATA / "1a.algebra.json")], tmp_path)
    assert code == 0
    assert rep["exit_status"] == 0 and rep["passed"] and rep["command"] == "verify"
    assert rep["data"]["flags"] == "S0"
    assert list(rep["inputs"]) == [str(DATA / "1a.algebra.json")]


def test_verify_mutated_algebra_fails_with_witness(tmp_path):
    code, rep = run(["verify", str(DATA / "1a_mutated.algebra.json")], tmp_path)
    assert code == 1
    failing = {c["name"]: c for c in rep["checks"] if not c["passed"]}
    assert "R4" in failing and failing["R4"]["witness"] is not None


def test_malformed_file_exits_2_with_field_path(capsys):
    assert main(["verify", str(DATA / "malformed.algebra.json")]) == 2
    assert "$.l2p[0].in" in capsys.readouterr().err


def test_missing_file_and_bad_json_exit_2(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["verify", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err


def test_unknown_kind_exits_2(tmp_path, capsys):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"kind": "sheaf"}))
    assert main(["verify", str(f)]) == 2
    assert "$.kind" in capsys.readouterr().err


def test_verify_action_comoment_and_morphism(tmp_path):
    assert run(["verify", str(DATA / "3a.action.json")])[0] == 0
    assert run(["verify", str(DATA / "3a.comoment.json")])[0] == 0
    code, rep = run(["verify", str(DATA / "3a_reference.comoment.json")], tmp_path)
    assert code == 1
    assert any(c["name"] == "C1" and not c["passed"] for c in rep["checks"])
    assert run(["verify", str(DATA / "1a_skeletal.morphism.json")])[0] == 0


def test_skeletalize_writes_skeletal_algebra(tmp_path):
    out = tmp_path / "skel.json"
    code, _ = run(["skeletalize", str(DATA / "1a.algebra.json"), "-o", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["kind"] == "algebra"
    assert doc["basis_g0"] == ["x1", "x3"] and doc.get("basis_gm1", []) == []
    assert doc.get("l3", []) == []
    # the emitted file verifies in turn
    assert main(["verify", str(out)]) == 0


def test_skeletalize_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["skeletalize", str(DATA / "1a.algebra.json"), "-o", str(a)])
    main(["skeletalize", str(DATA / "1a.algebra.json"), "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cohomology_of_heisenberg(tmp_path):
    code, rep = run(["cohomology", str(DATA / "heisenberg.algebra.json"), "--degree", "3"], tmp_path)
    assert code == 0
    assert rep["data"]["dim"] == 1 and rep["data"]["coefficients"] == "trivial"
    code, rep = run(["cohomology", str(DATA / "heisenberg.algebra.json")], tmp_path)
    assert rep["data"]["dims"] == {"0": 1, "1": 2, "2": 2, "3": 1}


def test_cohomology_of_abelian(tmp_path):
    code, rep = run(["cohomology", str(DATA / "abelian4.algebra.json"), "--degree", "2"], tmp_path)
    assert code == 0 and rep["data"]["dim"] == 6


def test_cohomology_degree_out_of_range_exits_2():
    assert main(["cohomology", str(DATA / "heisenberg.algebra.json"), "--degree", "7"]) == 2


def test_selftests(tmp_path):
    code, rep = run(["selftest", "cartan", "--dim", "3", "--seed", "42", "--trials", "20"], tmp_path)
    assert code == 0 and len(rep["checks"]) == 7
    code, rep = run(["selftest", "endo", "--seed", "7", "--trials", "5"], tmp_path)
    assert code == 0
    assert main(["selftest", "cartan", "--trials", "0"]) == 2


def test_examples_list_and_run(tmp_path):
    code, rep = run(["examples", "list"], tmp_path)
    assert code == 0 and len(rep["data"]["examples"]) == 10
    code, rep = run(["examples", "run", "--id", "1a"], tmp_path)
    assert code == 0
    assert main(["examples", "run", "--id", "9z"]) == 2


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        main(["--report", str(p), "verify", str(DATA / "3a.comoment.json")])
    assert a.read_bytes() == b.read_bytes()


def test_quiet_prints_one_line(capsys):
    main(["--quiet", "verify", str(DATA / "1a.algebra.json")])
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1 and out[0].endswith("PASS")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lie2plectic", "--quiet", "examples", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
