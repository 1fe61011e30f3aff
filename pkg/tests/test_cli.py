import subprocess
import sys
from importlib import resources

import pytest

from edpsat.cli import main
from edpsat.cnf import read_dimacs
from edpsat.core import discrepancy, parse_sequence

APPENDIX = str(resources.files("edpsat.data").joinpath("appendix_a_1160.txt"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify", "--seq", APPENDIX, "--disc", "2")
    assert code == 0 and "discrepancy 2" in out
    code, out, _ = run(capsys, "verify", "--seq", APPENDIX, "--disc", "1")
    assert code == 1


def test_verify_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("+ - 0")
    code, _, err = run(capsys, "verify", "--seq", str(bad), "--disc", "2")
    assert code == 2 and "unexpected character" in err


def test_solve_unsat(capsys):
    code, out, err = run(capsys, "solve", "--length", "12", "--disc", "1", "--solver", "internal")
    assert code == 1 and out == "UNSAT\n"
    assert "encoding=binary" in err and "solver=internal" in err


def test_solve_sat_output_reverifies(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "-l", "50", "-C", "2", "--encoding", "unary")
    assert code == 0
    seq = parse_sequence(out)
    assert len(seq) == 50 and discrepancy(seq).value <= 2
    path = tmp_path / "s.txt"
    path.write_text(out)
    assert run(capsys, "verify", "--seq", str(path), "--disc", "2")[0] == 0


def test_solve_budget(capsys):
    code, out, _ = run(capsys, "solve", "-l", "300", "-C", "2", "--budget", "1")
    assert code == 3 and out.startswith("UNKNOWN budget")


def test_solve_external_unconfigured(capsys, monkeypatch):
    monkeypatch.delenv("EDPSAT_SOLVER", raising=False)
    assert run(capsys, "solve", "-l", "5", "-C", "1", "--solver", "exec:")[0] == 2
    assert run(capsys, "solve", "-l", "5", "-C", "1", "--solver", "exec:no-such-solver-q")[0] == 2
    assert run(capsys, "solve", "-l", "5", "-C", "1", "--solver", "magic")[0] == 2


def test_solve_external_from_env(capsys, monkeypatch, tmp_path):
    script = tmp_path / "fake.py"
    script.write_text("print('s UNSATISFIABLE')\n")
    monkeypatch.setenv("EDPSAT_SOLVER", f"{sys.executable} {script}")
    code, out, _ = run(capsys, "solve", "-l", "12", "-C", "1", "--solver", "exec:")
    assert code == 1 and out == "UNSAT\n"


def test_encode_then_decode(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    code, out, _ = run(capsys, "encode", "-l", "11", "-C", "1", "--out", str(cnf))
    assert code == 0 and out.startswith("variables 68\nclauses ")
    f = read_dimacs(cnf)
    from edpsat.solver import solve_internal

    model = solve_internal(f).assignment
    model_file = tmp_path / "model.txt"
    model_file.write_text("s SATISFIABLE\nv " + " ".join(map(str, model.literals())) + " 0\n")
    code, out, err = run(capsys, "decode", "--cnf", str(cnf), "--model", str(model_file), "--audit")
    assert code == 0 and "audit: pass" in err
    assert discrepancy(parse_sequence(out)).value <= 1
    model_file.write_text("s UNSATISFIABLE\n")
    assert run(capsys, "decode", "--cnf", str(cnf), "--model", str(model_file))[0] == 1
    model_file.write_text("c nothing\n")
    assert run(capsys, "decode", "--cnf", str(cnf), "--model", str(model_file))[0] == 3


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--disc", "1", "--max-length", "64")
    assert code == 0 and out.startswith("max-length 11\n")
    code, out, _ = run(capsys, "oracle", "--disc", "1", "--length", "12")
    assert code == 1 and out == "exists false\n"
    code, out, _ = run(capsys, "oracle", "--disc", "2", "--length", "1161", "--budget", "1000")
    assert code == 3


def test_check_rup_round_trip(capsys, tmp_path):
    cnf, proof = tmp_path / "u.cnf", tmp_path / "u.drup"
    run(capsys, "encode", "-l", "12", "-C", "1", "--encoding", "unary", "-o", str(cnf))
    code, _, _ = run(capsys, "solve", "-l", "12", "-C", "1", "--encoding", "unary", "--proof", str(proof))
    assert code == 1
    code, out, _ = run(capsys, "check-rup", "--cnf", str(cnf), "--proof", str(proof))
    assert code == 0 and out == "accepted\n"
    proof.write_text("0\n")
    code, out, _ = run(capsys, "check-rup", "--cnf", str(cnf), "--proof", str(proof))
    assert code == 1 and out == "rejected step 1\n"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--length", "0", "--disc", "1"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "edpsat", "verify", "--seq", "-", "--disc", "1"],
        input="+ - - +\n",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "discrepancy 1" in proc.stdout
