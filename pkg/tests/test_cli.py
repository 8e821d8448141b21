import subprocess
import sys

import pytest

from adequate.cli import run


def test_bound(capsys):
    assert run(["bound", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "2187"


def test_ff_enum(capsys):
    assert run(["ff-enum", "--p", "2", "--k", "2", "--n", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "{0, 1}"
    assert out[1] == "prime subfield {0, 1}"


def test_construct_verify_pipe():
    py = [sys.executable, "-m", "adequate"]
    cert = subprocess.run(py + ["construct-real", "--poly", "[-2,0,1]", "--iso", "1,2", "--mode", "chain"],
                          capture_output=True, text=True, check=True).stdout
    res = subprocess.run(py + ["verify"], input=cert, capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("ADEQUATE")


def test_files_and_combine(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    assert run(["construct-padic", "--poly", "[1,0,1]", "--p", "5", "--root-residue", "2",
                "--out", str(a)]) == 0
    assert run(["verify", "--cert", str(a)]) == 0
    assert run(["combine", "--op", "neg", "--cert", str(a), "--out", str(b)]) == 0
    assert run(["verify", "--cert", str(b)]) == 0
    assert run(["combine", "--op", "add", "--cert", str(a), "--out", str(b)]) == 3
    capsys.readouterr()
    assert run(["formula", "--cert", str(a)]) == 0
    assert capsys.readouterr().out.startswith("(and ")


def test_not_adequate_exit(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("backend ff{p=2;k=2}\nelem 1 (0,1)\ntarget 1\n")
    assert run(["verify", "--cert", str(f)]) == 1
    assert "witness 1" in capsys.readouterr().out


def test_inconclusive_exit(tmp_path):
    f = tmp_path / "i.txt"
    f.write_text("backend rat\nelem 1 5\ntarget 1\n")
    assert run(["verify", "--cert", str(f)]) == 2


@pytest.mark.parametrize("argv", [
    ["bound"],
    ["bound", "--n", "0"],
    ["construct-real", "--poly", "[-2,0,1]", "--iso", "2,3"],
    ["construct-real", "--poly", "[-2,0,1]", "--iso", "1"],
    ["construct-padic", "--poly", "[1,0,1]", "--p", "7", "--root-residue", "1"],
    ["padic-roots", "--poly", "[1,0,1]", "--p", "6"],
    ["hensel", "--poly", "[1,0,1]", "--p", "5", "--a0", "1"],
    ["ff-enum", "--p", "2", "--k", "7", "--n", "1"],
    ["verify", "--cert", "/nonexistent/cert.txt"],
    ["nosuch"],
])
def test_input_errors(argv, capsys):
    assert run(argv) == 3
    err = capsys.readouterr().err
    assert err.startswith("error:") and err.count("\n") == 1


def test_padic_tools(capsys):
    assert run(["padic-roots", "--poly", "[1,0,1]", "--p", "5", "--prec", "4"]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "padic{p=5;val=0;digits=[2,1,2,1]}", "padic{p=5;val=0;digits=[3,3,2,3]}"]
    assert run(["separate", "--p", "5", "--c", "1", "--d", "26"]) == 0
    assert capsys.readouterr().out.strip() == "m=2 u=1"
