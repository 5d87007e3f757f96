import json
import subprocess
import sys

import pytest

from sl2triples.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_orbits_so4(capsys):
    code, out, _ = run(["orbits", "--group", "SO", "--n", "4", "--p", "3"], capsys)
    assert code == 0
    names = [o["name"] for o in json.loads(out)["orbits"]]
    assert names == ["3,1", "2,2_I", "2,2_II", "1,1,1,1"]


def test_orbits_gl2_text(capsys):
    code, out, _ = run(["orbits", "--group", "GL", "--n", "2", "--p", "3", "--format", "text"], capsys)
    assert code == 0
    assert [line.split("\t")[0] for line in out.splitlines()] == ["2", "1,1"]


@pytest.mark.parametrize(
    "args,code",
    [
        (["orbits", "--group", "Sp", "--n", "3", "--p", "3"], 2),
        (["orbits", "--group", "GL", "--n", "3", "--p", "4"], 2),
        (["orbits", "--group", "XX", "--n", "3", "--p", "3"], 2),
        (["verify", "--group", "GL", "--n", "3", "--p", "3", "--budget", "0"], 2),
        (["construct", "--group", "GL", "--n", "3", "--p", "3", "--label", "3"], 3),
        (["construct", "--group", "O", "--n", "3", "--p", "3", "--label", "2,1"], 3),
        (["witness-slp", "--group", "GL", "--n", "2", "--p", "3"], 3),
        (["verify", "--group", "GL", "--n", "9", "--p", "3", "--budget", "10"], 5),
    ],
)
def test_exit_codes(args, code, capsys):
    assert run(args, capsys)[0] == code


def test_construct_json(capsys):
    code, out, _ = run(["construct", "--group", "O", "--n", "4", "--p", "3", "--label", "3,1"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert all(obj["checks"].values())
    assert obj["jordan_e"] == obj["jordan_f"] == [3, 1]
    assert {"kind", "n", "p", "gram", "e", "h", "f", "label"} <= set(obj)
    code, out, _ = run(["construct", "--group", "GL", "--n", "3", "--p", "5", "--label", "3"], capsys)
    assert code == 0


def test_verify_and_maximality(capsys):
    code, out, err = run(["verify", "--group", "GL", "--n", "3", "--p", "3", "--progress"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "Holds"
    assert len(err.splitlines()) == 2  # one line per orbit
    code, out, _ = run(["maximality", "--group", "SL", "--n", "3", "--p", "3"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "FailsWithWitness"


def test_verify_contradiction_exit(capsys):
    code, out, _ = run(["verify", "--group", "SL", "--n", "3", "--p", "3", "--variety", "Np"], capsys)
    assert code == 4 and json.loads(out)["verdict"] == "FailsWithWitness"


def test_algebra_hasse_witness(capsys):
    code, out, _ = run(["algebra-check", "--p", "5"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["dim"] == obj["expected"] == 30
    code, out, _ = run(["hasse", "--group", "GL", "--n", "3", "--p", "5"], capsys)
    assert code == 0 and out.count("->") == 2 and out.startswith("digraph")
    code, out, _ = run(["witness-slp", "--group", "GL", "--n", "3", "--p", "3"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["jordan_e_1"] == [3] and obj["jordan_e_2"] == [2, 1]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "o.json"
    code, out, _ = run(["orbits", "--group", "GL", "--n", "2", "--p", "3", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["n"] == 2


def test_subprocess_determinism():
    cmd = [sys.executable, "-m", "sl2triples", "verify", "--group", "O", "--n", "4", "--p", "3", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--threads", "2"], capture_output=True, check=True).stdout
    assert a == b and a
