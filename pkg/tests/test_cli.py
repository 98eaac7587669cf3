from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qlogic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_passing_logic_exits_zero(capsys):
    code, out, _ = run(capsys, "check-logic", "mo2")
    assert code == 0 and "[PASS" in out


def test_failing_logic_exits_one(capsys):
    code, out, _ = run(capsys, "check-logic", "o6")
    assert code == 1 and "[FAIL     ] orthomodular on o6" in out


def test_input_errors_exit_two(capsys):
    assert run(capsys, "check-logic", "missing-file")[0] == 2
    code, _, err = run(capsys, "suite", "no-such-suite")
    assert code == 2 and "unknown suite" in err


def test_parse_error_exit_two(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("field = Q\ndim = 2\nform = [[1, 0], [0, x]]\n")
    code, _, err = run(capsys, "check-space", str(f))
    assert code == 2 and "bad.txt:3:21" in err


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["symmetry", "rotate"])
    assert e.value.code == 2


def test_global_flags_before_or_after_the_verb(capsys):
    a = run(capsys, "--format", "machine", "--seed", "3", "suite", "symmetry")[1]
    b = run(capsys, "suite", "symmetry", "--seed", "3", "--format", "machine")[1]
    assert a == b
    assert all(json.loads(line)["check"] for line in a.splitlines())


def test_machine_output_is_deterministic(capsys):
    args = ("suite", "lemma-swap", "--format", "machine")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_states_lists_vertices(capsys):
    code, out, _ = run(capsys, "states", "mo2", "--vertices")
    assert code == 1  # the corner state is not Jauch-Piron
    assert "v1: 0=0, a=1, a'=0, b=1, b'=0, 1=1" in out


def test_atom_state(capsys):
    code, out, _ = run(capsys, "atom-state", "--vector", "1,1,0")
    assert code == 0 and "[(1, 0, 0)]: 1/2" in out and "support: [(1, 1, 0)]" in out


def test_extension_state(capsys):
    code, out, _ = run(capsys, "extension-state", "--vector", "1,sqrt(2)", "--tolerance", "1e-9")
    assert code == 0 and "atoms: 10" in out


def test_sublattice_and_filters(capsys):
    assert run(capsys, "sublattice", "--space", "q3", "--atoms", "q3_atoms")[0] == 1  # reducible fragment
    assert run(capsys, "filters")[0] == 0


def test_symmetry_verbs(capsys):
    assert run(capsys, "symmetry", "swap", "--x", "1,1,0", "--y", "1,-1,0")[0] == 0
    assert run(capsys, "symmetry", "regularity", "--space", "q2_root2")[0] == 1
    assert run(capsys, "symmetry", "regularity", "--symmetry", "swap")[0] == 0
    code, _, err = run(capsys, "symmetry", "swap", "--x", "1,0,0", "--y", "1,1,0")
    assert code == 2 and "not orthogonal" in err


def test_caps_reach_the_suites(capsys):
    out = run(capsys, "suite", "section5.4", "--cap-elements", "64", "--format", "machine")[1]
    frag = next(json.loads(line) for line in out.splitlines() if json.loads(line)["check"] == "ortholattice")
    assert frag["stats"]["elements"] <= 64


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qlogic", "check-logic", "mo2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "on mo2" in res.stdout
