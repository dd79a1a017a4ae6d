import json
import subprocess
import sys

import pytest

from bnsplit.cli import main

TREFOIL_BN = (
    '{"diagram": "trefoil", "dims": [], "free": [{"i": 0, "q": -3}, {"i": 0, "q": -1}], '
    '"theory": "bn", "torsion": [{"i": -2, "k": 1, "q": -7}, {"i": -2, "k": 1, "q": -5}]}\n'
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_inline_unknot(capsys):
    code, out, _ = run(capsys, "compute", "O @1", "--theory", "kh")
    assert code == 0
    assert out.splitlines()[1:] == [" i\\q -1  1", "   0  1  1"]


def test_compute_json_is_stable(capsys, data_dir):
    path = str(data_dir / "trefoil.pd")
    code, out, _ = run(capsys, "compute", path, "--theory", "bn", "--format", "json")
    assert code == 0 and out == TREFOIL_BN
    assert run(capsys, "compute", path, "--theory", "bn", "--format", "json")[1] == out


def test_reduced_reports_agree_up_to_shift(capsys, data_dir):
    path = str(data_dir / "trefoil.pd")
    _, ox, _ = run(capsys, "compute", path, "--theory", "reduced-x", "--format", "json")
    _, o1, _ = run(capsys, "compute", path, "--theory", "reduced-1", "--format", "json")
    x, one = json.loads(ox), json.loads(o1)
    shifted = sorted((e["i"], e["q"] - 2) for e in one["free"])
    assert shifted == sorted((e["i"], e["q"]) for e in x["free"])
    assert sorted((e["i"], e["q"] - 2, e["k"]) for e in one["torsion"]) == sorted(
        (e["i"], e["q"], e["k"]) for e in x["torsion"]
    )


def test_verify_all_passes(capsys, data_dir):
    code, out, err = run(capsys, "verify", str(data_dir / "trefoil.pd"), "--checks", "all")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass" and len(data["reports"]) == 7
    assert len(err.splitlines()) == 7


def test_verify_corrupted_fixture(capsys, data_dir):
    code, out, _ = run(capsys, "verify", str(data_dir / "corrupted-fixture.pd"), "--checks", "dsq")
    assert code == 1
    data = json.loads(out)
    assert data["fault"] == "d-edge"
    first = data["reports"][0]["failures"][0]
    assert first["alpha"] == "000" and first["face"] == [0, 1]


def test_verify_hopf_split_jones(capsys, data_dir):
    code, out, _ = run(capsys, "verify", str(data_dir / "hopf.pd"), "--checks", "split,jones", "--format", "text")
    assert code == 0 and out.count("PASS") == 2


def test_verify_fault_flag(capsys, data_dir):
    code, _, _ = run(capsys, "verify", str(data_dir / "trefoil.pd"), "--checks", "iota", "--fault", "iota-no-h")
    assert code == 1


def test_unknown_check_is_input_error(capsys):
    assert run(capsys, "verify", "O", "--checks", "dsq,nope")[0] == 2


@pytest.mark.parametrize("text", ["X(1,2,2,1)", "X(1,2,3)", "X(1,3,2,4) X(2,1,3,4)"])
def test_input_errors_exit_2(capsys, text):
    code, out, err = run(capsys, "compute", text)
    assert code == 2 and out == "" and err.startswith("bnsplit:")


def test_size_guard_exit_3(capsys, data_dir):
    path = str(data_dir / "figure8.pd")
    assert run(capsys, "compute", path, "--max-crossings", "3")[0] == 3
    assert run(capsys, "compute", path, "--max-crossings", "4")[0] == 0


@pytest.mark.parametrize(
    "text,expect",
    [("O @1", "q^-1 + q"), ("O O", "q^-2 + 2 + q^2"), ("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "-q^-9 + q^-5 + q^-3 + q^-1")],
)
def test_jones(capsys, text, expect):
    code, out, _ = run(capsys, "jones", text)
    assert code == 0 and out == expect + "\n"


def test_cube_dump(capsys):
    code, out, _ = run(capsys, "cube", "X+(1,1,2,2)")
    assert code == 0 and out == "0 2 0\n1 1 0\n0 0 merge\n"


def test_console_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "bnsplit.cli", "verify", str(data_dir / "kink.pd"), "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.count("PASS") == 7
