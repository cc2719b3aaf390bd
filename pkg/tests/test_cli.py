import subprocess
import sys

import pytest

from squarish.cli import parse_range, run
from squarish.graph import parse


def _run(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out.splitlines()


def test_trees(capsys):
    assert _run(capsys, "trees", "QUARTERED", "3") == (0, ["4"])


def test_census(capsys):
    code, lines = _run(capsys, "census", "holes", "--max-n", "2")
    assert code == 0
    assert [" ".join(l.split()[:3]) for l in lines] == ["H 1 2", "H 2 196"]
    assert lines[1].endswith("2^2*7^2")


def test_verify_formula(capsys):
    code, lines = _run(capsys, "verify", "formula", "EQ2_5", "--n", "2..8")
    assert code == 0 and len(lines) == 7
    assert all(l.startswith("FORMULA EQ2_5 ") and l.endswith("PASS") for l in lines)


def test_highdim(capsys):
    code, lines = _run(capsys, "highdim", "verify", "--d", "3", "--n", "2")
    assert code == 0 and lines[0].endswith("PASS")


def test_verify_cert_lines(capsys):
    code, lines = _run(capsys, "verify", "cert", "THM2_1", "--n", "2..3", "--mode", "charpoly")
    assert code == 0
    assert lines[0].startswith("CERT THM2_1 2 charpoly-product PASS")


def test_fail_sets_exit_code(capsys):
    code, lines = _run(capsys, "verify", "cert", "THM3_3", "--n", "2", "--mode", "explicit")
    assert code == 1 and "FAIL" in lines[0]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["trees", "NOPE", "2"])
    assert exc.value.code == 2
    assert run(["verify", "formula", "EQ9_9", "--n", "1"]) == 2


def test_build_roundtrip(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert run(["--out", str(out), "build", "AZTEC", "2"]) == 0
    g = parse(out.read_text())
    assert g.num_vertices == 12


def test_report_file(tmp_path, capsys):
    out = tmp_path / "r.txt"
    run(["--out", str(out), "verify", "formula", "EQ4_1", "--n", "1..2"])
    assert out.read_text().count("PASS") == 2


def test_range_syntax():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("5") == [5]


def test_deterministic_output():
    cmd = [sys.executable, "-m", "squarish", "symmetry", "AZTEC", "2", "h", "--oracle"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and a.startswith("16")
