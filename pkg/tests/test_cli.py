import json
import subprocess
import sys
from pathlib import Path

import pytest

from osx.cli import GOLDEN, load_matroid, main, run, InputError

ROOT = Path(__file__).resolve().parent.parent
GOLDEN_DIR = ROOT / "tests" / "golden"
FIX = ROOT / "fixtures"


@pytest.mark.parametrize("fname,argv", GOLDEN, ids=[g[0] for g in GOLDEN])
def test_golden(fname, argv):
    text, code = run(argv)
    assert text == (GOLDEN_DIR / fname).read_text(encoding="utf-8")
    assert code in (0, 1)


@pytest.mark.parametrize("fname,argv", GOLDEN[:4], ids=[g[0] for g in GOLDEN[:4]])
def test_deterministic(fname, argv):
    assert run(argv) == run(argv)


def test_file_and_fixture_give_same_report():
    a, _ = run(["analyze", str(FIX / "cross.json")])
    b, _ = run(["analyze", "fixture:cross"])
    assert a == b


@pytest.mark.parametrize("argv,code", [
    (["check", "fixture:nine32", "--criterion", "lcl"], 0),
    (["check", "fixture:nine32", "--criterion", "pindep:3"], 0),
    (["check", "fixture:cross", "--criterion", "pindep:3"], 1),
    (["check", "fixture:cross", "--criterion", "quadratic"], 1),
    (["check", "fixture:k4", "--criterion", "quadratic"], 0),
    (["groebner-verify", "fixture:cross"], 0),
    (["zbasis", "fixture:nine32", "--degree", "3"], 0),
    (["presentation", "fixture:uniform(2,3)", "--verify-basis"], 0),
    (["casestudy", "cross"], 0),
])
def test_exit_codes(argv, code):
    assert run(argv)[1] == code


def test_analyze_report():
    text, code = run(["analyze", str(FIX / "nine32.json")])
    data = json.loads(text)
    assert code == 0 and data["hilbert"] == [1, 9, 27, 19]
    assert data["broken_circuits"]["2"] == 9


def test_text_format():
    text, _ = run(["check", "fixture:cross", "--criterion", "pindep:3", "--format", "text"])
    assert "witness: [[1, 3, 7], [2, 4, 5], [6], [8]]" in text
    assert "verdict: false" in text


def test_annihilator_default_degree():
    data = json.loads(run(["annihilator", "fixture:cross"])[0])
    assert data["degree"] == 5 and data["dim"] == 14


def test_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ground_set": 3,\n "circuits": [[1, 2,]]}')
    text, code = run(["analyze", str(bad)])
    assert code == 2 and f"{bad}:2:" in text
    bad.write_text('{"ground_set": 3, "circuits": [[1, 2]]}')
    text, code = run(["analyze", str(bad)])
    assert code == 2 and "field 'circuits'" in text
    text, code = run(["analyze", str(tmp_path / "missing.json")])
    assert code == 2 and "missing.json" in text
    assert run(["analyze", "fixture:nope"])[1] == 2
    assert run(["analyze", "fixture:nine32", "--max-n", "8"])[1] == 2
    assert run(["check", "fixture:cross", "--criterion", "bogus"])[1] == 2
    assert run(["check", "fixture:cross", "--criterion", "pindep:9"])[1] == 2
    assert run(["nosuchcommand"])[1] == 2


def test_validate_axioms_flag(tmp_path):
    bad = tmp_path / "elim.json"
    bad.write_text(json.dumps({"ground_set": 5, "circuits": [[1, 2, 3], [1, 2, 4]]}))
    assert run(["analyze", str(bad)])[1] == 0
    text, code = run(["analyze", str(bad), "--validate-axioms"])
    assert code == 2 and "circuit elimination" in text


def test_load_matroid():
    assert load_matroid("fixture:k4").n == 6
    with pytest.raises(InputError):
        load_matroid("fixture:cross", max_n=4)


def test_golden_command_writes_files(tmp_path):
    text, code = run(["golden", "--out", str(tmp_path)])
    assert code == 0
    for fname, _ in GOLDEN:
        assert (tmp_path / fname).read_text() == (GOLDEN_DIR / fname).read_text()


def test_main_streams(capsys):
    assert main(["casestudy", "cross"]) == 0
    assert '"passed": true' in capsys.readouterr().out
    assert main(["analyze", "fixture:nope"]) == 2
    assert "error:" in capsys.readouterr().err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "osx", "analyze", "fixture:uniform(2,3)"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["hilbert"] == [1, 3, 2]
