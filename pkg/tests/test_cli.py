import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from gradmult.cli import main, render, run

DATA = Path(__file__).parent / "data"
WS = str(DATA / "plane.json")


def call(*argv):
    payload, code, _, _ = run(list(argv) + ["-w", WS])
    return json.loads(render(payload)), code


def test_colength():
    out, code = call("colength", "--ideal", "I")
    assert code == 0 and out["result"]["colength"] == 6


def test_mixed_table_is_exact_strings_or_ints():
    out, code = call("mixed", "--ideals", "M,I")
    assert code == 0
    assert out["result"]["table"]["entries"] == {"0,2": "6", "1,1": "2", "2,0": "1"}


def test_family_value_is_rational_string():
    out, code = call("family-value", "--families", "S2", "--point", "1")
    assert code == 0 and out["result"]["estimate"]["value"] == "1/8"


@pytest.mark.parametrize(
    "argv",
    [
        ["colength", "--ideal", "nope"],
        ["colength", "--ideal", "X"],
        ["mixed"],
        ["family-value", "--families", "S2", "--point", "1,2"],
        ["check", "minkowski", "--families", "PM"],
    ],
)
def test_usage_errors_exit_two(argv):
    out, code = call(*argv)
    assert code == 2 and "error" in out


def test_unknown_command():
    payload, code, _, _ = run(["frobnicate"])
    assert code == 2


def test_failure_exit_one():
    out, code = call("check", "nilradical", "--module", "Q")
    assert code == 1 and out["verdict"] == "fail"


def test_sequence_mode_is_evidence_and_strict():
    argv = ["vol-mult", "--families", "IC", "--type", "2", "--p", "1,2,3", "--strategy", "sequence"]
    out, code = call(*argv)
    assert out["verdict"] == "evidence-only" and code == 0
    payload, code, _, _ = run(argv + ["-w", WS, "--strict"])
    assert code == 1


def test_cap_exit_three(monkeypatch):
    import gradmult.cli as cli
    from gradmult.polyfit import FitError

    def boom(ws, args):
        raise FitError("not yet polynomial at cap 64", [{"offset": [64]}, {"offset": [65]}])

    monkeypatch.setitem(cli.HANDLERS, "mixed", boom)
    payload, code, _, _ = run(["mixed", "--ideals", "M,I", "-w", WS])
    assert code == 3 and "cap exceeded" in payload["error"]
    assert len(payload["fits"]) == 2


def test_csv_output(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code = main(["mixed", "--ideals", "M,I", "-w", WS, "--csv", str(target)])
    assert code == 0
    rows = list(csv.reader(target.open()))
    assert len(rows) >= 4
    assert json.loads(capsys.readouterr().out)["command"] == "mixed"


def test_report_suite_deterministic(capsys):
    outs = []
    for _ in range(2):
        code = main(["report", "--suite", str(DATA / "suite.json"), "-w", WS])
        assert code == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["verdict"] == "pass" and all(r["exit"] == 0 for r in doc["results"])


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "gradmult.cli", "colength", "--ideal", "I", "-w", WS],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["colength"] == 6


def test_no_floats_outside_approx():
    out, _ = call("family-mixed", "--families", "IC", "--strategy", "sequence")

    def walk(node, path):
        if isinstance(node, float):
            assert "approx" in path, path
        elif isinstance(node, dict):
            for k, v in node.items():
                walk(v, path + [k])
        elif isinstance(node, list):
            for v in node:
                walk(v, path)

    walk(out, [])
