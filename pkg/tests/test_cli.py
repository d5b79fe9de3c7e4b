import json
import subprocess
import sys

import pytest

from ellblocks.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_defects_example(capsys):
    code, out, _ = call(capsys, "defects", "--n", "3", "--ell", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["defects"] == {"3": 2, "2,1": 1, "1,1,1": 2}


def test_verify_nakayama(capsys):
    code, out, _ = call(capsys, "verify", "nakayama", "--n", "3", "--ell", "2")
    assert code == 0 and json.loads(out)["pass"] is True


@pytest.mark.parametrize("argv", [
    ["blocks", "--n", "0", "--ell", "2"],
    ["blocks", "--n", "3", "--ell", "1"],
    ["blocks", "--ell", "2"],
    ["wreath-table", "--ell", "1", "--w", "1"],
    ["verify", "isometry", "--n", "4", "--ell", "2", "--core", "2"],
    ["verify", "mckay", "--ell", "3", "--w", "3", "--r", "0"],
    ["sweep", "--only", "bogus"],
    ["sn-table", "--n", "-1"],
    ["no-such-command"],
])
def test_invalid_input_exits_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert err and "Traceback" not in err


def test_theorem_failure_exits_1(capsys):
    code, out, _ = call(capsys, "verify", "per-defect", "--ell", "4", "--w", "2", "--r", "0")
    assert code == 1
    rep = json.loads(out)
    assert rep["pass"] is False and rep["witnesses"][0]["defect"] == 4


def test_sn_table_json_and_csv(capsys):
    code, out, _ = call(capsys, "sn-table", "--n", "3")
    assert code == 0
    t = json.loads(out)
    assert t["characters"] == ["3", "2,1", "1,1,1"]
    assert t["values"][1] == ["-1", "0", "2"]
    code, out, _ = call(capsys, "sn-table", "--n", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("character,")


def test_wreath_table_values_are_cyclotomic_coordinates(capsys):
    code, out, _ = call(capsys, "wreath-table", "--ell", "3", "--w", "1")
    assert code == 0
    t = json.loads(out)
    assert t["conductor"] == 3 and t["order"] == 3
    # zeta_3^2 = -1 - zeta_3
    assert t["values"][1][2] == {"conductor": 3, "coeffs": [-1, -1]}


def test_holomorph_command(capsys):
    code, out, _ = call(capsys, "holomorph", "--ell", "4")
    assert code == 0
    h = json.loads(out)
    assert h["order"] == 8 and len(h["blocks"][0]) == 4


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["blocks", "--n", "6", "--ell", "3", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["contributions"][0][0].count("/") == 1


def test_table_cap(monkeypatch, capsys):
    monkeypatch.setenv("ELLBLOCKS_MAX_CELLS", "4")
    code, _, err = call(capsys, "sn-table", "--n", "5")
    assert code == 2 and "ELLBLOCKS_MAX_CELLS" in err


def test_sweep_parallel_matches_serial(capsys):
    argv = ["sweep", "--only", "nakayama,holomorph,congruence", "--nmax", "6",
            "--hol-max", "5", "--wreath-bound", "60"]
    code1, out1, _ = call(capsys, *argv)
    code2, out2, _ = call(capsys, *argv, "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    summary = json.loads(out1)["summary"]
    assert summary["holomorph"] == {"passed": 4, "failed": 0, "skipped": 0}


def test_sweep_reports_skips(monkeypatch, capsys):
    monkeypatch.setenv("ELLBLOCKS_MAX_CELLS", "100")
    code, out, _ = call(capsys, "sweep", "--only", "wreath-defect", "--wreath-bound", "50")
    assert code == 0
    assert json.loads(out)["summary"]["wreath-defect"]["skipped"] > 0


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellblocks.cli", "verify", "hook-defect",
                           "--n", "5", "--ell", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pass"] is True
