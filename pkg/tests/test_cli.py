import json
from pathlib import Path

import pytest

from folsing.cli import chow_cross_check, main
from folsing.specfile import SpecError, parse_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_formulas_single_curve(capsys):
    code, out, _ = run(capsys, "formulas", "--n", 3, "--k", 2, "--ell", 1, "--d", 1, "--g", 0)
    assert code == 0
    res = json.loads(out)["results"]
    assert res["corollary_isolated"] == 3
    assert res["thmA"] == 6 and res["thmB"] == 9
    assert res["baum_bott_total"] == 15


def test_formulas_from_spec_file(capsys):
    path = SPECS / "line_n3_k2.yaml"
    code, out, _ = run(capsys, "formulas", "--input", path)
    assert code == 0
    assert json.loads(out)["results"]["theorem1_total"] == 3


def test_json_is_deterministic(capsys):
    args = ("analyze", "--input", SPECS / "line_n3_k2.yaml")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args, "--seed", 99)
    assert first == second
    report = json.loads(first)
    assert report["input_digest"].startswith("sha256:")
    assert set(report) == {"command", "input_digest", "results", "warnings"}


def test_analyze_line_example(capsys):
    code, out, _ = run(capsys, "analyze", "--input", SPECS / "line_n3_k3.yaml")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["special"] is True
    assert res["ell"] == 2
    assert res["sorted_orders"] == [3, 3, 2]


def test_count_line_example(capsys):
    code, out, _ = run(capsys, "count", "--input", SPECS / "line_n3_k2.yaml")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["sing_on_E_total"] == 6
    assert res["total_isolated_milnor"] == 3


def test_blowup_command(capsys):
    code, out, _ = run(capsys, "blowup", "--input", SPECS / "line_n3_k2.yaml", "--chart", 1)
    assert code == 0
    res = json.loads(out)["results"]
    assert res["exceptional_variable"] == "u1"
    assert res["divided_power"] == 1
    code, _, err = run(capsys, "blowup", "--input", SPECS / "line_n3_k2.yaml", "--chart", 3)
    assert code == 1 and "--chart" in err


def test_deform_command(capsys):
    code, out, _ = run(capsys, "deform", "--input", SPECS / "deform_n3.yaml")
    assert code == 0
    assert json.loads(out)["results"]["all_passed"] is True


def test_chow_verify_small_grid(capsys):
    code, out, _ = run(capsys, "chow-verify", "--n-range", "3:4", "--k-range", "1:3", "--d-range", "1:2")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["mismatches"] == 0
    assert res["points"] == 2 * 3 * 4 * 2 * 4


def test_text_output(capsys):
    code, out, _ = run(capsys, "formulas", "--n", 3, "--k", 1, "--output", "text")
    assert code == 0
    assert "baum_bott_total" in out and "{" not in out


def test_validation_errors_exit_one(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("dimension: 3\ndegree: 2\nvariables: [z1, z2, z3]\ncomponents:\n  - \"z1 +\"\n  - z2\n  - z3\n")
    code, _, err = run(capsys, "analyze", "--input", bad)
    assert code == 1 and "error" in err
    code, _, _ = run(capsys, "formulas", "--k", 2)
    assert code == 1
    code, _, _ = run(capsys, "chow-verify", "--n-range", "5:3")
    assert code == 1
    code, _, _ = run(capsys, "analyze", "--input", tmp_path / "missing.yaml")
    assert code == 1


def test_mismatch_exit_code(capsys, monkeypatch):
    import folsing.cli as cli

    monkeypatch.setattr(cli, "exceptional_count", lambda *a: -1)
    code, out, _ = run(capsys, "chow-verify", "--n-range", "3:3", "--k-range", "2:2")
    assert code == 2
    assert json.loads(out)["results"]["mismatches"] > 0


def test_spec_error_reports_line():
    text = "dimension: 3\ndegree: 2\nvariables: [z1, z2, z3]\ncomponents:\n  - z1\n  - z2\n  - \"z1 $ z2\"\n"
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert err.value.line == 7
    with pytest.raises(SpecError) as err:
        parse_spec("dimension: 3\ndimension: 4\n")
    assert err.value.line == 2


def test_default_grid_cross_check():
    res = chow_cross_check()
    assert res["points"] == 960
    assert res["mismatches"] == 0
