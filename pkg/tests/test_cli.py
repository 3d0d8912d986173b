import json
import math

import pytest

from neumann_bvp.cli import run


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_windows_table(capsys):
    code, out, _ = _capture(capsys, [
        "windows", "--k", "1", "--a", "0", "--b", "1",
        "--lambda", "0.5", "--n-max", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["windows"][0]["lo"] == pytest.approx(0.14331, rel=1e-4)
    assert payload["windows"][0]["hi"] == pytest.approx(4.0)
    assert payload["windows"][1]["lo"] == pytest.approx(0.029900, rel=1e-4)
    assert payload["windows"][1]["hi"] == pytest.approx(0.075408, rel=1e-4)
    assert payload["resonances"][0]["m"] == 1
    assert payload["resonances"][0]["eps_star"] == pytest.approx(0.101321, rel=1e-5)


def test_windows_invalid_lambda(capsys):
    code, _, err = _capture(capsys, [
        "windows", "--k", "1", "--a", "0", "--b", "1",
        "--lambda", "2.0", "--n-max", "1"])
    assert code == 2
    assert "InvalidLambda" in err
    assert err.count("\n") == 1  # single-line diagnostic


def test_solve_constant(capsys):
    code, out, _ = _capture(capsys, [
        "solve", "--f", "1", "--k", "2", "--a", "0", "--b", "1",
        "--eps", "0.4", "--lambda", "0.5", "--grid", "3"])
    assert code == 0
    payload = json.loads(out)
    assert [row["y"] for row in payload["data"]] == pytest.approx([0.5] * 3)
    assert payload["meta"]["form"] == "reduced"
    # meta echoes the full effective configuration
    for key in ("eps", "theta", "window_n", "gauss_order", "panels_per_period",
                "lambda", "backend", "f"):
        assert key in payload["meta"]


def test_solve_resonant_exit_3(capsys):
    code, _, err = _capture(capsys, [
        "solve", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--eps", "0.1013211836", "--lambda", "0.5", "--grid", "11"])
    assert code == 3
    assert "NearResonance" in err


def test_solve_example1_value(capsys):
    eps0 = (2.0 / math.pi) ** 2
    code, out, _ = _capture(capsys, [
        "solve", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--eps", repr(eps0), "--lambda", "0.5", "--grid", "11"])
    assert code == 0
    payload = json.loads(out)
    assert payload["data"][0]["t"] == 0.0
    assert payload["data"][0]["y"] == pytest.approx(1.94303, rel=1e-5)


def test_solve_budget_exit_4(capsys):
    code, _, err = _capture(capsys, [
        "solve", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--eps", repr((2.0 / (1001 * math.pi)) ** 2), "--lambda", "0.5",
        "--grid", "3", "--max-panels", "1000"])
    assert code == 4
    assert "Budget" in err


def test_solve_csv_format(capsys):
    code, out, _ = _capture(capsys, [
        "solve", "--f", "1", "--k", "2", "--a", "0", "--b", "1",
        "--eps", "0.4", "--grid", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,y,y1,y2,residual"
    assert len(lines) == 4
    assert float(lines[1].split(",")[1]) == pytest.approx(0.5)


def test_bound_constant(capsys):
    code, out, _ = _capture(capsys, [
        "bound", "--f", "1", "--k", "2", "--a", "0", "--b", "1",
        "--eps", "0.4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == 0.0
    assert payload["sup_error"] <= 1e-12
    assert payload["certified"] is True


def test_bound_exp(capsys):
    code, out, _ = _capture(capsys, [
        "bound", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--eps", "0.01"])
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == pytest.approx(1.0175, rel=6e-3)
    assert payload["certified"] is True
    assert "caveat" in payload


def test_rates_exp(capsys):
    code, out, _ = _capture(capsys, [
        "rates", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--n-from", "2", "--n-to", "14"])
    assert code == 0
    payload = json.loads(out)
    assert 0.4 <= payload["slope"] <= 0.6
    assert payload["expected_order"] == "half"
    assert payload["pass"] is True
    assert payload["r_squared"] >= 0.98
    assert len(payload["points"]) == 13


def test_rates_degenerate_exit_6(capsys):
    code, _, err = _capture(capsys, [
        "rates", "--f", "1", "--k", "1", "--a", "0", "--b", "1"])
    assert code == 6
    assert "DegenerateFit" in err


def test_resonance_sweep(capsys):
    code, out, _ = _capture(capsys, [
        "resonance", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--m", "1", "--deltas", "0.5,0.25,0.125,0.0625"])
    assert code == 0
    payload = json.loads(out)
    sups = [row["sup_abs_y"] for row in payload["data"]]
    assert all(b > a for a, b in zip(sups, sups[1:]))


def test_resonance_constant_flat(capsys):
    code, out, _ = _capture(capsys, [
        "resonance", "--f", "1", "--k", "2", "--a", "0", "--b", "1",
        "--m", "1", "--deltas", "0.5,0.25"])
    assert code == 0
    payload = json.loads(out)
    for row in payload["data"]:
        assert row["sup_abs_y"] == pytest.approx(0.5, abs=1e-10)


def test_resonance_delta_floor_exit_2(capsys):
    code, _, err = _capture(capsys, [
        "resonance", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
        "--m", "1", "--deltas", "0.5,1e-6"])
    assert code == 2


def test_deterministic_output(capsys):
    argv = ["solve", "--f", "exp(t)", "--k", "1", "--a", "0", "--b", "1",
            "--eps", repr((2.0 / math.pi) ** 2), "--grid", "21"]
    _, first, _ = _capture(capsys, argv)
    _, second, _ = _capture(capsys, argv)
    assert first == second


def test_out_file(tmp_path, capsys):
    target = tmp_path / "run.json"
    code, out, _ = _capture(capsys, [
        "windows", "--k", "1", "--a", "0", "--b", "1", "--n-max", "2",
        "--out", str(target)])
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert len(payload["windows"]) == 3
