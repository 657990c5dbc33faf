import json
import subprocess
import sys

import pytest

from qstirling.cli import EXIT_IO, EXIT_USAGE, EXIT_VERIFY, main

SINGLE = ["--medium", "single", "--lambda1", "1", "--lambda2", "2", "--th", "3", "--tc", "2"]
COUPLED = ["--medium", "coupled", "--lambda1", "2", "--lambda2", "1", "--j", "1", "--th", "3", "--tc", "2"]


def run_json(capsys, argv):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_cycle_json(capsys):
    report = run_json(capsys, ["cycle", *SINGLE, "--cost", "min-carnot"])
    assert f"{report['eta_carnot']:.6f}" == "0.333333"
    assert report["mode"] == "not-engine"
    assert report["cost_model"] == "min-carnot"


def test_cycle_coupled_engine(capsys):
    report = run_json(capsys, ["cycle", *COUPLED])
    assert report["mode"] == "engine"
    assert report["eta_regen_cost"] == pytest.approx(0.22463791315767522, rel=1e-11)


def test_cycle_kappa_flag(capsys):
    report = run_json(capsys, ["cycle", "--kappa", "2", "--lambda2", "2", "--th", "3", "--tc", "2"])
    assert report["lambda1"] == 4.0
    assert report["mode"] == "engine"


def test_cycle_csv(capsys):
    assert main(["cycle", *COUPLED, "--format", "csv"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header.split(",")[0] == "medium"
    assert row.split(",")[-2] == "engine"


def test_cycle_rejects_reversed_temperatures(capsys):
    assert main(["cycle", "--lambda1", "1", "--lambda2", "2", "--th", "2", "--tc", "3"]) == EXIT_USAGE
    assert "t_hot must exceed t_cold" in capsys.readouterr().err


def test_cycle_missing_flags(capsys):
    assert main(["cycle", "--lambda1", "1"]) == EXIT_USAGE
    assert "--lambda2" in capsys.readouterr().err


def test_bad_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["cycle", "--cost", "bogus"])
    assert exc.value.code == EXIT_USAGE


def test_sweep_to_file_with_plot(tmp_path, capsys):
    out = tmp_path / "coupling.csv"
    assert main(["sweep", "--medium", "coupled", "--knob", "j", "--lambda1", "2", "--lambda2", "1",
                 "--th", "3", "--tc", "2", "--steps", "11", "--out", str(out), "--plot"]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 12 and lines[0].startswith("j,")
    assert (tmp_path / "coupling.gp").read_text().count('using "j"') == 4
    assert (tmp_path / "coupling.png").read_bytes().startswith(b"\x89PNG")


def test_sweep_default_kappa_range_to_stdout(capsys):
    assert main(["sweep", "--knob", "kappa", "--lambda2", "2", "--th", "3", "--tc", "2", "--steps", "2"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[1].startswith("1.05,") and rows[2].startswith("8,")


def test_sweep_json(capsys):
    assert main(["sweep", *COUPLED[:8], "--th", "3", "--tc", "2", "--knob", "j",
                 "--start", "1", "--stop", "2", "--steps", "2", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 2


def test_sweep_requires_range_for_other_knobs(capsys):
    assert main(["sweep", "--knob", "lambda1", "--lambda2", "2", "--th", "3", "--tc", "2"]) == EXIT_USAGE


def test_sweep_plot_needs_out(capsys):
    assert main(["sweep", "--knob", "kappa", "--lambda2", "2", "--th", "3", "--tc", "2", "--plot"]) == EXIT_USAGE


def test_sweep_unwritable_path(tmp_path, capsys):
    out = tmp_path / "missing-dir" / "x.csv"
    assert main(["sweep", "--knob", "kappa", "--lambda2", "2", "--th", "3", "--tc", "2",
                 "--steps", "2", "--out", str(out)]) == EXIT_IO


def test_sweep_identical_runs_identical_bytes(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["sweep", "--knob", "kappa", "--lambda2", "2", "--th", "3", "--tc", "2",
                     "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_passes_and_is_deterministic(capsys):
    argv = ["verify", "--seed", "7", "--trials", "200", "--grid-steps", "21"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert "FAIL" not in first


def test_verify_injected_fault(capsys):
    code = main(["verify", "--trials", "50", "--grid-steps", "11", "--inject-fault", "deficit-sign"])
    out = capsys.readouterr().out
    assert code == EXIT_VERIFY
    assert "FAIL cycle.carnot-deficit-identity" in out
    assert "first at medium=" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qstirling", "cycle", *COUPLED],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["mode"] == "engine"
