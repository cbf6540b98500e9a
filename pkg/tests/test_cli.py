import json

import pytest

from curveflow import cli, output

PASSING = """
n = 256
snapshot_count = 3
output_dir = "{out}"

[shape]
kind = "circle"
R = 1.0
"""

FAILING = """
n = 128
output_dir = "{out}"

[shape]
kind = "ellipse"
a = 2.0
b = 1.0

[stepper]
stencil_order = 4
t_max = 0.5
"""


def write_config(tmp_path, template, name="run.toml"):
    out = tmp_path / "out"
    path = tmp_path / name
    path.write_text(template.format(out=out), encoding="utf-8")
    return path, out


def test_run_passing_config(tmp_path, capsys):
    cfg, out = write_config(tmp_path, PASSING)
    code = cli.main(["run", "--config", str(cfg)])
    assert code == 0
    captured = capsys.readouterr().out
    assert "ALL CLAIMS PASS" in captured
    assert (out / "timeseries.csv").is_file()
    assert (out / "verdict.json").is_file()
    assert (out / "flow.svg").is_file()
    assert list(out.glob("snapshot_*.json"))
    doc = json.loads((out / "verdict.json").read_text())
    assert doc["all_passed"] is True


def test_run_failing_claims_still_writes_outputs(tmp_path, capsys):
    # a run truncated long before convergence cannot satisfy the terminal
    # claims; the report must be written and the exit code must be 1
    cfg, out = write_config(tmp_path, FAILING)
    code = cli.main(["run", "--config", str(cfg)])
    assert code == 1
    captured = capsys.readouterr().out
    assert "FAIL" in captured
    doc = json.loads((out / "verdict.json").read_text())
    assert doc["all_passed"] is False
    assert (out / "timeseries.csv").is_file()


def test_report_round_trip_matches_run(tmp_path, capsys):
    cfg, out = write_config(tmp_path, PASSING)
    assert cli.main(["run", "--config", str(cfg)]) == 0
    capsys.readouterr()
    code = cli.main(["report", "--timeseries", str(out / "timeseries.csv")])
    assert code == 0
    assert "ALL CLAIMS PASS" in capsys.readouterr().out


def test_report_with_tolerance_overrides(tmp_path, capsys):
    cfg, out = write_config(tmp_path, FAILING)
    assert cli.main(["run", "--config", str(cfg)]) == 1
    tol = tmp_path / "tol.toml"
    tol.write_text("[tolerances]\nterminal_kappa = 10.0\nterminal_lambda = 10.0\n"
                   "terminal_radii = 10.0\narea_conservation = 1e-3\n",
                   encoding="utf-8")
    capsys.readouterr()
    code = cli.main(["report", "--timeseries", str(out / "timeseries.csv"),
                     "--tolerances", str(tol)])
    assert code == 0


def test_missing_config_is_exit_2(tmp_path, capsys):
    assert cli.main(["run", "--config", str(tmp_path / "nope.toml")]) == 2
    assert "error:" in capsys.readouterr().err


def test_invalid_config_is_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.toml"
    path.write_text("n = 63\n[shape]\nkind = \"circle\"\nR = 1.0\n")
    assert cli.main(["run", "--config", str(path)]) == 2
    assert "even" in capsys.readouterr().err


def test_report_on_garbage_is_exit_2(tmp_path, capsys):
    path = tmp_path / "junk.csv"
    path.write_text("not,a,timeseries\n")
    assert cli.main(["report", "--timeseries", str(path)]) == 2


def test_help_documents_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    assert "run" in text and "report" in text


def test_run_help_documents_config_flag(capsys):
    with pytest.raises(SystemExit):
        cli.main(["run", "--help"])
    assert "--config" in capsys.readouterr().out


def test_snapshot_files_are_readable(tmp_path):
    cfg, out = write_config(tmp_path, PASSING)
    cli.main(["run", "--config", str(cfg)])
    for snap in sorted(out.glob("snapshot_*.json")):
        doc = output.read_snapshot(snap)
        assert len(doc["kappa"]) == 256
