import dataclasses
import json

import numpy as np
import pytest

import curveflow as cf
from curveflow import diagnostics as dg
from curveflow import output


def sample_rows():
    rows = []
    rng = np.random.default_rng(42)
    for i in range(5):
        vals = rng.uniform(-1, 1, size=17)
        vals[0] = 0.05 * i
        rows.append(dg.MonitorRow(*vals))
    return rows


def test_csv_header_spelled_out():
    assert output.CSV_HEADER == (
        "t,L,A,lambda,deficit,ratio,kappa_min,kappa_max,kappa_star,"
        "r_in,r_out,sobolev,gage,pan_yang,bonnesen,consistency_gap,"
        "closing_residual")


def test_timeseries_round_trip_is_bit_exact(tmp_path):
    rows = sample_rows()
    path = tmp_path / "ts.csv"
    output.write_timeseries(rows, path)
    back = output.read_timeseries(path)
    assert back == rows  # dataclass equality compares every float exactly


def test_timeseries_round_trip_awkward_floats(tmp_path):
    row = dg.MonitorRow(*( [0.1 + 0.2] + [1e-308, -0.0, 3.141592653589793,
                          1.7976931348623157e308] + [1/3] * 12))
    path = tmp_path / "ts.csv"
    output.write_timeseries([row], path)
    assert output.read_timeseries(path) == [row]


def test_empty_timeseries_rejected(tmp_path):
    with pytest.raises(ValueError, match="nothing to write"):
        output.write_timeseries([], tmp_path / "ts.csv")


def test_header_mismatch_rejected(tmp_path):
    path = tmp_path / "ts.csv"
    path.write_text("t,L\n0,1\n", encoding="utf-8")
    with pytest.raises(ValueError, match="header"):
        output.read_timeseries(path)


def test_column_count_error_names_line(tmp_path):
    path = tmp_path / "ts.csv"
    path.write_text(output.CSV_HEADER + "\n1,2,3\n", encoding="utf-8")
    with pytest.raises(ValueError, match=":2:"):
        output.read_timeseries(path)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        output.read_timeseries(tmp_path / "absent.csv")


def test_lf_line_endings(tmp_path):
    path = tmp_path / "ts.csv"
    output.write_timeseries(sample_rows(), path)
    data = path.read_bytes()
    assert b"\r" not in data
    assert data.endswith(b"\n")


def test_snapshot_round_trip(tmp_path):
    grid = cf.make_theta_grid(64)
    profile = cf.builtin_shape(cf.Circle(1.0), grid)
    state = cf.FlowState(t=0.25, profile=profile, l_ode=2 * np.pi,
                         anchor=cf.Anchor(0.5, -0.5))
    poly = cf.reconstruct(profile, state.anchor)
    path = tmp_path / "snap.json"
    output.write_snapshot(state, poly, path)
    doc = output.read_snapshot(path)
    assert doc["t"] == 0.25
    assert doc["anchor"] == [0.5, -0.5]
    assert np.array_equal(doc["kappa"], profile.kappa)
    assert np.array_equal(doc["x"], poly.points[:, 0])
    assert np.array_equal(doc["y"], poly.points[:, 1])


def test_snapshot_missing_key_rejected(tmp_path):
    path = tmp_path / "snap.json"
    path.write_text('{"t": 0.0}', encoding="utf-8")
    with pytest.raises(ValueError, match="kappa"):
        output.read_snapshot(path)


def test_report_json(tmp_path):
    report = dg.verify([dataclasses.replace(r, t=i * 0.05)
                        for i, r in enumerate(sample_rows()[:1] * 3)])
    path = tmp_path / "verdict.json"
    output.write_report(report, path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert set(doc) == {"all_passed", "claims"}
    assert len(doc["claims"]) == len(dg.CLAIM_REGISTRY)


def test_render_svg(tmp_path):
    grid = cf.make_theta_grid(64)
    profile = cf.builtin_shape(cf.Circle(1.0), grid)
    poly = cf.reconstruct(profile)
    path = tmp_path / "flow.svg"
    snapshots = [(0.0, poly.points), (1.0, poly.points * 0.9)]
    output.render_svg(snapshots, path, area0=np.pi)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("<svg")
    # one path per snapshot plus the limit circle
    assert text.count("<path") == 3
    assert "limit circle" in text


def test_render_svg_empty_rejected(tmp_path):
    with pytest.raises(ValueError, match="nothing to render"):
        output.render_svg([], tmp_path / "flow.svg", area0=np.pi)
