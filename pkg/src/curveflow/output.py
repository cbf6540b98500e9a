"""Bit-stable export of time series, snapshots, pictures, and verdicts.

Scalars are printed with 17 significant digits, which round-trips IEEE
doubles exactly, so re-reading an exported file reproduces the run's values
bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import fields as dataclass_fields
from typing import Sequence

import numpy as np

from .diagnostics import MonitorRow, VerdictReport
from .reconstruction import Polyline
from .solver import FlowState

#: CSV column order; "lambda" maps to MonitorRow.lam, "L"/"A" to length/area.
CSV_HEADER = ("t,L,A,lambda,deficit,ratio,kappa_min,kappa_max,kappa_star,"
              "r_in,r_out,sobolev,gage,pan_yang,bonnesen,consistency_gap,"
              "closing_residual")

_CSV_FIELDS = ("t", "length", "area", "lam", "deficit", "ratio", "kappa_min",
               "kappa_max", "kappa_star", "r_in", "r_out", "sobolev", "gage",
               "pan_yang", "bonnesen", "consistency_gap", "closing_residual")

assert _CSV_FIELDS == tuple(f.name for f in dataclass_fields(MonitorRow))


def _fmt(value: float) -> str:
    return "%.17g" % value


def write_timeseries(rows: Sequence[MonitorRow], path) -> None:
    """Write the monitor series as CSV with LF line endings."""
    if not rows:
        raise ValueError(f"nothing to write: empty time series for {path}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(",".join(_fmt(getattr(row, name)) for name in _CSV_FIELDS) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write time series {path}: {exc}") from exc


def read_timeseries(path) -> list[MonitorRow]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        raise OSError(f"failed to read time series {path}: {exc}") from exc
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing or unexpected CSV header")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(_CSV_FIELDS):
            raise ValueError(f"{path}:{lineno}: expected {len(_CSV_FIELDS)} columns, "
                             f"got {len(parts)}")
        rows.append(MonitorRow(**{name: float(v) for name, v in zip(_CSV_FIELDS, parts)}))
    return rows


def write_snapshot(state: FlowState, poly: Polyline, path) -> None:
    """One JSON document per snapshot: {t, kappa, x, y, anchor}, grid order."""
    doc = {
        "t": state.t,
        "kappa": state.profile.kappa.tolist(),
        "x": poly.points[:, 0].tolist(),
        "y": poly.points[:, 1].tolist(),
        "anchor": [state.anchor.c1, state.anchor.c2],
    }
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed to write snapshot {path}: {exc}") from exc


def read_snapshot(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise OSError(f"failed to read snapshot {path}: {exc}") from exc
    for key in ("t", "kappa", "x", "y", "anchor"):
        if key not in doc:
            raise ValueError(f"{path}: snapshot missing key '{key}'")
    return doc


def write_report(report: VerdictReport, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed to write report {path}: {exc}") from exc


def render_svg(snapshots: Sequence[tuple[float, np.ndarray]], path,
               area0: float) -> None:
    """Overlay the curve at each snapshot plus the limit circle.

    The limit circle has radius sqrt(area0/pi) and is centered at the final
    curve's centroid.  Fixed 1000 x 1000 viewport with equal-aspect scaling.
    """
    if not snapshots:
        raise ValueError(f"nothing to render: no snapshots for {path}")
    radius = float(np.sqrt(area0 / np.pi))
    center = np.mean(snapshots[-1][1], axis=0)

    xs = np.concatenate([pts[:, 0] for _, pts in snapshots]
                        + [center[0] + np.array([-radius, radius])])
    ys = np.concatenate([pts[:, 1] for _, pts in snapshots]
                        + [center[1] + np.array([-radius, radius])])
    span = max(xs.max() - xs.min(), ys.max() - ys.min())
    pad = 0.05 * span
    scale = 1000.0 / (span + 2 * pad)
    x0 = 0.5 * (xs.min() + xs.max()) - 0.5 * (span + 2 * pad)
    y0 = 0.5 * (ys.min() + ys.max()) + 0.5 * (span + 2 * pad)

    def to_view(pts):
        vx = (pts[:, 0] - x0) * scale
        vy = (y0 - pts[:, 1]) * scale  # SVG y axis points down
        return vx, vy

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" '
        'viewBox="0 0 1000 1000">',
        '<rect width="1000" height="1000" fill="white"/>',
    ]
    count = len(snapshots)
    for i, (t, pts) in enumerate(snapshots):
        vx, vy = to_view(pts)
        d = "M " + " L ".join(f"{x:.3f} {y:.3f}" for x, y in zip(vx, vy)) + " Z"
        shade = int(200 * (1.0 - (i + 1) / count))
        parts.append(f'<path d="{d}" fill="none" '
                     f'stroke="rgb({shade},{shade},255)" stroke-width="1.5">'
                     f'<title>t = {t:.6g}</title></path>')
    # Limit circle as a path (two arcs) so every curve in the file is a path.
    cx = (center[0] - x0) * scale
    cy = (y0 - center[1]) * scale
    r = radius * scale
    parts.append(
        f'<path d="M {cx - r:.3f} {cy:.3f} '
        f'A {r:.3f} {r:.3f} 0 1 0 {cx + r:.3f} {cy:.3f} '
        f'A {r:.3f} {r:.3f} 0 1 0 {cx - r:.3f} {cy:.3f} Z" '
        'fill="none" stroke="red" stroke-width="1.5" stroke-dasharray="6 4">'
        '<title>limit circle</title></path>')
    parts.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write SVG {path}: {exc}") from exc


__all__ = [
    "CSV_HEADER",
    "write_timeseries",
    "read_timeseries",
    "write_snapshot",
    "read_snapshot",
    "write_report",
    "render_svg",
]
