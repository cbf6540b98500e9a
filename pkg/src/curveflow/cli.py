"""Command-line driver.

    curveflow run --config cfg.toml
        Run the flow, write timeseries.csv, snapshot_*.json, flow.svg and
        verdict.json into the configured output directory.  Exit 0 iff every
        monitored claim passes, 1 on any claim failure (outputs are still
        written), 2 on configuration or runtime errors.

    curveflow report --timeseries timeseries.csv [--tolerances tol.toml]
        Re-verify an exported time series offline; same exit-code contract.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import diagnostics, output
from .config import ConfigError, RunConfig, load_config_file
from .grid import make_theta_grid
from .reconstruction import reconstruct
from .shapes import ConvexityError, builtin_shape
from .solver import FlowError


def _print_report(report: diagnostics.VerdictReport, out=None) -> None:
    if out is None:
        out = sys.stdout
    for v in report.verdicts:
        status = "PASS" if v.passed else "FAIL"
        extra = ""
        if not v.passed:
            extra = f"  (worst margin {v.worst_margin:.3e} at t = {v.t_worst:.6g})"
        print(f"{status}  {v.claim_id}: {v.reference}{extra}", file=out)
    print(f"{'ALL CLAIMS PASS' if report.all_passed else 'CLAIM FAILURES PRESENT'}",
          file=out)


def cmd_run(config_path: str) -> int:
    cfg: RunConfig = load_config_file(config_path)
    grid = make_theta_grid(cfg.n)
    profile = builtin_shape(cfg.shape, grid)
    trajectory = diagnostics.simulate(profile, cfg.stepper,
                                      sample_interval=cfg.sample_interval,
                                      seed=cfg.seed)
    rows = diagnostics.trajectory_rows(trajectory)
    report = diagnostics.verify(rows, cfg.tolerances)

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    output.write_timeseries(rows, out_dir / "timeseries.csv")

    count = min(cfg.snapshot_count, len(trajectory.samples))
    if count == 1:
        picks = [0]
    else:
        picks = sorted({round(i * (len(trajectory.samples) - 1) / (count - 1))
                        for i in range(count)})
    svg_snapshots = []
    area0 = rows[0].area
    for idx in picks:
        state, _ = trajectory.samples[idx]
        poly = reconstruct(state.profile, state.anchor)
        output.write_snapshot(state, poly, out_dir / f"snapshot_{idx:04d}.json")
        svg_snapshots.append((state.t, poly.points))
    output.render_svg(svg_snapshots, out_dir / "flow.svg", area0=area0)
    output.write_report(report, out_dir / "verdict.json")

    print(f"stop reason: {trajectory.stop_reason}; "
          f"{len(rows)} samples; outputs in {out_dir}")
    _print_report(report)
    return 0 if report.all_passed else 1


def cmd_report(timeseries_path: str, tolerances_path: str | None) -> int:
    rows = output.read_timeseries(timeseries_path)
    overrides = None
    if tolerances_path:
        with open(tolerances_path, "rb") as fh:
            data = tomllib.load(fh)
        table = data.get("tolerances", data)
        overrides = {k: float(v) for k, v in table.items()}
    report = diagnostics.verify(rows, overrides)
    _print_report(report)
    return 0 if report.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curveflow",
        description="Simulate the non-local area-preserving curvature flow of "
                    "convex plane curves and verify its monitored claims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the flow from a TOML config")
    p_run.add_argument("--config", required=True, metavar="FILE",
                       help="TOML run configuration (see curveflow.config)")

    p_rep = sub.add_parser("report", help="re-verify an exported time series")
    p_rep.add_argument("--timeseries", required=True, metavar="FILE",
                       help="CSV written by 'curveflow run'")
    p_rep.add_argument("--tolerances", metavar="FILE", default=None,
                       help="optional TOML file of per-claim tolerance overrides")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args.config)
        return cmd_report(args.timeseries, args.tolerances)
    except (ConfigError, ConvexityError, FlowError, ValueError, OSError,
            tomllib.TOMLDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
