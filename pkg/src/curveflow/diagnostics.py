"""Per-claim verdicts for the quantitative behavior of the flow.

Every monitored claim lives in a fixed registry; ``verify`` turns a sampled
monitor series into one PASS/FAIL verdict per claim.  A claim passes when
its margin stays >= -tolerance at every sample (monotonicity claims compare
consecutive samples).  Verdicts are computable both from a live trajectory
and from an exported time-series file: every checker consumes only the
quantities present in the CSV columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import geometry
from .reconstruction import reconstruct
from .shapes import closing_residual
from .solver import FlowState, StepperConfig, Trajectory, run


@dataclass(frozen=True)
class MonitorRow:
    """One sampled row of scalar monitors; mirrors the time-series CSV columns."""

    t: float
    length: float
    area: float
    lam: float
    deficit: float
    ratio: float
    kappa_min: float
    kappa_max: float
    kappa_star: float
    r_in: float
    r_out: float
    sobolev: float
    gage: float
    pan_yang: float
    bonnesen: float
    consistency_gap: float
    closing_residual: float


@dataclass(frozen=True)
class DiagnosticsRecord:
    """All monitors at one time, plus the margins of the pointwise bounds."""

    t: float
    summary: geometry.GeometricSummary
    residuals: geometry.InequalityResiduals
    lambda_bound_margin: float
    kmin_bound_margin: float
    kstar_margin: float
    consistency_gap: float
    closing_residual: float

    def to_row(self) -> MonitorRow:
        s = self.summary
        r = self.residuals
        return MonitorRow(
            t=self.t, length=s.length, area=s.area, lam=s.lam, deficit=s.deficit,
            ratio=s.ratio, kappa_min=s.kappa_min, kappa_max=s.kappa_max,
            kappa_star=s.kappa_star, r_in=s.r_in, r_out=s.r_out, sobolev=s.sobolev,
            gage=r.gage, pan_yang=r.pan_yang, bonnesen=r.bonnesen,
            consistency_gap=self.consistency_gap,
            closing_residual=self.closing_residual,
        )


def snapshot_metrics(state: FlowState, seed: int = 0, stencil_order: int = 2,
                     area0: Optional[float] = None,
                     kappa_min0: Optional[float] = None) -> DiagnosticsRecord:
    """Evaluate every monitor on one state, sharing a single reconstruction.

    area0/kappa_min0 reference the initial data for the bound margins; when
    omitted the state's own values are used (exact at t = 0).
    """
    profile = state.profile
    poly = reconstruct(profile, state.anchor)
    summary = geometry.summarize(profile, poly, seed=seed, stencil_order=stencil_order)
    residuals = geometry.inequality_residuals(
        profile, poly, area=summary.area, r_in=summary.r_in, r_out=summary.r_out)
    a0 = summary.area if area0 is None else area0
    kmin0 = summary.kappa_min if kappa_min0 is None else kappa_min0
    mu = math.pi / a0 + 1.0
    return DiagnosticsRecord(
        t=state.t,
        summary=summary,
        residuals=residuals,
        lambda_bound_margin=math.pi / a0 - summary.lam,
        kmin_bound_margin=summary.kappa_min - kmin0 * math.exp(-mu * state.t),
        kstar_margin=summary.length / summary.area - summary.kappa_star,
        consistency_gap=abs(state.l_ode - summary.length),
        closing_residual=closing_residual(profile),
    )


def simulate(initial, cfg: StepperConfig, sample_interval: float = 0.05,
             seed: int = 0) -> Trajectory:
    """Run the flow with the standard monitor attached to every sample."""
    ref: dict = {}

    def monitor(state: FlowState) -> DiagnosticsRecord:
        record = snapshot_metrics(state, seed=seed, stencil_order=cfg.stencil_order,
                                  area0=ref.get("area0"),
                                  kappa_min0=ref.get("kappa_min0"))
        ref.setdefault("area0", record.summary.area)
        ref.setdefault("kappa_min0", record.summary.kappa_min)
        return record

    return run(initial, cfg, sample_interval=sample_interval, monitor=monitor)


def trajectory_rows(trajectory: Trajectory) -> list[MonitorRow]:
    return [record.to_row() for _, record in trajectory.samples]


def decay_rate(series: Sequence[tuple[float, float]],
               floor_rel: float = 1e-14) -> Optional[float]:
    """Least-squares slope of ln(deficit) vs t over the last half of the series.

    Samples at or below the underflow floor (floor_rel * max deficit) are
    dropped; returns None (undefined, not failure) with fewer than 10
    positive samples.
    """
    t = np.array([p[0] for p in series])
    d = np.array([p[1] for p in series])
    if d.size == 0:
        return None
    floor = floor_rel * float(np.max(d))
    keep = d > max(floor, 0.0)
    t, d = t[keep], d[keep]
    if t.size < 10:
        return None
    half = t.size // 2
    t, d = t[half:], d[half:]
    slope = np.polyfit(t, np.log(d), 1)[0]
    return float(slope)


# --- claim registry ---------------------------------------------------------

#: Default tolerance table; overridable per claim id from the run config.
DEFAULT_TOLERANCES: dict[str, float] = {
    "area_conservation": 1e-6,
    "length_monotone": 1e-9,
    "lambda_monotone": 1e-9,
    "lambda_bound": 1e-6,
    "kappa_min_bound": 1e-3,
    "deficit_monotone": 1e-9,
    "deficit_rate": 1e-3,
    "gage_nonneg": 1e-8,
    "pan_yang_nonneg": 1e-8,
    "isoperimetric_nonneg": 1e-8,
    "bonnesen_nonneg": 1e-8,
    "kappa_star_bound": 0.0,
    "sobolev_bounded": 0.05,
    "terminal_kappa": 1e-4,
    "terminal_lambda": 1e-4,
    "terminal_radii": 1e-3,
    "closing_condition": 1e-8,
    # auxiliary knobs (not claim ids)
    "sobolev_burn_in": 0.1,
    "sobolev_floor": 1e-18,
    "deficit_floor": 1e-14,
}

_AUX_KEYS = {"sobolev_burn_in", "sobolev_floor", "deficit_floor"}


@dataclass(frozen=True)
class ClaimVerdict:
    claim_id: str
    reference: str
    passed: bool
    worst_margin: float
    t_worst: float
    tolerance: float


@dataclass(frozen=True)
class VerdictReport:
    verdicts: tuple[ClaimVerdict, ...]

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failed(self) -> list[ClaimVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def to_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "claims": [
                {
                    "claim_id": v.claim_id,
                    "reference": v.reference,
                    "passed": v.passed,
                    "worst_margin": v.worst_margin,
                    "t_worst": v.t_worst,
                    "tolerance": v.tolerance,
                }
                for v in self.verdicts
            ],
        }


@dataclass
class _Series:
    """Column view of a monitor series plus derived initial-data constants."""

    t: np.ndarray
    length: np.ndarray
    area: np.ndarray
    lam: np.ndarray
    deficit: np.ndarray
    kappa_min: np.ndarray
    kappa_max: np.ndarray
    kappa_star: np.ndarray
    r_in: np.ndarray
    r_out: np.ndarray
    sobolev: np.ndarray
    gage: np.ndarray
    pan_yang: np.ndarray
    bonnesen: np.ndarray
    closing: np.ndarray
    tol: dict[str, float] = field(default_factory=dict)

    @property
    def area0(self) -> float:
        return float(self.area[0])

    @property
    def length0(self) -> float:
        return float(self.length[0])


def _columns(rows: Sequence[MonitorRow], tol: dict[str, float]) -> _Series:
    def col(name):
        return np.array([getattr(r, name) for r in rows], dtype=float)

    return _Series(
        t=col("t"), length=col("length"), area=col("area"), lam=col("lam"),
        deficit=col("deficit"), kappa_min=col("kappa_min"), kappa_max=col("kappa_max"),
        kappa_star=col("kappa_star"), r_in=col("r_in"), r_out=col("r_out"),
        sobolev=col("sobolev"), gage=col("gage"), pan_yang=col("pan_yang"),
        bonnesen=col("bonnesen"), closing=col("closing_residual"), tol=tol,
    )


def _worst(margins: np.ndarray, times: np.ndarray, tolerance: float):
    if margins.size == 0:
        return True, math.inf, math.nan
    i = int(np.argmin(margins))
    worst = float(margins[i])
    return worst >= -tolerance, worst, float(times[i])


def _check_area(s: _Series):
    tol = s.tol["area_conservation"]
    return _worst(-np.abs(s.area / s.area0 - 1.0), s.t, tol) + (tol,)


def _check_length_monotone(s: _Series):
    tol = s.tol["length_monotone"] * s.length0
    return _worst(s.length[:-1] - s.length[1:], s.t[1:], tol) + (tol,)


def _check_lambda_monotone(s: _Series):
    tol = s.tol["lambda_monotone"] * (math.pi / s.area0)
    return _worst(s.lam[1:] - s.lam[:-1], s.t[1:], tol) + (tol,)


def _check_lambda_bound(s: _Series):
    cap = math.pi / s.area0
    tol = s.tol["lambda_bound"] * cap
    return _worst(cap - s.lam, s.t, tol) + (tol,)


def _check_kappa_min_bound(s: _Series):
    mu = math.pi / s.area0 + 1.0
    kmin0 = float(s.kappa_min[0])
    slack = s.tol["kappa_min_bound"]
    bound = kmin0 * np.exp(-mu * s.t) * (1.0 - slack)
    return _worst(s.kappa_min - bound, s.t, 0.0) + (0.0,)


def _check_deficit_monotone(s: _Series):
    tol = s.tol["deficit_monotone"]
    floor = s.tol["deficit_floor"] * float(np.max(s.deficit, initial=0.0))
    active = s.deficit[:-1] > floor
    scale = np.maximum(s.deficit[:-1], floor if floor > 0 else 1.0)
    margins = ((s.deficit[:-1] - s.deficit[1:]) / scale)[active]
    return _worst(margins, s.t[1:][active], tol) + (tol,)


def _check_deficit_rate(s: _Series):
    slack = s.tol["deficit_rate"]
    slope = decay_rate(list(zip(s.t, s.deficit)), floor_rel=s.tol["deficit_floor"])
    if slope is None:
        # Too little positive-deficit data to fit (e.g. a circle): vacuous pass.
        return True, math.inf, math.nan, 0.0
    bound = -math.pi / (s.area0 * s.length0) + slack
    return bound - slope >= 0.0, bound - slope, float(s.t[-1]), 0.0


def _residual_check(name: str, scale_of: Callable[[_Series], float]):
    def check(s: _Series):
        tol = s.tol[f"{name}_nonneg"] * scale_of(s)
        values = s.deficit if name == "isoperimetric" else getattr(s, name)
        return _worst(values, s.t, tol) + (tol,)

    return check


def _check_kappa_star(s: _Series):
    tol = s.tol["kappa_star_bound"]
    return _worst(s.length / s.area - s.kappa_star, s.t, tol) + (tol,)


def _check_sobolev(s: _Series):
    factor = s.tol["sobolev_bounded"]
    burn_in = s.tol["sobolev_burn_in"]
    floor = s.tol["sobolev_floor"]
    n = s.t.size
    burn = max(1, int(math.ceil(burn_in * n)))
    if burn >= n:
        return True, math.inf, math.nan, 0.0
    bound = max(float(np.max(s.sobolev[:burn])) * (1.0 + factor), floor)
    return _worst(bound - s.sobolev[burn:], s.t[burn:], 0.0) + (0.0,)


def _check_terminal_kappa(s: _Series):
    tol = s.tol["terminal_kappa"]
    target = math.sqrt(math.pi / s.area0)
    gap = max(abs(s.kappa_max[-1] - target), abs(s.kappa_min[-1] - target))
    return -gap >= -tol, -gap, float(s.t[-1]), tol


def _check_terminal_lambda(s: _Series):
    tol = s.tol["terminal_lambda"]
    gap = abs(s.lam[-1] - math.pi / s.area0)
    return -gap >= -tol, -gap, float(s.t[-1]), tol


def _check_terminal_radii(s: _Series):
    tol = s.tol["terminal_radii"]
    target = math.sqrt(s.area0 / math.pi)
    gap = max(abs(s.r_in[-1] - target), abs(s.r_out[-1] - target))
    return -gap >= -tol, -gap, float(s.t[-1]), tol


def _check_closing(s: _Series):
    tol = s.tol["closing_condition"]
    return _worst(-s.closing, s.t, tol) + (tol,)


#: (claim id, reference statement, checker) in fixed registry order.
CLAIM_REGISTRY: tuple[tuple[str, str, Callable], ...] = (
    ("area_conservation",
     "dA/dt = 0: the non-local speed kappa - lambda/kappa preserves the enclosed area",
     _check_area),
    ("length_monotone",
     "dL/dt <= 0, by the Gage and Pan-Yang inequalities",
     _check_length_monotone),
    ("lambda_monotone",
     "dlambda/dt >= 0 along the flow",
     _check_lambda_monotone),
    ("lambda_bound",
     "0 < lambda(t) <= pi/A(0)",
     _check_lambda_bound),
    ("kappa_min_bound",
     "kappa(theta, t) >= kappa_min(0) exp(-mu t), mu = pi/A(0) + 1",
     _check_kappa_min_bound),
    ("deficit_monotone",
     "the isoperimetric deficit L^2 - 4 pi A decreases along the flow",
     _check_deficit_monotone),
    ("deficit_rate",
     "L^2 - 4 pi A <= (L(0)^2 - 4 pi A(0)) exp(-pi t / (A L(0)))",
     _check_deficit_rate),
    ("gage_nonneg",
     "Gage inequality: integral of kappa^2 ds >= pi L / A",
     _residual_check("gage", lambda s: math.pi * s.length0 / s.area0)),
    ("pan_yang_nonneg",
     "Pan-Yang inequality: integral of ds/kappa >= (L^2 - 2 pi A) / pi",
     _residual_check("pan_yang", lambda s: s.length0**2 / math.pi)),
    ("isoperimetric_nonneg",
     "isoperimetric inequality: L^2 - 4 pi A >= 0",
     _residual_check("isoperimetric", lambda s: s.length0**2)),
    ("bonnesen_nonneg",
     "Bonnesen inequality: L^2 - 4 pi A >= pi^2 (r_out - r_in)^2",
     _residual_check("bonnesen", lambda s: s.length0**2)),
    ("kappa_star_bound",
     "median curvature kappa* < L/A for convex closed curves",
     _check_kappa_star),
    ("sobolev_bounded",
     "integral of (kappa')^2 dtheta stays uniformly bounded along the flow",
     _check_sobolev),
    ("terminal_kappa",
     "kappa(theta, t) -> sqrt(pi/A(0)) as t -> infinity",
     _check_terminal_kappa),
    ("terminal_lambda",
     "lambda(t) -> pi/A(0) as t -> infinity",
     _check_terminal_lambda),
    ("terminal_radii",
     "r_in, r_out -> sqrt(A(0)/pi), the limit circle radius",
     _check_terminal_radii),
    ("closing_condition",
     "the closing condition integral of e^{i theta}/kappa dtheta = 0 is preserved",
     _check_closing),
)

CLAIM_IDS: tuple[str, ...] = tuple(entry[0] for entry in CLAIM_REGISTRY)


def merge_tolerances(overrides: Optional[dict[str, float]] = None) -> dict[str, float]:
    tol = dict(DEFAULT_TOLERANCES)
    if overrides:
        unknown = set(overrides) - set(tol)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(overrides)
    return tol


def verify(rows: Sequence[MonitorRow],
           tolerances: Optional[dict[str, float]] = None) -> VerdictReport:
    """Evaluate every registered claim on a sampled monitor series."""
    if not rows:
        raise ValueError("cannot verify an empty monitor series")
    series = _columns(rows, merge_tolerances(tolerances))
    verdicts = []
    for claim_id, reference, checker in CLAIM_REGISTRY:
        passed, worst, t_worst, tol_used = checker(series)
        verdicts.append(ClaimVerdict(
            claim_id=claim_id, reference=reference, passed=bool(passed),
            worst_margin=worst, t_worst=t_worst, tolerance=tol_used,
        ))
    return VerdictReport(verdicts=tuple(verdicts))


__all__ = [
    "MonitorRow",
    "DiagnosticsRecord",
    "snapshot_metrics",
    "simulate",
    "trajectory_rows",
    "decay_rate",
    "ClaimVerdict",
    "VerdictReport",
    "CLAIM_REGISTRY",
    "CLAIM_IDS",
    "DEFAULT_TOLERANCES",
    "merge_tolerances",
    "verify",
]
