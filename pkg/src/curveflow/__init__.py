"""Simulator and verification harness for the non-local area-preserving
curvature flow of closed convex plane curves.

The state variable is the curvature kappa as a function of the tangent
angle theta on a uniform periodic grid.  Subpackages:

- grid: periodic grids, derivatives, quadrature
- shapes: initial data (circle, ellipse, Fourier support, raw samples)
- reconstruction: tangent-angle profile -> plane curve
- geometry: lengths, areas, radii, inequality residuals
- solver: RK4 time stepping of the curvature PDE + length ODE
- diagnostics: per-sample monitors and claim verification
- config / output / cli: TOML configs, CSV/JSON/SVG export, CLI driver
"""

from .config import ConfigError, RunConfig, load_config, load_config_file
from .diagnostics import (
    CLAIM_REGISTRY,
    DEFAULT_TOLERANCES,
    ClaimVerdict,
    DiagnosticsRecord,
    MonitorRow,
    VerdictReport,
    decay_rate,
    merge_tolerances,
    simulate,
    snapshot_metrics,
    trajectory_rows,
    verify,
)
from .geometry import (
    GeometricSummary,
    InequalityResiduals,
    chebyshev_center,
    enclosed_area,
    inequality_residuals,
    length,
    median_curvature,
    nonlocal_lambda,
    radii,
    smallest_enclosing_circle,
    sobolev_energy,
    spectral_area,
    summarize,
)
from .grid import ThetaGrid, make_theta_grid, periodic_derivative, periodic_trapezoid
from .reconstruction import Anchor, Polyline, advance_anchor, normal_speed, reconstruct
from .shapes import (
    Circle,
    ConvexityError,
    CurvatureProfile,
    Ellipse,
    FourierShape,
    RawProfile,
    SupportFunction,
    builtin_shape,
    closing_residual,
    closing_tolerance,
    fourier_support,
    project_closing,
    support_to_curvature,
    validate_initial,
)
from .solver import (
    FlowError,
    FlowState,
    StepperConfig,
    Trajectory,
    curvature_rhs,
    initial_state,
    length_rate,
    run,
    stable_dt,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # grid
    "ThetaGrid", "make_theta_grid", "periodic_derivative", "periodic_trapezoid",
    # shapes
    "Circle", "ConvexityError", "CurvatureProfile", "Ellipse", "FourierShape",
    "RawProfile", "SupportFunction", "builtin_shape", "closing_residual",
    "closing_tolerance", "fourier_support", "project_closing",
    "support_to_curvature", "validate_initial",
    # reconstruction
    "Anchor", "Polyline", "advance_anchor", "normal_speed", "reconstruct",
    # geometry
    "GeometricSummary", "InequalityResiduals", "chebyshev_center",
    "enclosed_area", "inequality_residuals", "length", "median_curvature",
    "nonlocal_lambda", "radii", "smallest_enclosing_circle", "sobolev_energy",
    "spectral_area", "summarize",
    # solver
    "FlowError", "FlowState", "StepperConfig", "Trajectory", "curvature_rhs",
    "initial_state", "length_rate", "run", "stable_dt", "step",
    # diagnostics
    "CLAIM_REGISTRY", "DEFAULT_TOLERANCES", "ClaimVerdict", "DiagnosticsRecord",
    "MonitorRow", "VerdictReport", "decay_rate", "merge_tolerances", "simulate",
    "snapshot_metrics", "trajectory_rows", "verify",
    # config
    "ConfigError", "RunConfig", "load_config", "load_config_file",
]
