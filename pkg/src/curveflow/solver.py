"""Time integration of the curvature PDE and the co-evolving length ODE.

The evolving state is kappa(theta, t) together with the length L(t)
integrated from its own ODE

    dL/dt = -closed-integral(kappa dtheta) + lam(t) * L,

which must agree with the length computed from kappa up to discretization
error; the gap is one of the runtime monitors.  The scheme is classical
explicit RK4 under a parabolic step cap for the diffusion coefficient
kappa^2 + lam, with lam recomputed from the stage values of kappa so the
area-preserving structure survives to the scheme's order.

All discretization choices (stencils, RK4, step cap, projection cadence)
are artifact decisions; the underlying evolution problem is continuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels, geometry
from .grid import periodic_derivative, periodic_trapezoid
from .reconstruction import Anchor
from .shapes import CurvatureProfile, validate_initial


class FlowError(RuntimeError):
    """Fatal integration failure; carries the last recorded good state."""

    def __init__(self, message: str, last_state: Optional["FlowState"] = None):
        super().__init__(message)
        self.last_state = last_state


@dataclass(frozen=True)
class FlowState:
    """One frame of the trajectory: curvature, co-integrated length, anchor."""

    t: float
    profile: CurvatureProfile
    l_ode: float
    anchor: Anchor = Anchor()
    step_count: int = 0


@dataclass(frozen=True)
class StepperConfig:
    cfl: float = 0.5
    stencil_order: int = 2
    projection_period: int = 100
    t_max: float = 60.0
    stop_uniformity: float = 1e-10
    stop_deficit: float = 1e-12
    dt: float = 0.0  # 0 = automatic parabolic cap; > 0 = fixed step
    max_steps: int = 0  # 0 = unlimited

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must be in (0, 1], got {self.cfl}")
        if self.stencil_order not in (2, 4):
            raise ValueError(f"stencil_order must be 2 or 4, got {self.stencil_order}")
        if self.projection_period < 1:
            raise ValueError(f"projection_period must be >= 1, got {self.projection_period}")
        if self.t_max <= 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.dt < 0 or self.max_steps < 0 or self.stop_uniformity < 0 or self.stop_deficit < 0:
            raise ValueError("dt, max_steps, stop_uniformity and stop_deficit must be >= 0")


@dataclass(frozen=True)
class Trajectory:
    """Sampled flow states (plus optional monitor records) and the stop cause."""

    samples: list
    stop_reason: str


def derivative(values: np.ndarray, order: int, stencil_order: int = 2) -> np.ndarray:
    """Periodic central difference; see grid.periodic_derivative."""
    return periodic_derivative(values, order=order, stencil_order=stencil_order)


def curvature_rhs(profile: CurvatureProfile, stencil_order: int = 2) -> np.ndarray:
    """Right-hand side of the curvature evolution equation.

    (kappa^2 + lam) kappa_tt - (2 lam / kappa) kappa_t^2 + kappa^3 - lam kappa
    with lam recomputed from the same samples.  Pure-numpy reference; the
    compiled stepping kernel evaluates the identical expression.
    """
    kappa = profile.kappa
    lam = geometry.nonlocal_lambda(profile)
    kt = periodic_derivative(kappa, order=1, stencil_order=stencil_order)
    ktt = periodic_derivative(kappa, order=2, stencil_order=stencil_order)
    return (kappa**2 + lam) * ktt - (2.0 * lam / kappa) * kt**2 + kappa**3 - lam * kappa


def length_rate(profile: CurvatureProfile, l_ode: float) -> float:
    """dL/dt = -closed-integral(kappa dtheta) + lam * L."""
    lam = geometry.nonlocal_lambda(profile)
    return -periodic_trapezoid(profile.kappa) + lam * l_ode


def stable_dt(profile: CurvatureProfile, cfg: StepperConfig) -> float:
    """Parabolic step cap cfl * dtheta^2 / (2 * max(kappa^2 + lam))."""
    lam = geometry.nonlocal_lambda(profile)
    peak = float(np.max(profile.kappa**2)) + lam
    return cfg.cfl * profile.grid.dtheta**2 / (2.0 * peak)


def _advance(state: FlowState, cfg: StepperConfig, t_target: float,
             max_steps: int) -> tuple[FlowState, int]:
    """Run the compiled kernel; returns the new state and the kernel status."""
    grid = state.profile.grid
    kappa = state.profile.kappa.copy()
    scalars = np.array([state.t, state.l_ode, state.anchor.c1, state.anchor.c2,
                        float(state.step_count), -1.0])
    status = _kernels.advance(
        kappa, scalars, np.cos(grid.theta), np.sin(grid.theta), grid.dtheta,
        cfg.cfl, cfg.dt, cfg.stencil_order, cfg.projection_period,
        t_target, max_steps,
    )
    if status == _kernels.STATUS_POSITIVITY:
        raise FlowError(
            f"curvature positivity lost at t = {scalars[0]:.9g}, node {int(scalars[5])}",
            last_state=state,
        )
    if status == _kernels.STATUS_NONFINITE:
        raise FlowError(
            f"non-finite curvature at t = {scalars[0]:.9g}, node {int(scalars[5])}",
            last_state=state,
        )
    if status == _kernels.STATUS_PROJECTION:
        raise FlowError(
            f"closing projection breaks convexity at t = {scalars[0]:.9g}, "
            f"node {int(scalars[5])}",
            last_state=state,
        )
    new_state = FlowState(
        t=float(scalars[0]),
        profile=CurvatureProfile(grid=grid, kappa=kappa),
        l_ode=float(scalars[1]),
        anchor=Anchor(float(scalars[2]), float(scalars[3])),
        step_count=int(scalars[4]),
    )
    return new_state, status


def step(state: FlowState, cfg: StepperConfig) -> FlowState:
    """One RK4 step of size stable_dt (or the configured fixed dt)."""
    new_state, _ = _advance(state, cfg, t_target=math.inf, max_steps=1)
    return new_state


def initial_state(profile: CurvatureProfile) -> FlowState:
    """FlowState at t = 0 with L seeded from the profile and anchor at the origin."""
    validate_initial(profile)
    return FlowState(t=0.0, profile=profile, l_ode=geometry.length(profile),
                     anchor=Anchor(), step_count=0)


def run(initial: CurvatureProfile, cfg: StepperConfig,
        sample_interval: float = 0.05,
        monitor: Optional[Callable[[FlowState], object]] = None) -> Trajectory:
    """Integrate until t_max, a stop criterion, or the step budget.

    Samples (and the optional monitor record) are taken every
    sample_interval time units; stop criteria are evaluated at sample
    times.  Stop reasons: "uniformity" (kappa_max/kappa_min - 1 below
    threshold), "deficit" (isoperimetric deficit below threshold), "t_max",
    "max_steps".
    """
    if sample_interval <= 0:
        raise ValueError(f"sample_interval must be positive, got {sample_interval}")
    state = initial_state(initial)
    budget = cfg.max_steps if cfg.max_steps > 0 else (1 << 62)

    samples = []
    stop_reason = None
    k = 0
    while True:
        samples.append((state, monitor(state) if monitor is not None else None))

        kappa = state.profile.kappa
        uniformity = float(np.max(kappa) / np.min(kappa)) - 1.0
        if uniformity < cfg.stop_uniformity:
            stop_reason = "uniformity"
            break
        if cfg.stop_deficit > 0.0:
            big_l = geometry.length(state.profile)
            deficit = big_l**2 - 4.0 * np.pi * geometry.spectral_area(state.profile)
            if deficit < cfg.stop_deficit:
                stop_reason = "deficit"
                break
        if state.t >= cfg.t_max:
            stop_reason = "t_max"
            break
        if state.step_count >= budget:
            stop_reason = "max_steps"
            break

        k += 1
        t_target = min(k * sample_interval, cfg.t_max)
        state, status = _advance(state, cfg, t_target=t_target,
                                 max_steps=budget - state.step_count)
        if status == _kernels.STATUS_MAX_STEPS and state.t < t_target:
            # Budget exhausted mid-interval; record the final state and stop.
            samples.append((state, monitor(state) if monitor is not None else None))
            stop_reason = "max_steps"
            break

    return Trajectory(samples=samples, stop_reason=stop_reason)


__all__ = [
    "FlowError",
    "FlowState",
    "StepperConfig",
    "Trajectory",
    "derivative",
    "curvature_rhs",
    "length_rate",
    "stable_dt",
    "step",
    "initial_state",
    "run",
]
