"""Rebuild the plane curve from curvature and track the translation anchor.

The curve point with tangent angle theta is

    x(theta) = c1 + integral_0^theta cos(phi)/kappa(phi) dphi,
    y(theta) = c2 + integral_0^theta sin(phi)/kappa(phi) dphi,

with tangent T = (cos theta, sin theta), traversed counterclockwise.  The
anchor (c1, c2) accumulates the translation induced by the tangential
reparametrization that keeps theta independent of time.

Cumulative integrals use the trapezoid prefix rule, so the full-circle sum
equals the periodic trapezoid integral exactly and the closure gap of the
polyline mirrors the closing residual of the profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import periodic_derivative
from .shapes import CurvatureProfile


@dataclass(frozen=True)
class Anchor:
    """Translation (c1, c2) of the reconstructed curve; (0, 0) at t = 0."""

    c1: float = 0.0
    c2: float = 0.0

    def shifted(self, dc1: float, dc2: float) -> "Anchor":
        return Anchor(self.c1 + dc1, self.c2 + dc2)


@dataclass(frozen=True)
class Polyline:
    """Closed counterclockwise polyline of n reconstructed curve points."""

    points: np.ndarray = field(repr=False)  # shape (n, 2)
    closure_error: float = 0.0


def reconstruct(profile: CurvatureProfile, anchor: Anchor = Anchor()) -> Polyline:
    """Integrate the tangent field cos/sin(theta)/kappa into curve points."""
    theta = profile.grid.theta
    dtheta = profile.grid.dtheta
    rho = 1.0 / profile.kappa
    fx = np.cos(theta) * rho
    fy = np.sin(theta) * rho

    # Trapezoid prefix sums; index j holds the integral from 0 to theta_j.
    x = np.empty(profile.grid.n)
    y = np.empty(profile.grid.n)
    x[0] = 0.0
    y[0] = 0.0
    np.cumsum(0.5 * dtheta * (fx[:-1] + fx[1:]), out=x[1:])
    np.cumsum(0.5 * dtheta * (fy[:-1] + fy[1:]), out=y[1:])

    # Closing the loop back to theta = 2*pi completes the periodic trapezoid
    # integral; its gap from the start point is the closure error.
    gap_x = x[-1] + 0.5 * dtheta * (fx[-1] + fx[0])
    gap_y = y[-1] + 0.5 * dtheta * (fy[-1] + fy[0])
    closure = float(np.hypot(gap_x, gap_y))

    points = np.column_stack((x + anchor.c1, y + anchor.c2))
    return Polyline(points=points, closure_error=closure)


def closure_error(poly: Polyline) -> float:
    """Euclidean gap between the end of the cumulative integral and its start."""
    return poly.closure_error


def normal_speed(profile: CurvatureProfile, lam: float) -> np.ndarray:
    """Pointwise normal speed kappa - lam/kappa of the flow."""
    return profile.kappa - lam / profile.kappa


def advance_anchor(profile: CurvatureProfile, lam: float, anchor: Anchor, dt: float,
                   stencil_order: int = 2) -> Anchor:
    """Explicit Euler update of the anchor from the speed at theta = 0.

    c1' = -d/dtheta (kappa - lam/kappa) at theta = 0, c2' = (kappa - lam/kappa)
    at theta = 0.  The anchor only shifts the frame and never feeds back into
    kappa, so first-order accuracy is sufficient.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    w = normal_speed(profile, lam)
    dw = periodic_derivative(w, order=1, stencil_order=stencil_order)
    return anchor.shifted(-dt * float(dw[0]), dt * float(w[0]))


__all__ = ["Anchor", "Polyline", "reconstruct", "closure_error", "normal_speed",
           "advance_anchor"]
