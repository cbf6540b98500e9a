"""Convex curves represented by curvature versus tangent angle.

A strictly convex closed curve is encoded by positive samples of the
curvature kappa(theta) on a uniform periodic grid.  A positive 2*pi-periodic
kappa is the curvature of a closed curve exactly when the closing condition

    integral over [0, 2*pi) of e^{i*theta} / kappa(theta) dtheta == 0

holds.  Admissible initial data is generated either from a support function
h(theta) (radius of curvature rho = h + h'', kappa = 1/rho) or from one of
the built-in shape specs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .grid import ThetaGrid, make_theta_grid, periodic_derivative, periodic_trapezoid


class ConvexityError(ValueError):
    """Raised when a curvature or radius-of-curvature profile fails positivity."""

    def __init__(self, message: str, node: Optional[int] = None, value: Optional[float] = None):
        super().__init__(message)
        self.node = node
        self.value = value


@dataclass(frozen=True)
class CurvatureProfile:
    """Samples of kappa(theta) > 0 on a uniform periodic theta grid."""

    grid: ThetaGrid
    kappa: np.ndarray = field(repr=False)

    def __post_init__(self):
        kappa = np.ascontiguousarray(self.kappa, dtype=float)
        if kappa.shape != (self.grid.n,):
            raise ValueError(
                f"kappa has shape {kappa.shape}, expected ({self.grid.n},)"
            )
        if not np.all(np.isfinite(kappa)):
            raise ValueError("kappa contains non-finite values")
        if np.any(kappa <= 0.0):
            j = int(np.argmin(kappa))
            raise ConvexityError(
                f"kappa must be strictly positive; kappa[{j}] = {kappa[j]:.6g}",
                node=j,
                value=float(kappa[j]),
            )
        object.__setattr__(self, "kappa", kappa)


@dataclass(frozen=True)
class SupportFunction:
    """Support function samples h(theta), optionally with exact Fourier data.

    fourier holds (k, a_k, b_k) triples meaning a_k*cos(k*theta) +
    b_k*sin(k*theta); when present, derivatives are taken analytically.
    """

    grid: ThetaGrid
    h: np.ndarray = field(repr=False)
    fourier: Optional[tuple[tuple[int, float, float], ...]] = None


@dataclass(frozen=True)
class Circle:
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"circle radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class Ellipse:
    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError(f"ellipse semi-axes must be positive, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class FourierShape:
    """Support function r0 + sum of harmonics (k, a_k, b_k) with k >= 2.

    Modes k = 0, 1 are excluded: k = 0 is absorbed into r0 and k = 1 drops
    out of rho = h + h'' identically, so restricting to k >= 2 keeps the
    closing condition satisfied by construction.
    """

    r0: float
    harmonics: tuple[tuple[int, float, float], ...] = ()

    def __post_init__(self):
        if self.r0 <= 0:
            raise ValueError(f"base radius must be positive, got {self.r0}")
        for k, a_k, b_k in self.harmonics:
            if k < 2:
                raise ValueError(f"fourier harmonics must have k >= 2, got k={k}")


@dataclass(frozen=True)
class RawProfile:
    kappa: tuple[float, ...]


ShapeSpec = Union[Circle, Ellipse, FourierShape, RawProfile]


def closing_tolerance(kappa_min: float, eps: float = 1e-8) -> float:
    """Default closing-residual tolerance, scaled by the curve size 2*pi/kappa_min."""
    return eps * (2.0 * np.pi / kappa_min)


def closing_residual(profile: CurvatureProfile) -> float:
    """Modulus of the periodic-trapezoid quadrature of e^{i*theta}/kappa."""
    rho = 1.0 / profile.kappa
    theta = profile.grid.theta
    dtheta = profile.grid.dtheta
    re = np.sum(np.cos(theta) * rho) * dtheta
    im = np.sum(np.sin(theta) * rho) * dtheta
    return float(np.hypot(re, im))


def project_closing(profile: CurvatureProfile) -> CurvatureProfile:
    """Remove the first Fourier harmonic of rho = 1/kappa.

    The closing condition is linear in rho, so subtracting the k = 1
    harmonic is an exact one-shot projection onto closed curves.  Fails if
    the projected rho loses positivity.
    """
    theta = profile.grid.theta
    dtheta = profile.grid.dtheta
    rho = 1.0 / profile.kappa
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    a1 = np.sum(rho * cos_t) * dtheta / np.pi
    b1 = np.sum(rho * sin_t) * dtheta / np.pi
    rho_proj = rho - a1 * cos_t - b1 * sin_t
    min_rho = float(np.min(rho_proj))
    if min_rho <= 0.0:
        raise ConvexityError(
            f"projection breaks convexity: min radius of curvature {min_rho:.6g}",
            node=int(np.argmin(rho_proj)),
            value=min_rho,
        )
    return CurvatureProfile(grid=profile.grid, kappa=1.0 / rho_proj)


def support_to_curvature(support: SupportFunction) -> CurvatureProfile:
    """Convert a support function to a curvature profile via kappa = 1/(h + h'').

    With exact Fourier data the second derivative is taken analytically;
    raw samples fall back on the periodic order-2 difference stencil.
    """
    grid = support.grid
    h = np.asarray(support.h, dtype=float)
    if support.fourier is not None:
        h2 = np.zeros(grid.n)
        for k, a_k, b_k in support.fourier:
            h2 += -k * k * (a_k * np.cos(k * grid.theta) + b_k * np.sin(k * grid.theta))
    else:
        h2 = periodic_derivative(h, order=2, stencil_order=2)
    rho = h + h2
    if np.any(rho <= 0.0):
        j = int(np.argmin(rho))
        raise ConvexityError(
            f"support function is not convex: (h + h'')[{j}] = {rho[j]:.6g}",
            node=j,
            value=float(rho[j]),
        )
    return CurvatureProfile(grid=grid, kappa=1.0 / rho)


def fourier_support(grid: ThetaGrid, r0: float,
                    harmonics: Sequence[tuple[int, float, float]]) -> SupportFunction:
    """Sample h = r0 + sum harmonics on the grid, keeping exact Fourier data."""
    h = np.full(grid.n, float(r0))
    coeffs = []
    for k, a_k, b_k in harmonics:
        h += a_k * np.cos(k * grid.theta) + b_k * np.sin(k * grid.theta)
        coeffs.append((int(k), float(a_k), float(b_k)))
    return SupportFunction(grid=grid, h=h, fourier=tuple(coeffs))


def builtin_shape(spec: ShapeSpec, grid: ThetaGrid) -> CurvatureProfile:
    """Instantiate a shape spec as a curvature profile on the given grid."""
    if isinstance(spec, Circle):
        return CurvatureProfile(grid=grid, kappa=np.full(grid.n, 1.0 / spec.radius))
    if isinstance(spec, Ellipse):
        a, b = spec.a, spec.b
        h = np.sqrt((a * np.cos(grid.theta)) ** 2 + (b * np.sin(grid.theta)) ** 2)
        return CurvatureProfile(grid=grid, kappa=h**3 / (a * a * b * b))
    if isinstance(spec, FourierShape):
        return support_to_curvature(fourier_support(grid, spec.r0, spec.harmonics))
    if isinstance(spec, RawProfile):
        raw = CurvatureProfile(grid=grid, kappa=np.asarray(spec.kappa, dtype=float))
        projected = project_closing(raw)
        tol = closing_tolerance(float(np.min(projected.kappa)))
        residual = closing_residual(projected)
        if residual > tol:
            raise ValueError(
                f"raw profile fails the closing condition after projection: "
                f"residual {residual:.3e} > {tol:.3e}"
            )
        return projected
    raise TypeError(f"unknown shape spec {spec!r}")


def validate_initial(profile: CurvatureProfile, *, ratio_cap: float = 1e6) -> None:
    """Admissibility gate for initial data: closing residual and resolution.

    Profiles with kappa_max/kappa_min beyond ratio_cap cannot be resolved
    sensibly on a uniform theta grid and are rejected up front.
    """
    kmin = float(np.min(profile.kappa))
    kmax = float(np.max(profile.kappa))
    if kmax / kmin > ratio_cap:
        raise ValueError(
            f"initial curvature contrast kappa_max/kappa_min = {kmax / kmin:.3e} "
            f"exceeds {ratio_cap:.1e}"
        )
    residual = closing_residual(profile)
    tol = closing_tolerance(kmin)
    if residual > tol:
        raise ValueError(
            f"initial profile violates the closing condition: residual "
            f"{residual:.3e} > {tol:.3e}"
        )


__all__ = [
    "ConvexityError",
    "CurvatureProfile",
    "SupportFunction",
    "Circle",
    "Ellipse",
    "FourierShape",
    "RawProfile",
    "ShapeSpec",
    "closing_residual",
    "closing_tolerance",
    "project_closing",
    "support_to_curvature",
    "fourier_support",
    "builtin_shape",
    "validate_initial",
    "make_theta_grid",
    "periodic_trapezoid",
]
