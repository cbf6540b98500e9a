"""Scalar geometric monitors: length, area, radii, and inequality residuals.

Two routes to the enclosed area coexist deliberately:

* ``enclosed_area`` is the shoelace value of the reconstructed polyline,
  accurate to O(dtheta^2) (an inscribed polygon always undershoots the
  smooth area by about dtheta^2/12 * integral of rho^2);
* ``spectral_area`` evaluates 1/2 * closed-integral(x dy - y dx) exactly in
  Fourier space from the curvature samples and is spectrally accurate.

The diagnostics use the spectral value; the shoelace stays as an
independent cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .grid import periodic_derivative, periodic_trapezoid
from .reconstruction import Polyline
from .shapes import CurvatureProfile

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class InequalityResiduals:
    """LHS - RHS of the four convex-curve inequalities; valid curves give >= 0.

    gage:          closed-integral(kappa^2 ds) - pi*L/A
    pan_yang:      closed-integral(ds/kappa) - (L^2 - 2*pi*A)/pi
    isoperimetric: L^2 - 4*pi*A
    bonnesen:      L^2 - 4*pi*A - pi^2*(r_out - r_in)^2

    Residuals are reported signed, never clamped, so a violation is
    distinguishable from saturation.
    """

    gage: float
    pan_yang: float
    isoperimetric: float
    bonnesen: float


@dataclass(frozen=True)
class GeometricSummary:
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


def length(profile: CurvatureProfile) -> float:
    """Curve length L = closed-integral of 1/kappa dtheta."""
    return periodic_trapezoid(1.0 / profile.kappa)


def nonlocal_lambda(profile: CurvatureProfile) -> float:
    """Non-local speed coefficient lambda = 2*pi / closed-integral(kappa^-2 dtheta).

    Equals 2*pi / closed-integral(ds/kappa); chosen so the flow preserves the
    enclosed area.
    """
    return TWO_PI / periodic_trapezoid(profile.kappa**-2)


def enclosed_area(poly: Polyline) -> float:
    """Shoelace area 1/2 * sum(x_j*y_{j+1} - x_{j+1}*y_j) of the closed polyline.

    Positive for counterclockwise orientation; a non-positive value signals
    an orientation or closure failure upstream.
    """
    x = poly.points[:, 0]
    y = poly.points[:, 1]
    xn = np.roll(x, -1)
    yn = np.roll(y, -1)
    return float(0.5 * np.sum(x * yn - xn * y))


def spectral_area(profile: CurvatureProfile) -> float:
    """Enclosed area evaluated exactly in Fourier space from rho = 1/kappa.

    Writing z'(theta) = rho * e^{i*theta} = sum c_m e^{i*m*theta}, the area
    1/2 * Im closed-integral(conj(z) z' dtheta) reduces to
    pi * sum_{m != 0} |c_m|^2 / m, which is exact for band-limited rho and
    spectrally accurate for analytic profiles.
    """
    rho = 1.0 / profile.kappa
    n = profile.grid.n
    rho_hat = np.fft.fft(rho) / n  # rho_hat[k] multiplies e^{i*k*theta}
    k = np.fft.fftfreq(n, d=1.0 / n)  # integer wavenumbers of rho_hat
    m = k + 1.0  # z' coefficients c_m = rho_hat[m-1]
    mask = m != 0.0
    return float(np.pi * np.sum(np.abs(rho_hat[mask]) ** 2 / m[mask]))


def median_curvature(profile: CurvatureProfile) -> float:
    """Largest level alpha with kappa > alpha on some tangent-angle arc of length pi.

    Discretely: the max over all grid offsets of the minimum of kappa over a
    window of exactly n/2 consecutive samples (closed on the left, open on
    the right); n/2 * dtheta = pi exactly for even n.
    """
    kappa = profile.kappa
    n = profile.grid.n
    width = n // 2
    tiled = np.concatenate([kappa, kappa[: width - 1]])
    windows = np.lib.stride_tricks.sliding_window_view(tiled, width)
    return float(np.max(np.min(windows, axis=1)))


def _circle_two(p: np.ndarray, q: np.ndarray):
    center = 0.5 * (p + q)
    return center, float(np.linalg.norm(p - center))


def _circle_three(p: np.ndarray, q: np.ndarray, r: np.ndarray):
    ax, ay = p
    bx, by = q
    cx, cy = r
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay)
          + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx)
          + (cx**2 + cy**2) * (bx - ax)) / d
    center = np.array([ux, uy])
    return center, float(np.linalg.norm(p - center))


def _contains(circle, point, eps=1e-12) -> bool:
    center, radius = circle
    return float(np.linalg.norm(point - center)) <= radius * (1.0 + eps) + eps


def smallest_enclosing_circle(points: np.ndarray, seed: int = 0):
    """Randomized incremental smallest enclosing circle (expected linear time).

    Returns (center, radius).  The point order is shuffled with the given
    seed so runs are reproducible.
    """
    pts = [np.array(p, dtype=float) for p in points]
    random.Random(seed).shuffle(pts)
    circle = (pts[0].copy(), 0.0)
    for i, p in enumerate(pts[1:], start=1):
        if _contains(circle, p):
            continue
        # p lies on the boundary of the circle of pts[:i+1].
        circle = (p.copy(), 0.0)
        for j, q in enumerate(pts[:i]):
            if _contains(circle, q):
                continue
            circle = _circle_two(p, q)
            for r in pts[:j]:
                if _contains(circle, r):
                    continue
                c3 = _circle_three(p, q, r)
                if c3 is not None:
                    circle = c3
    return circle


def chebyshev_center(points: np.ndarray):
    """Chebyshev center and inradius of a convex counterclockwise polygon.

    Maximizes r subject to the edge half-plane constraints
    n_i . c + r <= n_i . p_i (n_i the outward unit edge normal), which is
    exact for convex polygons.  Raises on degenerate (collinear) input.
    """
    p = np.asarray(points, dtype=float)
    q = np.roll(p, -1, axis=0)
    edges = q - p
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if np.any(lengths == 0.0):
        keep = lengths > 0.0
        p, edges, lengths = p[keep], edges[keep], lengths[keep]
    if len(p) < 3:
        raise ValueError("degenerate polygon: fewer than 3 distinct vertices")
    # Outward normal of a counterclockwise polygon: rotate the edge by -90 deg.
    normals = np.column_stack((edges[:, 1], -edges[:, 0])) / lengths[:, None]
    a_ub = np.column_stack((normals, np.ones(len(p))))
    b_ub = np.sum(normals * p, axis=1)
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None), (None, None), (0.0, None)],
                  method="highs")
    if not res.success or res.x[2] <= 0.0:
        raise ValueError(f"degenerate polygon: inradius LP failed ({res.message})")
    return res.x[:2], float(res.x[2])


def radii(poly: Polyline, seed: int = 0) -> tuple[float, float]:
    """(inradius, outradius) of the convex polyline."""
    _, r_in = chebyshev_center(poly.points)
    _, r_out = smallest_enclosing_circle(poly.points, seed=seed)
    return r_in, r_out


def sobolev_energy(profile: CurvatureProfile, stencil_order: int = 2) -> float:
    """closed-integral of (kappa')^2 dtheta with the periodic difference stencil."""
    dk = periodic_derivative(profile.kappa, order=1, stencil_order=stencil_order)
    return periodic_trapezoid(dk**2)


def inequality_residuals(profile: CurvatureProfile, poly: Polyline,
                         seed: int = 0, *, area: float | None = None,
                         r_in: float | None = None,
                         r_out: float | None = None) -> InequalityResiduals:
    """Signed residuals of the four convex-curve inequalities.

    In tangent-angle coordinates closed-integral(kappa^2 ds) =
    closed-integral(kappa dtheta) and closed-integral(ds/kappa) =
    closed-integral(kappa^-2 dtheta).  Area defaults to the spectral value;
    radii come from the polyline.
    """
    big_l = length(profile)
    big_a = spectral_area(profile) if area is None else area
    if r_in is None or r_out is None:
        r_in, r_out = radii(poly, seed=seed)
    gage = periodic_trapezoid(profile.kappa) - np.pi * big_l / big_a
    pan_yang = periodic_trapezoid(profile.kappa**-2) - (big_l**2 - TWO_PI * big_a) / np.pi
    isoperimetric = big_l**2 - 4.0 * np.pi * big_a
    bonnesen = isoperimetric - np.pi**2 * (r_out - r_in) ** 2
    return InequalityResiduals(gage=float(gage), pan_yang=float(pan_yang),
                               isoperimetric=float(isoperimetric),
                               bonnesen=float(bonnesen))


def summarize(profile: CurvatureProfile, poly: Polyline, seed: int = 0,
              stencil_order: int = 2) -> GeometricSummary:
    """All scalar monitors evaluated on one profile and its reconstruction."""
    big_l = length(profile)
    big_a = spectral_area(profile)
    r_in, r_out = radii(poly, seed=seed)
    return GeometricSummary(
        length=big_l,
        area=big_a,
        lam=nonlocal_lambda(profile),
        deficit=big_l**2 - 4.0 * np.pi * big_a,
        ratio=big_l**2 / (4.0 * np.pi * big_a),
        kappa_min=float(np.min(profile.kappa)),
        kappa_max=float(np.max(profile.kappa)),
        kappa_star=median_curvature(profile),
        r_in=r_in,
        r_out=r_out,
        sobolev=sobolev_energy(profile, stencil_order=stencil_order),
    )


__all__ = [
    "InequalityResiduals",
    "GeometricSummary",
    "length",
    "nonlocal_lambda",
    "enclosed_area",
    "spectral_area",
    "median_curvature",
    "smallest_enclosing_circle",
    "chebyshev_center",
    "radii",
    "sobolev_energy",
    "inequality_residuals",
    "summarize",
]
