"""Uniform periodic tangent-angle grids and periodic difference stencils."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ThetaGrid:
    """Uniform periodic grid on [0, 2*pi) with nodes theta_j = 2*pi*j/n.

    n must be even so that a window of n/2 samples spans an angle of
    exactly pi and so that discrete-Fourier operations are well defined.
    """

    n: int
    theta: np.ndarray = field(repr=False)
    dtheta: float

    def __eq__(self, other):
        return isinstance(other, ThetaGrid) and self.n == other.n


def make_theta_grid(n: int) -> ThetaGrid:
    """Build a uniform periodic grid with n nodes; n must be even and >= 8."""
    if not isinstance(n, (int, np.integer)):
        raise TypeError(f"grid size must be an integer, got {type(n).__name__}")
    if n < 8 or n % 2 != 0:
        raise ValueError("grid size must be even and ≥ 8")
    dtheta = TWO_PI / n
    theta = dtheta * np.arange(n)
    return ThetaGrid(n=int(n), theta=theta, dtheta=dtheta)


def periodic_derivative(values: np.ndarray, order: int, stencil_order: int = 2) -> np.ndarray:
    """Central periodic finite difference of periodic samples on a uniform grid.

    order: 1 for d/dtheta, 2 for d^2/dtheta^2.
    stencil_order: 2 or 4 (formal accuracy of the stencil).
    """
    f = np.asarray(values, dtype=float)
    n = f.size
    dtheta = TWO_PI / n
    fp1 = np.roll(f, -1)
    fm1 = np.roll(f, 1)
    if stencil_order == 2:
        if order == 1:
            return (fp1 - fm1) / (2.0 * dtheta)
        if order == 2:
            return (fp1 - 2.0 * f + fm1) / dtheta**2
    elif stencil_order == 4:
        fp2 = np.roll(f, -2)
        fm2 = np.roll(f, 2)
        if order == 1:
            return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * dtheta)
        if order == 2:
            return (-fp2 + 16.0 * fp1 - 30.0 * f + 16.0 * fm1 - fm2) / (12.0 * dtheta**2)
    else:
        raise ValueError(f"stencil_order must be 2 or 4, got {stencil_order}")
    raise ValueError(f"derivative order must be 1 or 2, got {order}")


def periodic_trapezoid(values: np.ndarray) -> float:
    """Integral over one period of uniformly sampled periodic values.

    On a uniform periodic grid the trapezoid rule collapses to
    sum(values) * dtheta and is spectrally accurate for smooth integrands.
    """
    f = np.asarray(values, dtype=float)
    return float(np.sum(f)) * (TWO_PI / f.size)
