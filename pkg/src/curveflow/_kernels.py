"""Compiled inner loops for the time integrator.

The curvature PDE is integrated with classical RK4 at a parabolic step cap;
at n = 256 a run takes on the order of a million steps, so the per-step work
lives in numba-compiled kernels.  The public operations in ``solver`` wrap
these; pure-numpy reference implementations of the right-hand side live
there as well and are cross-checked against the kernels in the test suite.

Status codes returned by ``advance``:
    0  reached the target time
    1  hit the step budget
   -1  positivity loss (kappa <= 0 after a step)
   -2  non-finite values
   -3  closing projection would break convexity
"""

from __future__ import annotations

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi

STATUS_REACHED_TARGET = 0
STATUS_MAX_STEPS = 1
STATUS_POSITIVITY = -1
STATUS_NONFINITE = -2
STATUS_PROJECTION = -3


@njit(cache=True)
def _lambda_of(kappa, dtheta):
    s2 = 0.0
    for j in range(kappa.size):
        inv = 1.0 / kappa[j]
        s2 += inv * inv
    return TWO_PI / (s2 * dtheta)


@njit(cache=True)
def _rhs(kappa, big_l, dtheta, stencil_order, kdot):
    """Evaluate the curvature PDE and length ODE right-hand sides.

    kdot[j] = (kappa^2 + lam)*kappa_tt - (2*lam/kappa)*kappa_t^2
              + kappa^3 - lam*kappa
    Ldot    = -sum(kappa)*dtheta + lam*L
    Returns (lam, Ldot); kdot is written in place.
    """
    n = kappa.size
    s1 = 0.0
    s2 = 0.0
    for j in range(n):
        inv = 1.0 / kappa[j]
        s1 += kappa[j]
        s2 += inv * inv
    lam = TWO_PI / (s2 * dtheta)
    ldot = -s1 * dtheta + lam * big_l

    if stencil_order == 2:
        inv2 = 1.0 / (2.0 * dtheta)
        invh2 = 1.0 / (dtheta * dtheta)
        for j in range(n):
            jp = j + 1 if j + 1 < n else 0
            jm = j - 1 if j > 0 else n - 1
            k = kappa[j]
            kt = (kappa[jp] - kappa[jm]) * inv2
            ktt = (kappa[jp] - 2.0 * k + kappa[jm]) * invh2
            kdot[j] = (k * k + lam) * ktt - (2.0 * lam / k) * kt * kt + k * k * k - lam * k
    else:
        inv12 = 1.0 / (12.0 * dtheta)
        invh12 = 1.0 / (12.0 * dtheta * dtheta)
        for j in range(n):
            jp1 = j + 1 if j + 1 < n else j + 1 - n
            jp2 = j + 2 if j + 2 < n else j + 2 - n
            jm1 = j - 1 if j - 1 >= 0 else j - 1 + n
            jm2 = j - 2 if j - 2 >= 0 else j - 2 + n
            k = kappa[j]
            kt = (-kappa[jp2] + 8.0 * kappa[jp1] - 8.0 * kappa[jm1] + kappa[jm2]) * inv12
            ktt = (-kappa[jp2] + 16.0 * kappa[jp1] - 30.0 * k
                   + 16.0 * kappa[jm1] - kappa[jm2]) * invh12
            kdot[j] = (k * k + lam) * ktt - (2.0 * lam / k) * kt * kt + k * k * k - lam * k
    return lam, ldot


@njit(cache=True)
def _stable_dt(kappa, dtheta, cfl):
    lam = _lambda_of(kappa, dtheta)
    peak = 0.0
    for j in range(kappa.size):
        coeff = kappa[j] * kappa[j] + lam
        if coeff > peak:
            peak = coeff
    return cfl * dtheta * dtheta / (2.0 * peak)


@njit(cache=True)
def _speed_at_zero(kappa, lam, dtheta, stencil_order):
    """Normal speed w = kappa - lam/kappa and dw/dtheta at grid node 0."""
    n = kappa.size
    w0 = kappa[0] - lam / kappa[0]
    wp1 = kappa[1] - lam / kappa[1]
    wm1 = kappa[n - 1] - lam / kappa[n - 1]
    if stencil_order == 2:
        dw0 = (wp1 - wm1) / (2.0 * dtheta)
    else:
        wp2 = kappa[2] - lam / kappa[2]
        wm2 = kappa[n - 2] - lam / kappa[n - 2]
        dw0 = (-wp2 + 8.0 * wp1 - 8.0 * wm1 + wm2) / (12.0 * dtheta)
    return w0, dw0


@njit(cache=True)
def _project_closing(kappa, cos_t, sin_t, dtheta):
    """In-place removal of the first Fourier harmonic of rho = 1/kappa.

    Returns -1 on success, else the node index where the projected radius
    of curvature loses positivity.
    """
    n = kappa.size
    a1 = 0.0
    b1 = 0.0
    for j in range(n):
        rho = 1.0 / kappa[j]
        a1 += rho * cos_t[j]
        b1 += rho * sin_t[j]
    a1 *= dtheta / np.pi
    b1 *= dtheta / np.pi
    for j in range(n):
        rho = 1.0 / kappa[j] - a1 * cos_t[j] - b1 * sin_t[j]
        if rho <= 0.0:
            return j
        kappa[j] = 1.0 / rho
    return -1


@njit(cache=True)
def advance(kappa, scalars, cos_t, sin_t, dtheta, cfl, fixed_dt, stencil_order,
            projection_period, t_target, max_steps):
    """Advance (kappa, L, anchor) until t >= t_target or the step budget runs out.

    scalars = [t, L, c1, c2, step_count, bad_index]; mutated in place.
    One step = joint RK4 on (kappa, L) with lambda recomputed at every
    stage, explicit Euler on the anchor from the start-of-step state, and a
    closing re-projection every projection_period steps.
    """
    n = kappa.size
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    tmp = np.empty(n)

    t = scalars[0]
    big_l = scalars[1]
    c1 = scalars[2]
    c2 = scalars[3]
    step_count = int(scalars[4])

    steps_done = 0
    status = STATUS_MAX_STEPS
    while steps_done < max_steps:
        if fixed_dt > 0.0:
            dt = fixed_dt
        else:
            dt = _stable_dt(kappa, dtheta, cfl)
        last = False
        if t + dt >= t_target:
            dt = t_target - t
            last = True

        lam0, l1 = _rhs(kappa, big_l, dtheta, stencil_order, k1)
        w0, dw0 = _speed_at_zero(kappa, lam0, dtheta, stencil_order)

        half = 0.5 * dt
        for j in range(n):
            tmp[j] = kappa[j] + half * k1[j]
        _, l2 = _rhs(tmp, big_l + half * l1, dtheta, stencil_order, k2)
        for j in range(n):
            tmp[j] = kappa[j] + half * k2[j]
        _, l3 = _rhs(tmp, big_l + half * l2, dtheta, stencil_order, k3)
        for j in range(n):
            tmp[j] = kappa[j] + dt * k3[j]
        _, l4 = _rhs(tmp, big_l + dt * l3, dtheta, stencil_order, k4)

        sixth = dt / 6.0
        ok = True
        for j in range(n):
            kappa[j] = kappa[j] + sixth * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j])
            if not np.isfinite(kappa[j]):
                scalars[5] = j
                status = STATUS_NONFINITE
                ok = False
                break
            if kappa[j] <= 0.0:
                scalars[5] = j
                status = STATUS_POSITIVITY
                ok = False
                break
        if not ok:
            break
        big_l = big_l + sixth * (l1 + 2.0 * (l2 + l3) + l4)
        c1 = c1 - dt * dw0
        c2 = c2 + dt * w0
        t = t_target if last else t + dt
        step_count += 1
        steps_done += 1

        if projection_period > 0 and step_count % projection_period == 0:
            bad = _project_closing(kappa, cos_t, sin_t, dtheta)
            if bad >= 0:
                scalars[5] = bad
                status = STATUS_PROJECTION
                break

        if last:
            status = STATUS_REACHED_TARGET
            break

    scalars[0] = t
    scalars[1] = big_l
    scalars[2] = c1
    scalars[3] = c2
    scalars[4] = step_count
    return status
