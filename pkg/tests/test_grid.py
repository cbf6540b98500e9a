import numpy as np
import pytest

from curveflow.grid import ThetaGrid, make_theta_grid, periodic_derivative, periodic_trapezoid


def test_grid_nodes():
    g = make_theta_grid(16)
    assert g.n == 16
    assert g.dtheta == pytest.approx(2 * np.pi / 16)
    assert np.allclose(g.theta, np.arange(16) * 2 * np.pi / 16)
    assert g.theta[0] == 0.0
    # open interval: the last node is strictly below 2*pi
    assert g.theta[-1] < 2 * np.pi


@pytest.mark.parametrize("bad", [7, 9, 6, 0, -8])
def test_grid_rejects_bad_sizes(bad):
    with pytest.raises(ValueError, match="even"):
        make_theta_grid(bad)


def test_grid_rejects_non_integer():
    with pytest.raises(TypeError):
        make_theta_grid(16.0)


def test_grid_equality_by_size():
    assert make_theta_grid(64) == make_theta_grid(64)
    assert make_theta_grid(64) != make_theta_grid(128)
    assert make_theta_grid(64) != "not a grid"


@pytest.mark.parametrize("stencil_order,rate", [(2, 2), (4, 4)])
def test_derivative_convergence_rate(stencil_order, rate):
    # error on f = exp(sin(theta)) should shrink by 2^rate per refinement
    errs = []
    for n in (64, 128, 256):
        g = make_theta_grid(n)
        f = np.exp(np.sin(g.theta))
        exact = np.cos(g.theta) * f
        approx = periodic_derivative(f, order=1, stencil_order=stencil_order)
        errs.append(np.max(np.abs(approx - exact)))
    assert errs[0] / errs[1] == pytest.approx(2**rate, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(2**rate, rel=0.1)


@pytest.mark.parametrize("stencil_order", [2, 4])
def test_second_derivative(stencil_order):
    g = make_theta_grid(256)
    f = np.cos(3 * g.theta)
    exact = -9.0 * np.cos(3 * g.theta)
    approx = periodic_derivative(f, order=2, stencil_order=stencil_order)
    tol = 2e-2 if stencil_order == 2 else 2e-4
    assert np.max(np.abs(approx - exact)) < tol


def test_derivative_of_constant_is_zero():
    for so in (2, 4):
        for order in (1, 2):
            d = periodic_derivative(np.full(32, 3.7), order=order, stencil_order=so)
            assert np.max(np.abs(d)) < 1e-12


def test_derivative_rejects_bad_orders():
    f = np.ones(16)
    with pytest.raises(ValueError, match="stencil_order"):
        periodic_derivative(f, order=1, stencil_order=3)
    with pytest.raises(ValueError, match="order"):
        periodic_derivative(f, order=3, stencil_order=2)


def test_trapezoid_exact_for_trig_polynomials():
    # the periodic trapezoid rule integrates e^{ik theta} exactly for |k| < n
    g = make_theta_grid(32)
    f = 2.0 + np.cos(g.theta) - 0.5 * np.sin(5 * g.theta)
    assert periodic_trapezoid(f) == pytest.approx(4 * np.pi, abs=1e-13)
    assert periodic_trapezoid(np.sin(g.theta) ** 2) == pytest.approx(np.pi, abs=1e-13)


def test_trapezoid_spectral_accuracy():
    g = make_theta_grid(64)
    # integral of exp(cos(theta)) = 2*pi*I_0(1)
    from scipy.special import iv
    assert periodic_trapezoid(np.exp(np.cos(g.theta))) == pytest.approx(
        2 * np.pi * iv(0, 1.0), abs=1e-14)
