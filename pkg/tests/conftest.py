"""Shared fixtures: one full ellipse run reused across the suite."""

import numpy as np
import pytest

import curveflow as cf
from curveflow import diagnostics


@pytest.fixture(scope="session")
def ellipse_grid():
    return cf.make_theta_grid(256)


@pytest.fixture(scope="session")
def ellipse_profile(ellipse_grid):
    return cf.builtin_shape(cf.Ellipse(2.0, 1.0), ellipse_grid)


@pytest.fixture(scope="session")
def ellipse_trajectory(ellipse_profile):
    """Full 2:1-ellipse run at n=256 with the order-4 stencil, monitors on."""
    cfg = cf.StepperConfig(stencil_order=4, t_max=60.0, stop_deficit=1e-12)
    return diagnostics.simulate(ellipse_profile, cfg, sample_interval=0.05, seed=0)


@pytest.fixture(scope="session")
def ellipse_rows(ellipse_trajectory):
    return diagnostics.trajectory_rows(ellipse_trajectory)


@pytest.fixture(scope="session")
def ellipse_report(ellipse_rows):
    return diagnostics.verify(ellipse_rows)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
