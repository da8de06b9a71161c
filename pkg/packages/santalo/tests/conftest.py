"""Shared fixtures for the santalo test suite."""

import os

import numpy as np
import pytest

from santalo.commons.telemetry.context import clear_context
from santalo.commons.telemetry.logging import reset_logging_config
from santalo.core import Axis, GridFunction, QuadraticProfile, make_radial


@pytest.fixture(autouse=True)
def isolated_run(monkeypatch: pytest.MonkeyPatch):
    """Strip SANTALO_* variables and reset context and logging around each test."""
    for key in list(os.environ):
        if key.upper().startswith("SANTALO_"):
            monkeypatch.delenv(key, raising=False)
    clear_context()
    yield
    clear_context()
    reset_logging_config()


@pytest.fixture
def gaussian_1d() -> GridFunction:
    """x²/2 on [−4, 4] with 161 nodes (step 0.05)."""
    return make_radial(QuadraticProfile(1.0), 1, Axis.symmetric(4.0, 161))


@pytest.fixture
def gaussian_2d() -> GridFunction:
    """‖x‖²/2 on [−3, 3]² with 41 nodes per axis."""
    return make_radial(QuadraticProfile(1.0), 2, Axis.symmetric(3.0, 41))


@pytest.fixture
def shifted_abs() -> GridFunction:
    """|x − 1| on [−3, 3], a non-symmetric convex function."""
    return GridFunction.from_callable(lambda x: np.abs(x - 1.0), Axis.symmetric(3.0, 121))
