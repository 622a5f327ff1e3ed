"""
Unit test fixtures for achronal.

Provides small, fixed geometric objects used across the unit tests.
"""

import pytest
from pathlib import Path


@pytest.fixture
def report_store(fresh_temp_dir: Path):
    """
    Provide a fresh JSONReportStore for each test.

    Returns:
        JSONReportStore instance with temp directory
    """
    from achronal.storage import JSONReportStore
    return JSONReportStore(fresh_temp_dir)


@pytest.fixture
def unit_ball_region():
    """Ball of radius 1 on the slice x0 = 0."""
    from achronal.surfaces import Ball, FlatSurface, Region
    return Region(surface=FlatSurface(), base=Ball(radius=1.0))


@pytest.fixture
def narrow_state():
    """Gaussian state of width 1 centred at the origin, uniform velocities."""
    from achronal.linespace import StateDensity
    return StateDensity(sigma=1.0)


@pytest.fixture
def spin_half():
    """SpinContext for J = 1/2 with the default mass window."""
    from achronal.spectrum import SpinContext
    return SpinContext(spin="1/2")
