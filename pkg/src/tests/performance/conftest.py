"""
Fixtures for performance tests.
"""

import pytest
from pathlib import Path


@pytest.fixture
def report_store(fresh_temp_dir: Path):
    """Provide a fresh JSONReportStore for each test."""
    from achronal.storage import JSONReportStore
    return JSONReportStore(fresh_temp_dir)


@pytest.fixture
def ball_region():
    """Ball of radius 1 on a tilted hyperplane."""
    from achronal.surfaces import Ball, Region, TiltedPlane
    return Region(surface=TiltedPlane(w=(0.3, 0.0, 0.2)), base=Ball(radius=1.0))


@pytest.fixture
def state():
    """Gaussian state of width 1 centred at the origin."""
    from achronal.linespace import StateDensity
    return StateDensity(sigma=1.0)
