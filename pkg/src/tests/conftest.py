"""
Global pytest configuration and fixtures for achronal tests.

This module provides shared fixtures and configuration used across all tests.
"""

import pytest
import tempfile
from pathlib import Path
from typing import Generator

import numpy as np


@pytest.fixture(autouse=True)
def reset_achronal_config(monkeypatch) -> Generator[None, None, None]:
    """
    Give every test a configuration built from defaults.

    ACHRONAL_* variables of the developer's shell are removed so tests see
    the documented defaults, and the cached Config is dropped afterwards.
    """
    import os
    from achronal.config import reset_config

    for name in list(os.environ):
        if name.startswith("ACHRONAL_"):
            monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def fresh_temp_dir() -> Generator[Path, None, None]:
    """
    Provide a fresh temporary directory for each test.

    Used for report output directories and input documents.
    """
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator, identical in every test."""
    return np.random.default_rng(12345)


@pytest.fixture
def test_config(fresh_temp_dir: Path):
    """
    Provide a Config whose report directory is a temp directory.

    Returns:
        Config object configured for testing
    """
    from achronal.config import Config
    return Config(data_dir=fresh_temp_dir)
