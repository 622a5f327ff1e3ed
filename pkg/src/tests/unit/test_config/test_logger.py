"""
Unit tests for logging setup.

Tests cover:
- Level names and configuration errors
- Logger naming
- stderr and rotating file handlers
- Fallback when the environment is invalid
"""

import logging
import logging.handlers
import sys

import pytest

from achronal.config import Config, reset_config, set_config
from achronal.errors import ConfigurationError
from achronal.logger import ROOT_NAME, AchronalLogger, get_logger, resolve_level


@pytest.fixture
def clean_logging():
    """Detach the achronal handlers for one test and restore them afterwards."""
    root_logger = logging.getLogger(ROOT_NAME)
    level = root_logger.level
    AchronalLogger.reset()
    yield root_logger
    AchronalLogger.reset()
    reset_config()
    AchronalLogger.setup_logging()
    root_logger.setLevel(level)


@pytest.mark.unit
@pytest.mark.config
class TestLevels:
    """Test resolve_level."""

    @pytest.mark.parametrize("name,level", [("debug", logging.DEBUG), ("INFO", logging.INFO), (" warning ", logging.WARNING)])
    def test_known_levels(self, name, level):
        """Test case-insensitive level names."""
        assert resolve_level(name) == level

    def test_unknown_level(self):
        """Test that unknown names are configuration errors."""
        with pytest.raises(ConfigurationError) as exc_info:
            resolve_level("verbose")

        assert exc_info.value.setting == "ACHRONAL_LOG_LEVEL"


@pytest.mark.unit
@pytest.mark.config
class TestSetup:
    """Test AchronalLogger."""

    def test_logger_names(self):
        """Test the achronal.<area>.<module> hierarchy."""
        assert get_logger("linespace.solvers").name == "achronal.linespace.solvers"

    def test_stderr_handler(self, clean_logging):
        """Test that the console handler writes to stderr."""
        AchronalLogger.setup_logging(log_level="INFO")

        stream_handlers = [h for h in clean_logging.handlers if type(h) is logging.StreamHandler]
        assert len(stream_handlers) == 1
        assert stream_handlers[0].stream is sys.stderr
        assert clean_logging.level == logging.INFO

    def test_setup_is_idempotent(self, clean_logging):
        """Test that a second setup adds no handlers."""
        AchronalLogger.setup_logging()
        count = len(clean_logging.handlers)

        AchronalLogger.setup_logging()

        assert len(clean_logging.handlers) == count

    def test_rotating_file(self, clean_logging, fresh_temp_dir):
        """Test the file handler configured through Config."""
        log_file = fresh_temp_dir / "logs" / "achronal.log"
        set_config(Config(log_file=log_file, log_level="DEBUG"))

        AchronalLogger.setup_logging()
        get_logger("tests").debug("written to the file")

        rotating = [h for h in clean_logging.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
        assert len(rotating) == 1
        assert rotating[0].maxBytes == 10 * 1024 * 1024
        assert rotating[0].backupCount == 5
        rotating[0].flush()
        assert "written to the file" in log_file.read_text(encoding="utf-8")

    def test_set_level(self, clean_logging):
        """Test a --log-level override."""
        AchronalLogger.setup_logging(log_level="WARNING")

        AchronalLogger.set_level("debug")

        assert clean_logging.level == logging.DEBUG
        assert all(h.level == logging.DEBUG for h in clean_logging.handlers)

    def test_set_level_rejects_unknown(self, clean_logging):
        """Test that a bad override names the flag."""
        with pytest.raises(ConfigurationError) as exc_info:
            AchronalLogger.set_level("loud")

        assert exc_info.value.setting == "log_level"

    def test_invalid_environment_falls_back(self, clean_logging, monkeypatch):
        """Test that setup survives a bad ACHRONAL_* value."""
        monkeypatch.setenv("ACHRONAL_WORKERS", "0")

        AchronalLogger.setup_logging()

        assert clean_logging.level == logging.WARNING
        assert clean_logging.handlers


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
