"""
Logging setup for achronal.

Everything logs under the `achronal` hierarchy to stderr (and optionally a
rotating file). stdout belongs to reports, which must stay byte-identical
between runs, so no handler here ever writes to it.
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import List, Optional

from achronal.config import get_config
from achronal.errors import ConfigurationError

ROOT_NAME = "achronal"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def resolve_level(log_level: str, setting: str = "ACHRONAL_LOG_LEVEL") -> int:
    """Map a level name onto its logging constant."""
    name = str(log_level).strip().upper()
    if name not in LEVELS:
        raise ConfigurationError(setting, f"Unknown log level {log_level!r}; expected one of {', '.join(LEVELS)}")
    return getattr(logging, name)


class AchronalLogger:
    """Owns the handlers of the achronal logger hierarchy."""

    _initialized = False
    _handlers: List[logging.Handler] = []

    @classmethod
    def setup_logging(
        cls,
        log_level: Optional[str] = None,
        log_file: Optional[Path] = None
    ) -> None:
        """Attach the stderr handler and, if configured, the rotating file handler."""
        if cls._initialized:
            return

        try:
            config = get_config()
            level = resolve_level(log_level or config.log_level)
            file_path = log_file or config.log_file
        except ConfigurationError:
            # main() reports the bad setting; log with defaults until then
            level, file_path = logging.WARNING, log_file
        formatter = logging.Formatter(LOG_FORMAT)

        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if file_path:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.handlers.RotatingFileHandler(
                file_path,
                maxBytes=10 * 1024 * 1024,
                backupCount=5,
                encoding="utf-8",
            ))

        root_logger = logging.getLogger(ROOT_NAME)
        root_logger.setLevel(level)
        for handler in handlers:
            handler.setLevel(level)
            handler.setFormatter(formatter)
            root_logger.addHandler(handler)

        cls._handlers = handlers
        cls._initialized = True
        root_logger.debug(f"Logging initialized at level {logging.getLevelName(level)}")

    @classmethod
    def set_level(cls, log_level: str) -> None:
        """Apply a --log-level override to the hierarchy and its handlers."""
        level = resolve_level(log_level, setting="log_level")
        if not cls._initialized:
            cls.setup_logging()
        logging.getLogger(ROOT_NAME).setLevel(level)
        for handler in cls._handlers:
            handler.setLevel(level)

    @classmethod
    def reset(cls) -> None:
        """Detach and close the handlers so the next setup starts clean."""
        root_logger = logging.getLogger(ROOT_NAME)
        for handler in cls._handlers:
            root_logger.removeHandler(handler)
            handler.close()
        cls._handlers = []
        cls._initialized = False


def get_logger(name: str) -> logging.Logger:
    """Logger for `<area>.<module>`, i.e. `achronal.<area>.<module>`."""
    if not AchronalLogger._initialized:
        AchronalLogger.setup_logging()
    return logging.getLogger(f"{ROOT_NAME}.{name}")
