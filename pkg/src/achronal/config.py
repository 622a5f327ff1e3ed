"""
Configuration management for achronal.
"""

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from dotenv import load_dotenv

from achronal import __version__
from achronal import constants
from achronal.errors import ConfigurationError

# Load environment variables from .env file
load_dotenv()


@dataclass(frozen=True)
class Config:
    """achronal configuration settings."""

    # Storage for saved reports
    data_dir: Path = field(default_factory=lambda: Path.home() / ".achronal")

    # Logging
    log_level: str = "WARNING"
    log_file: Optional[Path] = None

    # Monte Carlo
    seed: int = 0
    workers: int = 1
    chunk_size: int = constants.CHUNK_SIZE
    min_batches: int = constants.MIN_BATCHES

    # Tolerances
    cls_scale: float = constants.CLS_SCALE
    eps_strict: float = constants.EPS_STRICT
    eps_roi: float = constants.EPS_ROI
    eps_on: float = constants.EPS_ON
    fixed_point_tol: float = constants.FIXED_POINT_TOL
    det_tol: float = constants.DET_TOL
    unitary_tol: float = constants.UNITARY_TOL
    matrix_tol: float = constants.MATRIX_TOL
    limsup_margin: float = constants.LIMSUP_MARGIN
    v_boundary: float = constants.V_BOUNDARY
    fd_step: float = constants.FD_STEP

    # Physics defaults
    mu: float = constants.MU
    mass_window: Tuple[float, float] = constants.MASS_WINDOW
    j_max: int = constants.J_MAX

    # Version
    version: str = __version__

    def tolerances(self) -> Dict[str, float]:
        """Return the tolerance table printed in every report header."""
        return {name: getattr(self, name) for name in constants.TOLERANCE_NAMES}

    def with_overrides(self, overrides: Dict[str, Any]) -> "Config":
        """
        Return a copy with tolerance overrides applied.

        Args:
            overrides: Mapping of tolerance name to positive value

        Returns:
            New Config instance

        Raises:
            ConfigurationError: On unknown names or non-positive values
        """
        updates: Dict[str, float] = {}
        for name, value in overrides.items():
            if name not in constants.TOLERANCE_NAMES:
                raise ConfigurationError(name, f"Unknown tolerance: {name}")
            try:
                number = float(value)
            except (TypeError, ValueError):
                raise ConfigurationError(name, f"Tolerance {name} must be a number, got {value!r}")
            if not number > 0:
                raise ConfigurationError(name, f"Tolerance {name} must be positive, got {number}")
            updates[name] = number
        return replace(self, **updates)


def load_tolerance_file(path: Path) -> Dict[str, Any]:
    """Read a JSON object of tolerance overrides."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigurationError("tolerance_file", f"Tolerance file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigurationError("tolerance_file", f"Tolerance file is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigurationError("tolerance_file", "Tolerance file must contain a JSON object")
    return data


def _int_env(name: str, minimum: int) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(name, f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(name, f"{name} must be >= {minimum}, got {value}")
    return value


def load_config() -> Config:
    """Load configuration from environment variables."""
    updates: Dict[str, Any] = {}

    if data_dir := os.getenv("ACHRONAL_DATA_DIR"):
        updates["data_dir"] = Path(os.path.expanduser(data_dir))

    if log_level := os.getenv("ACHRONAL_LOG_LEVEL"):
        updates["log_level"] = log_level.upper()

    if log_file := os.getenv("ACHRONAL_LOG_FILE"):
        updates["log_file"] = Path(os.path.expanduser(log_file))

    if (seed := _int_env("ACHRONAL_SEED", 0)) is not None:
        updates["seed"] = seed

    if (workers := _int_env("ACHRONAL_WORKERS", 1)) is not None:
        updates["workers"] = workers

    if (chunk_size := _int_env("ACHRONAL_CHUNK_SIZE", 1)) is not None:
        updates["chunk_size"] = chunk_size

    config = Config(**updates)

    if tolerance_file := os.getenv("ACHRONAL_TOLERANCE_FILE"):
        config = config.with_overrides(load_tolerance_file(Path(tolerance_file)))

    return config


# Global config instance (cached)
_config: Optional[Config] = None


def get_config() -> Config:
    """Get cached configuration instance."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def set_config(config: Config) -> None:
    """Install a configuration (used by the CLI after applying flags)."""
    global _config
    _config = config


def reset_config() -> None:
    """Drop the cached configuration so the next call reloads it."""
    global _config
    _config = None
