"""
Argument validators shared by the numerical kernels.

Each validator returns the normalized value or raises InvalidArgumentError.
"""

from fractions import Fraction
from typing import Optional, Union

import numpy as np

from achronal.errors import InvalidArgumentError

Spin = Union[int, float, Fraction]


def require_positive(name: str, value: float) -> float:
    """Require a finite, strictly positive real."""
    number = float(value)
    if not np.isfinite(number) or number <= 0:
        raise InvalidArgumentError(name, f"{name} must be positive, got {value}")
    return number


def require_count(name: str, value: int, minimum: int = 1) -> int:
    """Require an integer >= minimum."""
    if isinstance(value, bool) or int(value) != value or int(value) < minimum:
        raise InvalidArgumentError(name, f"{name} must be an integer >= {minimum}, got {value}")
    return int(value)


def require_vectors(name: str, value, dim: int) -> np.ndarray:
    """Return a float array whose last axis has length `dim`."""
    array = np.asarray(value, dtype=float)
    if array.ndim == 0 or array.shape[-1] != dim:
        raise InvalidArgumentError(name, f"{name} must have trailing dimension {dim}, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidArgumentError(name, f"{name} contains non-finite entries")
    return array


def require_velocity(name: str, value) -> np.ndarray:
    """Require 3-velocities with |v| < 1."""
    v = require_vectors(name, value, 3)
    if np.any(np.linalg.norm(v, axis=-1) >= 1.0):
        raise InvalidArgumentError(name, f"{name} must satisfy |v| < 1")
    return v


def require_unit_vector(name: str, value, tol: float = 1e-12) -> np.ndarray:
    """Require 3-vectors of Euclidean norm 1 (within tol)."""
    w = require_vectors(name, value, 3)
    if np.any(np.abs(np.linalg.norm(w, axis=-1) - 1.0) > tol):
        raise InvalidArgumentError(name, f"{name} must be unit vectors")
    return w


def as_twice_spin(name: str, value: Spin) -> int:
    """
    Convert a half-integer spin into the integer 2j.

    Accepts ints, Fractions and floats such as 0.5 or 1.5.
    """
    doubled = Fraction(value) * 2
    if doubled.denominator != 1 or doubled < 0:
        raise InvalidArgumentError(name, f"{name} must be a non-negative half-integer, got {value}")
    return int(doubled)


def require_half_integer(name: str, value: Spin, maximum: Optional[Spin] = None) -> Fraction:
    """Require a non-negative half-integer, optionally bounded above."""
    twice = as_twice_spin(name, value)
    if maximum is not None and twice > as_twice_spin("maximum", maximum):
        raise InvalidArgumentError(name, f"{name} must be <= {maximum}, got {value}")
    return Fraction(twice, 2)
