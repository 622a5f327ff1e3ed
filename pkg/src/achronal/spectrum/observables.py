"""
Energy and mass-squared on momentum-velocity space.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from achronal.config import get_config
from achronal.errors import InvalidArgumentError
from achronal.utils.validation import require_positive, require_vectors, require_velocity


@dataclass(frozen=True, eq=False)
class MomentumVelocityPoint:
    """(p, v) with |v| < 1 in the context of the Casimir parameter mu."""

    p: np.ndarray
    v: np.ndarray
    mu: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "p", require_vectors("p", self.p, 3))
        object.__setattr__(self, "v", require_velocity("v", self.v))
        object.__setattr__(self, "mu", require_positive("mu", self.mu))

    def energy(self):
        return energy(self.p, self.v, self.mu)

    def mass_squared(self):
        return mass_squared(self.p, self.v, self.mu)

    def four_momentum(self) -> np.ndarray:
        """(E(p, v), p)."""
        e = np.asarray(self.energy())
        return np.concatenate([e[..., None], np.broadcast_to(self.p, e.shape + (3,))], axis=-1)


def _mu(mu: Optional[float]) -> float:
    return get_config().mu if mu is None else require_positive("mu", mu)


def _scalar(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def energy(p, v, mu: Optional[float] = None):
    """E(p, v) = p.v + mu sqrt(1 - |v|^2)."""
    p = require_vectors("p", p, 3)
    v = require_velocity("v", v)
    mu = _mu(mu)
    return _scalar(np.sum(p * v, axis=-1) + mu * np.sqrt(1.0 - np.sum(v * v, axis=-1)))


def mass_squared(p, v, mu: Optional[float] = None):
    """gamma(p, v) = E(p, v)^2 - |p|^2; never exceeds mu^2."""
    p = require_vectors("p", p, 3)
    e = np.asarray(energy(p, v, mu))
    return _scalar(e * e - np.sum(p * p, axis=-1))


def in_pi(p, v, mu: Optional[float] = None):
    """Membership in {E > 0, gamma >= 0}."""
    e = np.asarray(energy(p, v, mu))
    gamma = np.asarray(mass_squared(p, v, mu))
    result = (e > 0) & (gamma >= 0)
    return bool(result) if np.ndim(result) == 0 else result


def in_pi_by_gap(p, v, mu: Optional[float] = None):
    """Membership in {E - |p| >= 0}, the same set as in_pi up to the point E = |p| = 0."""
    p = require_vectors("p", p, 3)
    e = np.asarray(energy(p, v, mu))
    result = e - np.linalg.norm(p, axis=-1) >= 0
    return bool(result) if np.ndim(result) == 0 else result


def on_shell_momentum(m, p) -> np.ndarray:
    """(epsilon(p), p) with epsilon(p) = sqrt(m^2 + |p|^2); m may be a batch."""
    p = require_vectors("p", p, 3)
    m = np.asarray(m, dtype=float)
    if np.any(~(m > 0)):
        raise InvalidArgumentError("m", "mass must be positive")
    eps = np.asarray(np.sqrt(m * m + np.sum(p * p, axis=-1)))
    return np.concatenate([eps[..., None], np.broadcast_to(p, eps.shape + (3,))], axis=-1)


__all__ = [
    "MomentumVelocityPoint",
    "energy",
    "mass_squared",
    "in_pi",
    "in_pi_by_gap",
    "on_shell_momentum",
]
