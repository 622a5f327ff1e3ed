"""
Closed-form state densities on line space.

Only |psi(x, v)|^2 enters quadratic forms of the canonical localization, so a
state is represented by its probability density rho on R^3 x O1 together
with a sampler for it: an isotropic Gaussian in the intercept x times a
rotation-invariant law for the velocity v, truncated at |v| = r_max < 1.
"""

from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import erf

from achronal import constants
from achronal.poincare.spinors import random_unit_vectors
from achronal.surfaces.models import Vector3
from achronal.utils.validation import require_count

_DEFAULT_R_MAX = 1.0 - constants.V_BOUNDARY


class VelocityLaw(str, Enum):
    UNIFORM = "uniform"
    TRUNCATED_GAUSSIAN = "truncated_gaussian"


class StateDensity(BaseModel):
    """
    rho(x, v) = N(x; center, sigma^2 I) * q(v) on R^3 x {|v| < r_max}.

    `spinor_dim` records the dimension d = 2J + 1 of the spinor values; it
    does not enter the density.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    center: Vector3 = Field(default=(0.0, 0.0, 0.0), description="Mean intercept")
    sigma: float = Field(default=1.0, gt=0.0, description="Intercept standard deviation")
    velocity: VelocityLaw = Field(default=VelocityLaw.UNIFORM, description="Velocity law")
    velocity_sigma: float = Field(default=0.5, gt=0.0, description="Scale of the truncated Gaussian velocity law")
    r_max: float = Field(default=_DEFAULT_R_MAX, gt=0.0, lt=1.0, description="Velocity cutoff |v| < r_max")
    spinor_dim: int = Field(default=1, ge=1, description="Spinor dimension d")

    @model_validator(mode="after")
    def validate_cutoff(self):
        if self.r_max > _DEFAULT_R_MAX:
            raise ValueError(f"r_max must stay at most 1 - {constants.V_BOUNDARY}")
        return self

    # -- velocity law -------------------------------------------------------

    def _gaussian_mass(self, radius: float) -> float:
        """Integral of exp(-|v|^2 / 2 s^2) over the ball of the given radius."""
        s = self.velocity_sigma
        z = radius / (np.sqrt(2.0) * s)
        return float(
            (2.0 * np.pi * s * s) ** 1.5
            * (erf(z) - np.sqrt(2.0 / np.pi) * (radius / s) * np.exp(-z * z))
        )

    def velocity_density(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        speed = np.linalg.norm(v, axis=-1)
        inside = speed < self.r_max
        if self.velocity == VelocityLaw.UNIFORM:
            value = np.full(speed.shape, 1.0 / (constants.VOL_UNIT_BALL * self.r_max ** 3))
        else:
            s = self.velocity_sigma
            value = np.exp(-speed ** 2 / (2.0 * s * s)) / self._gaussian_mass(self.r_max)
        return np.where(inside, value, 0.0)

    def excluded_mass(self) -> float:
        """Mass of the untruncated law (on the open unit ball) in the shell r_max <= |v| < 1."""
        if self.velocity == VelocityLaw.UNIFORM:
            return 1.0 - self.r_max ** 3
        return 1.0 - self._gaussian_mass(self.r_max) / self._gaussian_mass(1.0)

    def sample_velocities(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.velocity == VelocityLaw.UNIFORM:
            # Radial inverse CDF: P(|v| <= r) = (r / r_max)^3
            radius = self.r_max * rng.uniform(0.0, 1.0, size) ** (1.0 / 3.0)
            return radius[:, None] * random_unit_vectors(rng, size)
        out = np.empty((size, 3))
        filled = 0
        while filled < size:
            draw = rng.normal(0.0, self.velocity_sigma, (2 * (size - filled) + 16, 3))
            keep = draw[np.linalg.norm(draw, axis=-1) < self.r_max]
            take = min(keep.shape[0], size - filled)
            out[filled:filled + take] = keep[:take]
            filled += take
        return out

    # -- full density ---------------------------------------------------------

    def position_density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        diff = x - np.asarray(self.center)
        norm = (2.0 * np.pi * self.sigma ** 2) ** -1.5
        return norm * np.exp(-np.sum(diff * diff, axis=-1) / (2.0 * self.sigma ** 2))

    def density(self, x, v) -> np.ndarray:
        """rho(x, v) with respect to d^3x d^3v."""
        return self.position_density(x) * self.velocity_density(v)

    def sample(self, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        """Draw `size` lines (x, v) from rho."""
        size = require_count("size", size, minimum=0)
        x = rng.normal(np.asarray(self.center), self.sigma, (size, 3))
        v = self.sample_velocities(rng, size)
        return x, v

    def with_center(self, center: Optional[Vector3]) -> "StateDensity":
        return self.model_copy(update={"center": tuple(center)}) if center is not None else self


__all__ = ["VelocityLaw", "StateDensity"]
