"""
Parameter and point types of the mass-spectrum decomposition.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from achronal import constants
from achronal.errors import InvalidArgumentError
from achronal.utils.validation import as_twice_spin, require_unit_vector, require_vectors


class SpinContext(BaseModel):
    """
    Fixed data of the inducing representation: spin J, Casimir parameter mu,
    the Peter-Weyl truncation l_max and the mass window used by interval tests.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    spin: Union[int, float, str] = Field(default=0, description="Spin J as 0, 0.5, '3/2', ...")
    mu: float = Field(default=constants.MU, gt=0.0, description="Casimir parameter")
    l_max: int = Field(default=0, ge=0, description="Peter-Weyl truncation")
    mass_window: Tuple[float, float] = Field(default=constants.MASS_WINDOW, description="Masses sampled by interval tests")

    @field_validator("spin")
    @classmethod
    def validate_spin(cls, v):
        try:
            twice = as_twice_spin("spin", Fraction(v) if isinstance(v, str) else v)
        except (InvalidArgumentError, ValueError, ZeroDivisionError) as e:
            raise ValueError(f"spin must be a non-negative half-integer, got {v!r}") from e
        if twice > 2 * constants.J_MAX:
            raise ValueError(f"spin must not exceed {constants.J_MAX}")
        return v

    @model_validator(mode="after")
    def validate_window(self):
        low, high = self.mass_window
        if not 0.0 < low < high < self.mu:
            raise ValueError("mass window must satisfy 0 < low < high < mu")
        return self

    @property
    def twice_j(self) -> int:
        spin = Fraction(self.spin) if isinstance(self.spin, str) else self.spin
        return as_twice_spin("spin", spin)

    @property
    def J(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def dimension(self) -> int:
        return self.twice_j + 1


@dataclass(frozen=True, eq=False)
class MassShellPoint:
    """(m, p, omega) with 0 < m < mu and |omega| = 1."""

    m: float
    p: np.ndarray
    omega: np.ndarray
    mu: float = constants.MU

    def __post_init__(self):
        if not 0.0 < self.m < self.mu:
            raise InvalidArgumentError("m", f"mass must lie in (0, {self.mu}), got {self.m}")
        object.__setattr__(self, "p", require_vectors("p", self.p, 3))
        object.__setattr__(self, "omega", require_unit_vector("omega", self.omega))

    def as_arrays(self, ctx: Optional[SpinContext] = None):
        return np.asarray(self.m, dtype=float), self.p, self.omega


__all__ = ["SpinContext", "MassShellPoint"]
