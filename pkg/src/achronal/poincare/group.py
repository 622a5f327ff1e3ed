"""
The Poincaré group ISL(2,C): group law and actions on R^4, on the space
of timelike lines and on momentum-velocity space.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from achronal.errors import InvalidArgumentError
from achronal.minkowski import FourVector, FourVectorLike, as_array
from achronal.poincare.spinors import (
    SpinorMatrix,
    SpinorLike,
    as_matrix,
    covering_map,
    inverse_matrices,
)
from achronal.utils.validation import require_vectors


@dataclass(frozen=True, eq=False)
class PoincareElement:
    """g = (a, A) with translation a in R^4 and A in SL(2,C)."""

    translation: np.ndarray = field(default_factory=lambda: np.zeros(4))
    spinor: SpinorMatrix = field(default_factory=SpinorMatrix.identity)

    def __post_init__(self):
        translation = np.array(as_array(self.translation), dtype=float)
        if translation.shape != (4,):
            raise InvalidArgumentError("translation", f"expected 4 components, got shape {translation.shape}")
        translation.setflags(write=False)
        object.__setattr__(self, "translation", translation)
        if not isinstance(self.spinor, SpinorMatrix):
            object.__setattr__(self, "spinor", SpinorMatrix(self.spinor))

    @classmethod
    def identity(cls) -> "PoincareElement":
        return cls()

    @classmethod
    def translation_by(cls, a: FourVectorLike) -> "PoincareElement":
        return cls(translation=as_array(a))

    @classmethod
    def lorentz(cls, A: SpinorLike) -> "PoincareElement":
        return cls(spinor=A if isinstance(A, SpinorMatrix) else SpinorMatrix(A))

    @classmethod
    def from_json(cls, values: Sequence[float]) -> "PoincareElement":
        """12 reals: a0..a3 followed by the 8-real spinor layout."""
        data = list(values)
        if len(data) != 12:
            raise InvalidArgumentError("element", f"expected 12 reals, got {len(data)}")
        return cls(np.asarray(data[:4], dtype=float), SpinorMatrix.from_json(data[4:]))

    def to_json(self) -> List[float]:
        return [float(a) for a in self.translation] + self.spinor.to_json()

    def lorentz_matrix(self) -> np.ndarray:
        return covering_map(self.spinor)

    def __mul__(self, other: "PoincareElement") -> "PoincareElement":
        # (a, A)(a', A') = (a + A.a', AA')
        return PoincareElement(
            self.translation + self.lorentz_matrix() @ other.translation,
            self.spinor @ other.spinor,
        )

    def inverse(self) -> "PoincareElement":
        inv = self.spinor.inverse()
        return PoincareElement(-(covering_map(inv) @ self.translation), inv)


@dataclass(frozen=True, eq=False)
class LinePoint:
    """
    Chart point (x, v) of the timelike line (0, x) + R(1, v).

    x and v have shape (3,) or (N, 3) with |v| < 1.
    """

    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        x = require_vectors("x", self.x, 3)
        v = require_vectors("v", self.v, 3)
        if np.any(np.linalg.norm(v, axis=-1) >= 1.0):
            raise InvalidArgumentError("v", "line velocity must satisfy |v| < 1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)

    def __len__(self) -> int:
        return 1 if self.x.ndim == 1 else self.x.shape[0]

    def base_point(self) -> np.ndarray:
        """The x0 = 0 intercept (0, x)."""
        return np.concatenate([np.zeros(self.x.shape[:-1] + (1,)), self.x], axis=-1)

    def direction(self) -> np.ndarray:
        """The direction (1, v)."""
        return np.concatenate([np.ones(self.v.shape[:-1] + (1,)), self.v], axis=-1)


def act_on_point(g: PoincareElement, x: FourVectorLike):
    """g.x = a + Lambda(A) x; returns a FourVector for FourVector input, else an array."""
    result = g.translation + np.einsum("mn,...n->...m", g.lorentz_matrix(), as_array(x))
    if isinstance(x, FourVector):
        return FourVector.from_array(result)
    return result


def star_action(A: SpinorLike, v: np.ndarray) -> np.ndarray:
    """A*v: spatial part of A.(1, v) divided by its time component."""
    v = np.asarray(v, dtype=float)
    w = _lorentz_on(A, _velocity_vectors(v))
    return w[..., 1:] / w[..., :1]


def act_on_line(g: PoincareElement, u: LinePoint) -> LinePoint:
    """
    Transform the line through (0, x) with direction (1, v) by g and read off
    the new chart point at x0 = 0.
    """
    lam = g.lorentz_matrix()
    w = np.einsum("mn,...n->...m", lam, u.direction())
    v_new = w[..., 1:] / w[..., :1]
    y = g.translation + np.einsum("mn,...n->...m", lam, u.base_point())
    x_new = y[..., 1:] - y[..., :1] * v_new
    return LinePoint(x_new, v_new)


def line_action_rn_derivative(g: PoincareElement, u: LinePoint):
    """
    Radon–Nikodym derivative ((A^-1.(1, v))_0)^(-5) of the transported line measure.

    Equals the absolute Jacobian determinant of u -> g^-1.u in the (x, v) chart.
    """
    w0 = _lorentz_on(inverse_matrices(g.spinor.matrix), u.direction())[..., 0]
    return w0 ** -5.0


def act_on_momentum_velocity(
    A: SpinorLike,
    p: np.ndarray,
    v: np.ndarray,
    mu: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    A.(p, v) = (spatial part of A.(E(p, v), p), A*v).

    Args:
        A: Spinor matrix or batch
        p: Momenta, shape (..., 3)
        v: Velocities with |v| < 1, shape (..., 3)
        mu: Casimir parameter entering E(p, v)
    """
    # Local import: spectrum builds on this module
    from achronal.spectrum.observables import energy

    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    momentum = np.concatenate([np.asarray(energy(p, v, mu))[..., None], p], axis=-1)
    return _lorentz_on(A, momentum)[..., 1:], star_action(A, v)


def _velocity_vectors(v: np.ndarray) -> np.ndarray:
    return np.concatenate([np.ones(v.shape[:-1] + (1,)), v], axis=-1)


def _lorentz_on(A: SpinorLike, x: np.ndarray) -> np.ndarray:
    return np.einsum("...mn,...n->...m", covering_map(as_matrix(A)), x)
