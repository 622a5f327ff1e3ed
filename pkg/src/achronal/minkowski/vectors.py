"""
Minkowski vector algebra and causal predicates.

Signature (+,-,-,-), natural units. Every function accepts either a
FourVector or an array whose last axis has length 4 and broadcasts over the
leading axes.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np

from achronal.config import get_config
from achronal.errors import InvalidArgumentError


@dataclass(frozen=True)
class FourVector:
    """A point or vector of R^4."""

    x0: float
    x1: float
    x2: float
    x3: float

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "FourVector":
        array = np.asarray(values, dtype=float)
        if array.shape != (4,):
            raise InvalidArgumentError("values", f"FourVector needs 4 components, got shape {array.shape}")
        return cls(*(float(c) for c in array))

    @classmethod
    def from_parts(cls, t: float, x: Sequence[float]) -> "FourVector":
        """Build (t, x) from a time and a spatial 3-vector."""
        return cls(float(t), *(float(c) for c in x))

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3], dtype=float)

    def spatial(self) -> np.ndarray:
        """Spatial projection (x1, x2, x3)."""
        return np.array([self.x1, self.x2, self.x3], dtype=float)

    def dot(self, other: "FourVectorLike") -> float:
        return float(minkowski_product(self, other))

    def square(self) -> float:
        return self.dot(self)

    def to_list(self) -> List[float]:
        return [self.x0, self.x1, self.x2, self.x3]

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() + as_array(other))

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() - as_array(other))

    def __neg__(self) -> "FourVector":
        return FourVector(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, scalar: float) -> "FourVector":
        return FourVector.from_array(self.as_array() * float(scalar))

    __rmul__ = __mul__


FourVectorLike = Union[FourVector, np.ndarray, Sequence[float]]


class CausalClass(str, Enum):
    """Causal character of a single vector."""
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike-nonzero"
    ZERO = "zero"


class Separation(str, Enum):
    """Causal relation between two points."""
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"
    EQUAL = "equal"


def as_array(z: FourVectorLike) -> np.ndarray:
    """Return z as a float array with trailing axis 4."""
    if isinstance(z, FourVector):
        return z.as_array()
    array = np.asarray(z, dtype=float)
    if array.ndim == 0 or array.shape[-1] != 4:
        raise InvalidArgumentError("z", f"expected trailing dimension 4, got shape {array.shape}")
    return array


def spatial(z: FourVectorLike) -> np.ndarray:
    """Spatial projection of one or many four-vectors."""
    return as_array(z)[..., 1:]


def minkowski_product(a: FourVectorLike, b: FourVectorLike):
    """a0*b0 - a.b, broadcasting over leading axes."""
    a = as_array(a)
    b = as_array(b)
    return a[..., 0] * b[..., 0] - np.sum(a[..., 1:] * b[..., 1:], axis=-1)


def classification_tolerance(z: FourVectorLike, scale: Optional[float] = None):
    """Absolute tolerance for sign tests of z·z: scale * max(1, |z|_euclid^2)."""
    if scale is None:
        scale = get_config().cls_scale
    z = as_array(z)
    return scale * np.maximum(1.0, np.sum(z * z, axis=-1))


def _signs(z: np.ndarray, scale: Optional[float] = None) -> np.ndarray:
    """+1 timelike, -1 spacelike, 0 on the cone (within tolerance)."""
    square = minkowski_product(z, z)
    tol = classification_tolerance(z, scale)
    return np.where(square > tol, 1, np.where(square < -tol, -1, 0))


def classify(z: FourVectorLike, scale: Optional[float] = None) -> CausalClass:
    """Causal class of a single vector."""
    z = as_array(z)
    if z.shape != (4,):
        raise InvalidArgumentError("z", "classify expects a single four-vector; use causal_signs for batches")
    if not np.any(z):
        return CausalClass.ZERO
    sign = int(_signs(z, scale))
    if sign > 0:
        return CausalClass.TIMELIKE
    if sign < 0:
        return CausalClass.SPACELIKE
    return CausalClass.LIGHTLIKE


def causal_signs(z: FourVectorLike, scale: Optional[float] = None) -> np.ndarray:
    """Vectorized classification: +1 timelike, -1 spacelike, 0 lightlike or zero."""
    return _signs(as_array(z), scale)


def separation(x: FourVectorLike, y: FourVectorLike, scale: Optional[float] = None) -> Separation:
    """Causal relation between two points."""
    diff = as_array(x) - as_array(y)
    cls = classify(diff, scale)
    if cls == CausalClass.ZERO:
        return Separation.EQUAL
    if cls == CausalClass.LIGHTLIKE:
        return Separation.LIGHTLIKE
    return Separation(cls.value)


def is_perp(x: FourVectorLike, y: FourVectorLike, scale: Optional[float] = None):
    """
    Achronal separation x ⊥ y: x != y and (x - y)·(x - y) <= 0.

    Broadcasts; returns a bool for single points and a bool array otherwise.
    """
    diff = as_array(x) - as_array(y)
    distinct = np.any(diff != 0.0, axis=-1)
    result = distinct & (_signs(diff, scale) <= 0)
    if np.ndim(result) == 0:
        return bool(result)
    return result


def is_timelike_separated(x: FourVectorLike, y: FourVectorLike, scale: Optional[float] = None):
    """True where (x - y)·(x - y) > 0 beyond tolerance."""
    result = _signs(as_array(x) - as_array(y), scale) > 0
    if np.ndim(result) == 0:
        return bool(result)
    return result
