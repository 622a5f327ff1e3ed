"""
Achronal surfaces, spatial sets and regions.

A maximal achronal surface is the graph {(tau(x), x)} of a 1-Lipschitz
function tau on R^3. A spatial set is a tree of indicator nodes over R^3 and
a region is a spatial set lifted onto a surface.

All models are pydantic models so that the JSON inputs of the command line
parse directly into them; numerical methods broadcast over arrays of shape
(..., 3).
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Annotated, Any, ClassVar, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, TypeAdapter, field_validator, model_validator
from scipy.interpolate import RegularGridInterpolator

from achronal import constants
from achronal.errors import InvalidArgumentError

Vector3 = Tuple[float, float, float]
BoundingBox = Tuple[np.ndarray, np.ndarray]

# Slack for |w| = 1 and for grid slopes that are 1 up to roundoff
_UNIT_SLACK = 1e-12


class SurfaceKind(str, Enum):
    """Built-in surface families."""
    FLAT = "flat"
    TILTED = "tilted"
    LIGHTCONE = "lightcone"
    SQRTSHELL = "sqrtshell"
    CLAMP = "clamp"
    KINK = "kink"
    GRID = "grid"


class SetKind(str, Enum):
    """Node types of a spatial set tree."""
    BALL = "ball"
    HALFSPACE = "halfspace"
    BOX = "box"
    COMPLEMENT = "complement"
    UNION = "union"
    INTERSECTION = "intersection"
    EVERYTHING = "everything"
    EMPTY = "empty"
    AFFINE = "affine"


@dataclass(frozen=True)
class LightlikeLine:
    """The lightlike line a + R(1, omega) with |omega| = 1."""
    a: np.ndarray
    omega: np.ndarray

    def to_dict(self) -> dict:
        return {"a": [float(c) for c in self.a], "omega": [float(c) for c in self.omega]}


def _points(x) -> np.ndarray:
    array = np.asarray(x, dtype=float)
    if array.ndim == 0 or array.shape[-1] != 3:
        raise InvalidArgumentError("x", f"expected spatial points with trailing dimension 3, got {array.shape}")
    return array


# ---------------------------------------------------------------------------
# Spatial sets
# ---------------------------------------------------------------------------

class BaseSet(BaseModel):
    """Common interface of spatial set nodes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    def contains(self, x) -> np.ndarray:
        """Boolean membership for points of shape (..., 3)."""
        raise NotImplementedError

    def depth(self) -> int:
        return 1

    def bounding_box(self) -> Optional[BoundingBox]:
        """Axis-aligned box containing the set, or None if unbounded."""
        return None

    def volume(self) -> Optional[float]:
        """Lebesgue measure when a closed form exists."""
        return None

    def is_bounded(self) -> bool:
        return self.bounding_box() is not None

    def affine_image(self, matrix: np.ndarray, offset: np.ndarray) -> "SpatialSet":
        """Image {M x + b : x in set}; simplified where the node type is closed under it."""
        return AffineImage(
            of=self,
            matrix=tuple(tuple(float(c) for c in row) for row in np.asarray(matrix, dtype=float)),
            offset=tuple(float(c) for c in offset),
        )


class Ball(BaseSet):
    """Closed ball |x - center| <= radius."""
    kind: Literal["ball"] = "ball"
    center: Vector3 = Field(default=(0.0, 0.0, 0.0), description="Centre of the ball")
    radius: float = Field(..., ge=0.0, description="Radius (zero gives a null set)")

    def contains(self, x) -> np.ndarray:
        x = _points(x)
        return np.linalg.norm(x - np.asarray(self.center), axis=-1) <= self.radius

    def bounding_box(self) -> BoundingBox:
        c = np.asarray(self.center)
        return c - self.radius, c + self.radius

    def volume(self) -> float:
        return constants.VOL_UNIT_BALL * self.radius ** 3

    def affine_image(self, matrix, offset) -> "SpatialSet":
        matrix = np.asarray(matrix, dtype=float)
        if np.allclose(matrix @ matrix.T, np.eye(3), atol=1e-12):
            center = matrix @ np.asarray(self.center) + np.asarray(offset, dtype=float)
            return Ball(center=tuple(float(c) for c in center), radius=self.radius)
        return super().affine_image(matrix, offset)


class Halfspace(BaseSet):
    """Closed halfspace normal . x <= offset."""
    kind: Literal["halfspace"] = "halfspace"
    normal: Vector3 = Field(..., description="Outward normal (need not be unit)")
    offset: float = Field(default=0.0, description="Right-hand side of normal . x <= offset")

    @field_validator("normal")
    @classmethod
    def validate_normal(cls, v):
        if not np.any(np.asarray(v, dtype=float)):
            raise ValueError("halfspace normal must be nonzero")
        return v

    def contains(self, x) -> np.ndarray:
        x = _points(x)
        return x @ np.asarray(self.normal) <= self.offset

    def unit_form(self) -> Tuple[np.ndarray, float]:
        """(n, beta) with |n| = 1 describing the same halfspace."""
        n = np.asarray(self.normal, dtype=float)
        norm = np.linalg.norm(n)
        return n / norm, self.offset / norm

    def affine_image(self, matrix, offset) -> "SpatialSet":
        # n . x <= c with x = M^-1 (x' - b) becomes (M^-T n) . x' <= c + (M^-T n) . b
        inverse_t = np.linalg.inv(np.asarray(matrix, dtype=float)).T
        normal = inverse_t @ np.asarray(self.normal)
        rhs = self.offset + float(normal @ np.asarray(offset, dtype=float))
        return Halfspace(normal=tuple(float(c) for c in normal), offset=rhs)


class Box(BaseSet):
    """Half-open box lower <= x < upper."""
    kind: Literal["box"] = "box"
    lower: Vector3 = Field(..., description="Lower corner (inclusive)")
    upper: Vector3 = Field(..., description="Upper corner (exclusive)")

    @model_validator(mode="after")
    def validate_corners(self):
        if np.any(np.asarray(self.upper) <= np.asarray(self.lower)):
            raise ValueError("box upper corner must exceed the lower corner in every coordinate")
        return self

    def contains(self, x) -> np.ndarray:
        x = _points(x)
        return np.all((x >= np.asarray(self.lower)) & (x < np.asarray(self.upper)), axis=-1)

    def bounding_box(self) -> BoundingBox:
        return np.asarray(self.lower, dtype=float), np.asarray(self.upper, dtype=float)

    def volume(self) -> float:
        return float(np.prod(np.asarray(self.upper) - np.asarray(self.lower)))

    def affine_image(self, matrix, offset) -> "SpatialSet":
        if np.array_equal(np.asarray(matrix, dtype=float), np.eye(3)):
            shift = np.asarray(offset, dtype=float)
            return Box(
                lower=tuple(float(c) for c in np.asarray(self.lower) + shift),
                upper=tuple(float(c) for c in np.asarray(self.upper) + shift),
            )
        return super().affine_image(matrix, offset)


class Everything(BaseSet):
    kind: Literal["everything"] = "everything"

    def contains(self, x) -> np.ndarray:
        return np.ones(_points(x).shape[:-1], dtype=bool)

    def affine_image(self, matrix, offset) -> "SpatialSet":
        return self


class EmptySet(BaseSet):
    kind: Literal["empty"] = "empty"

    def contains(self, x) -> np.ndarray:
        return np.zeros(_points(x).shape[:-1], dtype=bool)

    def bounding_box(self) -> BoundingBox:
        return np.zeros(3), np.zeros(3)

    def volume(self) -> float:
        return 0.0

    def affine_image(self, matrix, offset) -> "SpatialSet":
        return self


class _CompositeSet(BaseSet):
    """Nodes with children; enforces the tree depth limit."""

    def children(self) -> List["SpatialSet"]:
        raise NotImplementedError

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.children()), default=0)

    @model_validator(mode="after")
    def validate_depth(self):
        if self.depth() > constants.SET_DEPTH_LIMIT:
            raise ValueError(f"spatial set tree deeper than {constants.SET_DEPTH_LIMIT}")
        return self


class Complement(_CompositeSet):
    """Open complement of a set (complement of a closed ball is open)."""
    kind: Literal["complement"] = "complement"
    of: "SpatialSet"

    def children(self) -> List["SpatialSet"]:
        return [self.of]

    def contains(self, x) -> np.ndarray:
        return ~self.of.contains(x)

    def affine_image(self, matrix, offset) -> "SpatialSet":
        return Complement(of=self.of.affine_image(matrix, offset))


class UnionSet(_CompositeSet):
    kind: Literal["union"] = "union"
    members: List["SpatialSet"] = Field(default_factory=list)

    def children(self) -> List["SpatialSet"]:
        return list(self.members)

    def contains(self, x) -> np.ndarray:
        result = np.zeros(_points(x).shape[:-1], dtype=bool)
        for member in self.members:
            result |= member.contains(x)
        return result

    def bounding_box(self) -> Optional[BoundingBox]:
        boxes = [member.bounding_box() for member in self.members if not isinstance(member, EmptySet)]
        if not boxes:
            return np.zeros(3), np.zeros(3)
        if any(box is None for box in boxes):
            return None
        return np.min([b[0] for b in boxes], axis=0), np.max([b[1] for b in boxes], axis=0)

    def volume(self) -> Optional[float]:
        if len(self.members) == 1:
            return self.members[0].volume()
        if not self.members:
            return 0.0
        return None

    def affine_image(self, matrix, offset) -> "SpatialSet":
        return UnionSet(members=[m.affine_image(matrix, offset) for m in self.members])


class IntersectionSet(_CompositeSet):
    kind: Literal["intersection"] = "intersection"
    members: List["SpatialSet"] = Field(default_factory=list)

    def children(self) -> List["SpatialSet"]:
        return list(self.members)

    def contains(self, x) -> np.ndarray:
        result = np.ones(_points(x).shape[:-1], dtype=bool)
        for member in self.members:
            result &= member.contains(x)
        return result

    def bounding_box(self) -> Optional[BoundingBox]:
        boxes = [box for box in (member.bounding_box() for member in self.members) if box is not None]
        if not boxes:
            return None
        lower = np.max([b[0] for b in boxes], axis=0)
        upper = np.maximum(np.min([b[1] for b in boxes], axis=0), lower)
        return lower, upper

    def volume(self) -> Optional[float]:
        if len(self.members) == 1:
            return self.members[0].volume()
        return None

    def affine_image(self, matrix, offset) -> "SpatialSet":
        return IntersectionSet(members=[m.affine_image(matrix, offset) for m in self.members])


class AffineImage(_CompositeSet):
    """{M x + offset : x in of} for invertible M."""
    kind: Literal["affine"] = "affine"
    of: "SpatialSet"
    matrix: Tuple[Vector3, Vector3, Vector3]
    offset: Vector3 = (0.0, 0.0, 0.0)

    @field_validator("matrix")
    @classmethod
    def validate_matrix(cls, v):
        if abs(np.linalg.det(np.asarray(v, dtype=float))) < 1e-12:
            raise ValueError("affine map must be invertible")
        return v

    def children(self) -> List["SpatialSet"]:
        return [self.of]

    def contains(self, x) -> np.ndarray:
        x = _points(x)
        inverse = np.linalg.inv(np.asarray(self.matrix))
        preimage = (x - np.asarray(self.offset)) @ inverse.T
        return self.of.contains(preimage)

    def bounding_box(self) -> Optional[BoundingBox]:
        inner = self.of.bounding_box()
        if inner is None:
            return None
        corners = np.array(list(product(*zip(inner[0], inner[1]))))
        images = corners @ np.asarray(self.matrix).T + np.asarray(self.offset)
        return images.min(axis=0), images.max(axis=0)

    def volume(self) -> Optional[float]:
        inner = self.of.volume()
        if inner is None:
            return None
        return abs(float(np.linalg.det(np.asarray(self.matrix)))) * inner

    def affine_image(self, matrix, offset) -> "SpatialSet":
        outer = np.asarray(matrix, dtype=float)
        combined = outer @ np.asarray(self.matrix)
        shift = outer @ np.asarray(self.offset) + np.asarray(offset, dtype=float)
        return AffineImage(
            of=self.of,
            matrix=tuple(tuple(float(c) for c in row) for row in combined),
            offset=tuple(float(c) for c in shift),
        )


SpatialSet = Annotated[
    Union[Ball, Halfspace, Box, Complement, UnionSet, IntersectionSet, Everything, EmptySet, AffineImage],
    Field(discriminator="kind"),
]

for _model in (Complement, UnionSet, IntersectionSet, AffineImage):
    _model.model_rebuild()

SPATIAL_SET_ADAPTER: TypeAdapter = TypeAdapter(SpatialSet)


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------

class BaseSurface(BaseModel):
    """Graph x0 = tau(x) of a 1-Lipschitz function."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    is_c1: ClassVar[bool] = False

    def tau(self, x) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, x) -> np.ndarray:
        raise InvalidArgumentError("surface", f"{self.kind} surface is not continuously differentiable")

    def lipschitz_bound(self) -> float:
        """Declared Lipschitz constant (at most 1)."""
        return 1.0

    def linear_form(self) -> Optional[Tuple[float, np.ndarray]]:
        """(t0, w) when tau(x) = t0 + w . x."""
        return None

    def lightlike_miss_witness(self) -> Optional[LightlikeLine]:
        """A lightlike line known in closed form to miss the graph."""
        return None

    def lift(self, x) -> np.ndarray:
        """Events (tau(x), x) of shape (..., 4)."""
        x = _points(x)
        return np.concatenate([np.asarray(self.tau(x))[..., None], x], axis=-1)

    def on_surface(self, z, tol: float) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        return np.abs(z[..., 0] - self.tau(z[..., 1:])) <= tol


class FlatSurface(BaseSurface):
    """The spacelike hyperplane x0 = t0."""
    kind: Literal["flat"] = "flat"
    t0: float = Field(default=0.0, description="Time of the slice")

    is_c1: ClassVar[bool] = True

    def tau(self, x) -> np.ndarray:
        return np.full(_points(x).shape[:-1], self.t0)

    def gradient(self, x) -> np.ndarray:
        return np.zeros_like(_points(x))

    def lipschitz_bound(self) -> float:
        return 0.0

    def linear_form(self) -> Tuple[float, np.ndarray]:
        return self.t0, np.zeros(3)


class TiltedPlane(BaseSurface):
    """Hyperplane x0 = offset + w . x with |w| <= 1; |w| = 1 is achronal but not spacelike."""
    kind: Literal["tilted"] = "tilted"
    w: Vector3 = Field(..., description="Slope vector, |w| <= 1")
    offset: float = Field(default=0.0, description="Value of tau at the origin")

    is_c1: ClassVar[bool] = True

    @field_validator("w")
    @classmethod
    def validate_slope(cls, v):
        if np.linalg.norm(np.asarray(v, dtype=float)) > 1.0 + _UNIT_SLACK:
            raise ValueError(f"tilted plane needs |w| <= 1, got |w| = {np.linalg.norm(v)}")
        return v

    def tau(self, x) -> np.ndarray:
        return self.offset + _points(x) @ np.asarray(self.w)

    def gradient(self, x) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.w, dtype=float), _points(x).shape).copy()

    def lipschitz_bound(self) -> float:
        return float(np.linalg.norm(self.w))

    def linear_form(self) -> Tuple[float, np.ndarray]:
        return self.offset, np.asarray(self.w, dtype=float)

    def is_null(self) -> bool:
        return abs(np.linalg.norm(self.w) - 1.0) <= _UNIT_SLACK

    def lightlike_miss_witness(self) -> Optional[LightlikeLine]:
        # Along omega = w the residual a0 - offset - w . a is constant
        if not self.is_null():
            return None
        w = np.asarray(self.w, dtype=float)
        return LightlikeLine(np.array([self.offset + 1.0, 0.0, 0.0, 0.0]), w / np.linalg.norm(w))


class LightCone(BaseSurface):
    """Future light cone tau(x) = |x|."""
    kind: Literal["lightcone"] = "lightcone"

    def tau(self, x) -> np.ndarray:
        return np.linalg.norm(_points(x), axis=-1)

    def lightlike_miss_witness(self) -> LightlikeLine:
        return LightlikeLine(np.array([-1.0, 0.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]))


class SqrtShell(BaseSurface):
    """Hyperboloid tau(x) = sqrt(|x|^2 + a^2): spacelike, maximal, not a causal base."""
    kind: Literal["sqrtshell"] = "sqrtshell"
    a: float = Field(default=1.0, gt=0.0, description="Proper time of the shell")

    is_c1: ClassVar[bool] = True

    def tau(self, x) -> np.ndarray:
        x = _points(x)
        return np.sqrt(np.sum(x * x, axis=-1) + self.a ** 2)

    def gradient(self, x) -> np.ndarray:
        x = _points(x)
        return x / self.tau(x)[..., None]

    def lightlike_miss_witness(self) -> LightlikeLine:
        # s = sqrt(s^2 + a^2) has no solution
        return LightlikeLine(np.zeros(4), np.array([1.0, 0.0, 0.0]))


class ClampSurface(BaseSurface):
    """tau(x) = min(max(x3, lower), upper): a Cauchy surface that is not spacelike."""
    kind: Literal["clamp"] = "clamp"
    lower: float = Field(default=0.0, description="Level of the lower flat piece")
    upper: float = Field(default=1.0, description="Level of the upper flat piece")

    @model_validator(mode="after")
    def validate_levels(self):
        if not self.upper > self.lower:
            raise ValueError("clamp needs upper > lower")
        return self

    def tau(self, x) -> np.ndarray:
        return np.clip(_points(x)[..., 2], self.lower, self.upper)


class KinkSurface(BaseSurface):
    """tau(x) = max(0, slope * x3): spacelike and a causal base, but not differentiable."""
    kind: Literal["kink"] = "kink"
    slope: float = Field(default=0.5, gt=0.0, lt=1.0, description="Slope of the tilted half")

    def tau(self, x) -> np.ndarray:
        return np.maximum(0.0, self.slope * _points(x)[..., 2])

    def lipschitz_bound(self) -> float:
        return self.slope


class GridSurface(BaseSurface):
    """
    Tabulated tau on a rectilinear grid with multilinear interpolation.

    Points outside the grid are clamped onto it, which keeps the Lipschitz
    constant. The bound reported by `lipschitz_bound` is the largest cell
    gradient norm the interpolant can reach; it must not exceed 1.
    """
    kind: Literal["grid"] = "grid"
    axes: Tuple[List[float], List[float], List[float]] = Field(..., description="Strictly increasing grid axes")
    values: List[List[List[float]]] = Field(..., description="tau at the grid nodes, shape (n1, n2, n3)")

    _interpolator: Any = PrivateAttr(default=None)
    _slope_bound: float = PrivateAttr(default=0.0)

    @field_validator("axes")
    @classmethod
    def validate_axes(cls, v):
        for axis in v:
            points = np.asarray(axis, dtype=float)
            if points.size < 2 or np.any(np.diff(points) <= 0):
                raise ValueError("grid axes need at least two strictly increasing points")
        return v

    @model_validator(mode="after")
    def validate_values(self):
        values = np.asarray(self.values, dtype=float)
        shape = tuple(len(axis) for axis in self.axes)
        if values.shape != shape:
            raise ValueError(f"grid values must have shape {shape}, got {values.shape}")
        bound = self._cell_slope_bound(values)
        if bound > 1.0 + _UNIT_SLACK:
            raise ValueError(f"grid interpolant is not 1-Lipschitz (slope bound {bound:.6f})")
        return self

    def model_post_init(self, __context: Any) -> None:
        values = np.asarray(self.values, dtype=float)
        self._interpolator = RegularGridInterpolator(
            tuple(np.asarray(a, dtype=float) for a in self.axes), values, method="linear"
        )
        self._slope_bound = self._cell_slope_bound(values)

    def _cell_slope_bound(self, values: np.ndarray) -> float:
        """
        Max over cells of sqrt(sum_i s_i^2), s_i the largest |difference quotient|
        among the four cell edges along axis i.
        """
        cell_slopes = []
        for i, axis in enumerate(self.axes):
            spacing = np.diff(np.asarray(axis, dtype=float))
            shape = [1, 1, 1]
            shape[i] = -1
            slopes = np.abs(np.diff(values, axis=i)) / spacing.reshape(shape)
            others = [k for k in range(3) if k != i]
            for k in others:
                upper = np.take(slopes, range(1, slopes.shape[k]), axis=k)
                lower = np.take(slopes, range(0, slopes.shape[k] - 1), axis=k)
                slopes = np.maximum(upper, lower)
            cell_slopes.append(slopes)
        return float(np.max(np.sqrt(sum(s ** 2 for s in cell_slopes))))

    def tau(self, x) -> np.ndarray:
        x = _points(x)
        lower = np.array([a[0] for a in self.axes])
        upper = np.array([a[-1] for a in self.axes])
        clamped = np.clip(x, lower, upper)
        flat = clamped.reshape(-1, 3)
        return self._interpolator(flat).reshape(x.shape[:-1])

    def lipschitz_bound(self) -> float:
        return self._slope_bound


Surface = Annotated[
    Union[FlatSurface, TiltedPlane, LightCone, SqrtShell, ClampSurface, KinkSurface, GridSurface],
    Field(discriminator="kind"),
]

SURFACE_ADAPTER: TypeAdapter = TypeAdapter(Surface)


class Region(BaseModel):
    """The achronal set {(tau(x), x) : x in base}."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    surface: Surface
    base: SpatialSet

    def contains_point(self, x) -> np.ndarray:
        """Membership of spatial projections."""
        return self.base.contains(x)

    def events(self, x) -> np.ndarray:
        """Lift spatial points of the base onto the surface."""
        return self.surface.lift(x)


def parse_surface(data: Any) -> BaseSurface:
    """Validate a JSON-like object into a surface model."""
    return SURFACE_ADAPTER.validate_python(data)


def parse_spatial_set(data: Any) -> BaseSet:
    """Validate a JSON-like object into a spatial set tree."""
    return SPATIAL_SET_ADAPTER.validate_python(data)


__all__ = [
    "SurfaceKind",
    "SetKind",
    "LightlikeLine",
    "BaseSet",
    "Ball",
    "Halfspace",
    "Box",
    "Complement",
    "UnionSet",
    "IntersectionSet",
    "Everything",
    "EmptySet",
    "AffineImage",
    "SpatialSet",
    "SPATIAL_SET_ADAPTER",
    "BaseSurface",
    "FlatSurface",
    "TiltedPlane",
    "LightCone",
    "SqrtShell",
    "ClampSurface",
    "KinkSurface",
    "GridSurface",
    "Surface",
    "SURFACE_ADAPTER",
    "Region",
    "parse_surface",
    "parse_spatial_set",
]
