"""
Timelike lines, their intersection with maximal achronal surfaces, and the
homeomorphism k between a surface and line space.
"""

from typing import Optional, Tuple, Union

import numpy as np

from achronal.linespace.solvers import solve_line_fixed_point
from achronal.minkowski import FourVector
from achronal.poincare.group import LinePoint
from achronal.surfaces.models import BaseSurface, Region
from achronal.utils.validation import require_vectors, require_velocity


class TimelikeLine(LinePoint):
    """
    The line (0, x) + R(1, v), charted by its x0 = 0 intercept x and velocity v.

    Holds one line (shapes (3,)) or a batch (shapes (N, 3)).
    """

    @classmethod
    def of(cls, u: LinePoint) -> "TimelikeLine":
        return u if isinstance(u, TimelikeLine) else cls(u.x, u.v)

    def point_at(self, s) -> np.ndarray:
        """The event (s, x + s v)."""
        s = np.asarray(s, dtype=float)
        return np.concatenate([s[..., None], self.x + s[..., None] * self.v], axis=-1)


def line_surface_intersection(
    u: LinePoint,
    surface: BaseSurface,
    tol: Optional[float] = None,
    s0=None
) -> Tuple[Union[float, np.ndarray], Union[FourVector, np.ndarray]]:
    """
    Unique parameter s* with s* = tau(x + s* v) and the event (s*, x + s* v).

    Returns floats and a FourVector for a single line, arrays for a batch.

    Raises:
        NumericFailureError: If the iteration does not reach the residual tolerance
    """
    single = u.x.ndim == 1
    result = solve_line_fixed_point(surface.tau, u.x, u.v, tol=tol, s0=s0)
    points = TimelikeLine.of(u).point_at(result.s.reshape(u.x.shape[:-1]))
    if single:
        return float(result.s[0]), FourVector.from_array(points)
    return result.s, points


def line_meets_region(u: LinePoint, region: Region):
    """Indicator of the set of lines meeting the region; bool or boolean array."""
    _, points = line_surface_intersection(u, region.surface)
    if isinstance(points, FourVector):
        return bool(region.base.contains(points.spatial()))
    return region.base.contains(points[..., 1:])


def k_map(surface: BaseSurface, x, v) -> Tuple[np.ndarray, np.ndarray]:
    """k(x, v) = (x - tau(x) v, v): the line through the surface point over x with velocity v."""
    x = require_vectors("x", x, 3)
    v = require_velocity("v", v)
    return x - np.asarray(surface.tau(x))[..., None] * v, v


def k_inverse(surface: BaseSurface, y, v, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Inverse of k: solve x = y + tau(x) v.

    Writing x = y + s v turns this into the line fixed point s = tau(y + s v).
    """
    y = require_vectors("y", y, 3)
    v = require_velocity("v", v)
    result = solve_line_fixed_point(surface.tau, y, v, tol=tol)
    s = result.s.reshape(np.broadcast_shapes(y.shape, v.shape)[:-1])
    return y + s[..., None] * v, v


__all__ = [
    "TimelikeLine",
    "line_surface_intersection",
    "line_meets_region",
    "k_map",
    "k_inverse",
]
