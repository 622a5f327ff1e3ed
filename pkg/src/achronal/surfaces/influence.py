"""
Region of influence of a region on a target surface.

The point P = (sigma(y), y) of the target belongs to the influence region of
Delta iff some z = (tau(x), x), x in the base, has (P - z)·(P - z) >= 0, i.e.

    gap(y) = min over x in base of |y - x| - |sigma(y) - tau(x)| <= eps_roi.

For linear tau(x) = t0 + w.x, write d = x - y and c = sigma(y) - t0 - w.y.
Then |y - x| - |sigma(y) - tau(x)| = min(N_{-w}(d) - c, N_{w}(d) + c) with the
convex, positively homogeneous N_u(d) = |d| - u.d, which is minimised in
closed form over halfspaces, by a planar circle search over balls and by
convex optimisation over boxes. Every other case uses a grid search over a
window sized from the slope of tau and the distance between the target
point and the base. Its minimum is lowered by the Lipschitz slack of the
grid, so it over-approximates the influence region except where the base
has pieces thinner than a grid cell.
"""

from typing import Optional

import numpy as np
from scipy.optimize import minimize

from achronal import constants
from achronal.config import get_config
from achronal.logger import get_logger
from achronal.surfaces.models import (
    Ball,
    BaseSet,
    BaseSurface,
    Box,
    EmptySet,
    Everything,
    Halfspace,
    Region,
    UnionSet,
)

logger = get_logger("surfaces.influence")

_CIRCLE_POINTS = 256
_GOLDEN_STEPS = 80
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def region_of_influence(region: Region, target: BaseSurface, y):
    """
    Membership of target points over y in the influence region of `region`.

    Args:
        region: The source region on its surface
        target: Surface sigma on which the influence region lives
        y: Spatial point (3,) or points (..., 3)

    Returns:
        bool for a single point, boolean array otherwise
    """
    y = np.asarray(y, dtype=float)
    flat = y.reshape(-1, 3)
    result = influence_gap(region, target, flat) <= get_config().eps_roi
    if y.ndim == 1:
        return bool(result[0])
    return result.reshape(y.shape[:-1])


def influence_gap(region: Region, target: BaseSurface, y: np.ndarray) -> np.ndarray:
    """min over the base of |y - x| - |sigma(y) - tau(x)| for points y of shape (N, 3)."""
    sigma = target.tau(y)
    linear = region.surface.linear_form()
    if linear is None:
        return _grid_gap(region.base, region.surface, sigma, y)
    t0, w = linear
    c = sigma - t0 - y @ w
    return _linear_gap(region.base, region.surface, w, c, sigma, y)


def _linear_gap(base: BaseSet, surface: BaseSurface, w, c, sigma, y) -> np.ndarray:
    if isinstance(base, Everything):
        return -np.abs(c)
    if isinstance(base, EmptySet):
        return np.full(y.shape[0], np.inf)
    if isinstance(base, UnionSet):
        gaps = [_linear_gap(member, surface, w, c, sigma, y) for member in base.members]
        return np.min(gaps, axis=0) if gaps else np.full(y.shape[0], np.inf)
    if isinstance(base, Ball):
        minimiser = lambda u: _ball_minimum(np.asarray(base.center) - y, base.radius, u)
    elif isinstance(base, Halfspace):
        n, beta0 = base.unit_form()
        minimiser = lambda u: _halfspace_minimum(n, beta0 - y @ n, u)
    elif isinstance(base, Box):
        lower = np.asarray(base.lower) - y
        upper = np.asarray(base.upper) - y
        minimiser = lambda u: _box_minimum(lower, upper, u)
    else:
        return _grid_gap(base, surface, sigma, y)
    return np.minimum(minimiser(-w) - c, minimiser(w) + c)


def cone_norm(d: np.ndarray, u: np.ndarray) -> np.ndarray:
    """N_u(d) = |d| - u.d, non-negative for |u| <= 1."""
    return np.linalg.norm(d, axis=-1) - d @ u


def _halfspace_minimum(n: np.ndarray, beta: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    min of N_u over {n.d <= beta}: 0 for beta >= 0, otherwise
    |beta| (sqrt(1 - |u_perp|^2) + u.n) with u_perp the part of u orthogonal to n.
    """
    un = float(u @ n)
    perp_sq = float(u @ u) - un * un
    value = np.abs(beta) * (np.sqrt(max(0.0, 1.0 - perp_sq)) + un)
    return np.where(beta >= 0, 0.0, np.maximum(value, 0.0))


def _plane_basis(center: np.ndarray, u: np.ndarray):
    """Orthonormal e1 = c/|c| and e2 spanning the plane of c and u."""
    e1 = center / np.linalg.norm(center, axis=-1, keepdims=True)
    u_perp = u - (e1 @ u)[:, None] * e1
    norm = np.linalg.norm(u_perp, axis=-1, keepdims=True)
    # Any direction orthogonal to e1 when u is parallel to c
    helper = np.eye(3)[np.argmin(np.abs(e1), axis=-1)]
    other = np.cross(e1, helper)
    other /= np.linalg.norm(other, axis=-1, keepdims=True)
    e2 = np.where(norm > 1e-14, u_perp / np.where(norm > 0, norm, 1.0), other)
    return e1, e2


def _ball_minimum(center: np.ndarray, radius: float, u: np.ndarray) -> np.ndarray:
    """
    min of N_u over the ball |d - center| <= radius, per row of `center`.

    The problem is symmetric under reflections fixing span(center, u), so a
    minimiser lies on the boundary circle in that plane (or at d = 0).
    """
    result = np.zeros(center.shape[0])
    outside = np.linalg.norm(center, axis=-1) > radius
    if not np.any(outside):
        return result
    c = center[outside]
    e1, e2 = _plane_basis(c, u)

    def values(theta):
        d = c[:, None, :] + radius * (np.cos(theta)[..., None] * e1[:, None, :] + np.sin(theta)[..., None] * e2[:, None, :])
        return np.linalg.norm(d, axis=-1) - d @ u

    grid = np.linspace(0.0, 2.0 * np.pi, _CIRCLE_POINTS, endpoint=False)
    sampled = values(np.broadcast_to(grid, (c.shape[0], grid.size)))
    best = np.argmin(sampled, axis=1)
    step = 2.0 * np.pi / _CIRCLE_POINTS
    lo = grid[best] - step
    hi = grid[best] + step
    for _ in range(_GOLDEN_STEPS):
        x1 = hi - _GOLDEN * (hi - lo)
        x2 = lo + _GOLDEN * (hi - lo)
        left = values(x1[:, None])[:, 0] < values(x2[:, None])[:, 0]
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
    middle = 0.5 * (lo + hi)
    refined = values(middle[:, None])[:, 0]
    result[outside] = np.maximum(np.minimum(sampled.min(axis=1), refined), 0.0)
    return result


def _box_minimum(lower: np.ndarray, upper: np.ndarray, u: np.ndarray) -> np.ndarray:
    """min of N_u over boxes lower <= d <= upper (convex problem, one solve per row)."""
    result = np.zeros(lower.shape[0])
    for i in range(lower.shape[0]):
        start = np.clip(0.0, lower[i], upper[i])
        if not np.any(start):
            continue

        def objective(d):
            norm = np.linalg.norm(d)
            return norm - d @ u, d / norm - u

        solution = minimize(
            objective,
            start,
            jac=True,
            method="L-BFGS-B",
            bounds=list(zip(lower[i], upper[i])),
            options={"ftol": 1e-15, "gtol": 1e-12},
        )
        result[i] = max(0.0, min(float(solution.fun), float(cone_norm(start, u))))
    return result


def _mesh(lower: np.ndarray, upper: np.ndarray, points: int) -> np.ndarray:
    axes = [np.linspace(lower[k], upper[k], points) for k in range(3)]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)


def _nearest_base_node(base: BaseSet, y: np.ndarray, points: int) -> Optional[np.ndarray]:
    """Closest grid node of the base, from cubes around y doubling in size."""
    half_width = constants.ROI_SEARCH_RADIUS
    for _ in range(constants.ROI_EXPANSIONS):
        mesh = _mesh(y - half_width, y + half_width, points)
        inside = mesh[base.contains(mesh)]
        if inside.shape[0]:
            return inside[np.argmin(np.linalg.norm(inside - y, axis=-1))]
        half_width *= 2.0
    return None


def _search_box(base: BaseSet, surface: BaseSurface, sigma: float, y: np.ndarray, eps: float, points: int):
    """
    Box of base points x that can reach the target point over y, or None.

    With slope L < 1, |y - x| <= |sigma - tau(x)| + eps forces
    |y - x| <= (|sigma - tau(y)| + eps) / (1 - L). Bounded bases are searched
    whole otherwise; unbounded bases under slope-1 surfaces get a window
    around y reaching past the nearest base node.
    """
    box = base.bounding_box()
    slope = surface.lipschitz_bound()
    if slope <= 1.0 - constants.ROI_SLOPE_MARGIN:
        reach = (abs(sigma - float(surface.tau(y))) + eps) / (1.0 - slope)
        lower, upper = y - reach, y + reach
        if box is not None:
            lower, upper = np.maximum(lower, box[0]), np.minimum(upper, box[1])
    elif box is not None:
        lower, upper = box
    else:
        anchor = _nearest_base_node(base, y, points)
        if anchor is None:
            logger.debug(f"No base point found within {constants.ROI_SEARCH_RADIUS * 2 ** (constants.ROI_EXPANSIONS - 1):g} of {y.tolist()}")
            return None
        reach = float(np.linalg.norm(anchor - y)) + abs(sigma - float(surface.tau(anchor))) + constants.ROI_SEARCH_RADIUS
        lower, upper = y - reach, y + reach
    if np.any(upper < lower):
        return None
    return lower, upper


def _grid_gap(base: BaseSet, surface: BaseSurface, sigma: np.ndarray, y: np.ndarray, points: Optional[int] = None) -> np.ndarray:
    """
    Grid search of |y - x| - |sigma(y) - tau(x)| over base points that can reach y.

    The objective is 2-Lipschitz in x and every base point lies within one
    cell diagonal of a base node unless the base is thinner than a cell, so
    the grid minimum is lowered by twice the diagonal.
    """
    points = constants.ROI_GRID_POINTS if points is None else points
    eps = get_config().eps_roi
    gaps = np.full(y.shape[0], np.inf)
    for i in range(y.shape[0]):
        window = _search_box(base, surface, float(sigma[i]), y[i], eps, points)
        if window is None:
            continue
        lower, upper = window
        mesh = _mesh(lower, upper, points)
        inside = mesh[base.contains(mesh)]
        if inside.shape[0] == 0:
            continue
        objective = np.linalg.norm(inside - y[i], axis=-1) - np.abs(sigma[i] - surface.tau(inside))
        spacing = (upper - lower) / max(points - 1, 1)
        gaps[i] = float(objective.min()) - 2.0 * float(np.linalg.norm(spacing))
    logger.debug(f"Influence grid search over {y.shape[0]} points with {points}^3 nodes")
    return gaps


__all__ = ["region_of_influence", "influence_gap", "cone_norm"]
