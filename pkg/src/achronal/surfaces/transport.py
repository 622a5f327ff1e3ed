"""
Poincaré transport of regions and the two-piece clamp example.
"""

from typing import Tuple

import numpy as np

from achronal.errors import InvalidArgumentError
from achronal.logger import get_logger
from achronal.minkowski import minkowski_product
from achronal.poincare.group import PoincareElement
from achronal.surfaces.models import (
    ClampSurface,
    Complement,
    FlatSurface,
    Halfspace,
    Region,
    TiltedPlane,
)

logger = get_logger("surfaces.transport")


def transform_region(g: PoincareElement, region: Region) -> Region:
    """
    g.Delta for a region on a hyperplane x0 = t0 + w.x.

    The plane is {z : nu.z = t0} with nu = (1, w). Its image is
    {z' : nu'.z' = t0 + nu'.a} with nu' = Lambda nu, i.e. the plane with slope
    nu'_s / nu'_0 and offset (t0 + nu'.a) / nu'_0. The base moves by the affine
    map x -> (Lambda_ss + Lambda_s0 w^T) x + a_s + Lambda_s0 t0.

    Raises:
        InvalidArgumentError: If the surface is not a hyperplane or the base map is singular
    """
    linear = region.surface.linear_form()
    if linear is None:
        raise InvalidArgumentError(
            "region", f"transport is supported for flat and tilted surfaces, not {region.surface.kind}"
        )
    t0, w = linear
    lam = g.lorentz_matrix()
    a = g.translation

    normal = lam @ np.concatenate([[1.0], w])
    w_new = normal[1:] / normal[0]
    t0_new = (t0 + float(minkowski_product(normal, a))) / normal[0]

    matrix = lam[1:, 1:] + np.outer(lam[1:, 0], w)
    if abs(np.linalg.det(matrix)) < 1e-12:
        raise InvalidArgumentError("g", "transported base map is singular for this null plane")
    offset = a[1:] + lam[1:, 0] * t0

    if np.allclose(w_new, 0.0, atol=1e-15):
        surface = FlatSurface(t0=float(t0_new))
    else:
        # Renormalise roundoff above |w| = 1 on null planes
        norm = np.linalg.norm(w_new)
        if norm > 1.0:
            w_new = w_new / norm
        surface = TiltedPlane(w=tuple(float(c) for c in w_new), offset=float(t0_new))

    base = region.base.affine_image(matrix, offset)
    logger.debug(f"Transported region onto {surface.kind} surface with slope {np.linalg.norm(w_new):.6f}")
    return Region(surface=surface, base=base)


def clamp_pieces(clamp: ClampSurface = ClampSurface()) -> Tuple[Region, Region]:
    """
    The maximal spacelike set P made of two flat pieces of the clamp surface:
    {x0 = lower, x3 <= lower} and {x0 = upper, x3 > upper}.

    P is not a graph over all of R^3; vertical lines over lower < x3 <= upper miss it.
    """
    lower = Region(
        surface=FlatSurface(t0=clamp.lower),
        base=Halfspace(normal=(0.0, 0.0, 1.0), offset=clamp.lower),
    )
    upper = Region(
        surface=FlatSurface(t0=clamp.upper),
        base=Complement(of=Halfspace(normal=(0.0, 0.0, 1.0), offset=clamp.upper)),
    )
    return lower, upper


__all__ = ["transform_region", "clamp_pieces"]
