"""
The canonical achronal localization evaluated as quadratic forms, and the
line-space measure of a region.

<psi, T(Delta) psi> is the rho-probability that a random line meets Delta.
n(Delta) is the volume of k^-1(base x O1), computed from the Jacobian
det Dk(x, v) = 1 - grad tau(x).v.
"""

from typing import Optional, Tuple

import numpy as np
from scipy.special import roots_legendre

from achronal import constants
from achronal.config import get_config
from achronal.errors import InvalidArgumentError
from achronal.linespace.estimation import MCEstimate, estimate_from_samples
from achronal.linespace.lines import line_meets_region
from achronal.linespace.states import StateDensity
from achronal.logger import get_logger
from achronal.poincare.group import LinePoint
from achronal.poincare.spinors import random_unit_vectors
from achronal.surfaces.models import (
    AffineImage,
    Ball,
    BaseSet,
    BaseSurface,
    Box,
    EmptySet,
    Region,
)
from achronal.utils.parallel import map_chunks
from achronal.utils.validation import require_count

logger = get_logger("linespace.localization")

QUADRATURE_ORDER = 12


def localization_probability(
    state: StateDensity,
    region: Region,
    n_samples: int,
    seed: Optional[int] = None,
    workers: Optional[int] = None
) -> MCEstimate:
    """
    Monte Carlo estimate of <psi, T(Delta) psi>: the fraction of lines drawn
    from rho that meet the region.

    Args:
        state: Line-space density rho
        region: Region on a maximal achronal surface
        n_samples: Number of sampled lines
        seed: Run seed (config default when omitted)
        workers: Thread count; does not change the result

    Returns:
        MCEstimate with batch-means standard error
    """
    config = get_config()
    seed = config.seed if seed is None else seed
    indicators = map_chunks(
        lambda rng, size: meets_indicator(state, region, rng, size),
        require_count("n_samples", n_samples),
        seed,
        workers=config.workers if workers is None else workers,
        chunk_size=config.chunk_size,
    )
    estimate = estimate_from_samples(indicators, seed)
    logger.debug(
        f"Localization on {region.surface.kind}: {estimate.value:.6f} +- {estimate.std_error:.2e} (n={n_samples})"
    )
    return estimate


def meets_indicator(state: StateDensity, region: Region, rng: np.random.Generator, size: int) -> np.ndarray:
    x, v = state.sample(rng, size)
    return line_meets_region(LinePoint(x, v), region).astype(float)


# ---------------------------------------------------------------------------
# Line-space measure
# ---------------------------------------------------------------------------

def _legendre(order: int, lower: float, upper: float) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(order)
    half = 0.5 * (upper - lower)
    return lower + half * (nodes + 1.0), half * weights


def ball_rule(center, radius: float, order: int = QUADRATURE_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Spherical product rule on a ball: Gauss in r and cos(theta), uniform in phi."""
    r, wr = _legendre(order, 0.0, radius)
    ct, wt = roots_legendre(order)
    phi = np.linspace(0.0, 2.0 * np.pi, 2 * order, endpoint=False)
    wphi = np.full(phi.size, 2.0 * np.pi / phi.size)
    R, CT, PHI = np.meshgrid(r, ct, phi, indexing="ij")
    ST = np.sqrt(1.0 - CT * CT)
    points = np.stack([R * ST * np.cos(PHI), R * ST * np.sin(PHI), R * CT], axis=-1).reshape(-1, 3)
    weights = np.einsum("i,j,k->ijk", wr * r * r, wt, wphi).reshape(-1)
    return points + np.asarray(center, dtype=float), weights


def box_rule(lower, upper, order: int = QUADRATURE_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Tensor Gauss-Legendre rule on an axis-aligned box."""
    rules = [_legendre(order, lo, hi) for lo, hi in zip(lower, upper)]
    grids = np.meshgrid(*(nodes for nodes, _ in rules), indexing="ij")
    points = np.stack(grids, axis=-1).reshape(-1, 3)
    weights = np.einsum("i,j,k->ijk", *(w for _, w in rules)).reshape(-1)
    return points, weights


def base_rule(base: BaseSet, order: int = QUADRATURE_ORDER) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Quadrature nodes and weights for balls, boxes and their affine images; None otherwise."""
    if isinstance(base, Ball):
        return ball_rule(base.center, base.radius, order)
    if isinstance(base, Box):
        return box_rule(base.lower, base.upper, order)
    if isinstance(base, AffineImage):
        inner = base_rule(base.of, order)
        if inner is None:
            return None
        matrix = np.asarray(base.matrix)
        points, weights = inner
        return points @ matrix.T + np.asarray(base.offset), weights * abs(np.linalg.det(matrix))
    return None


def _jacobian_integral(surface: BaseSurface, x: np.ndarray, wx: np.ndarray, v: np.ndarray, wv: np.ndarray) -> float:
    gradient = surface.gradient(x)
    total = 0.0
    # Row blocks keep the (n_x, n_v) Jacobian table small
    for start in range(0, x.shape[0], 512):
        block = np.abs(1.0 - gradient[start:start + 512] @ v.T)
        total += float(wx[start:start + 512] @ block @ wv)
    return total


def _check_measurable(surface: BaseSurface, base: BaseSet) -> None:
    if not surface.is_c1:
        raise InvalidArgumentError("surface", f"{surface.kind} surface has no continuous gradient")
    if not base.is_bounded():
        raise InvalidArgumentError("base", "n_measure needs a bounded base")


def n_measure(surface: BaseSurface, base: BaseSet, order: int = QUADRATURE_ORDER) -> float:
    """
    n(Delta): integral over base x O1 of |1 - grad tau(x).v| d^3x d^3v.

    Balls, boxes and their affine images use product Gauss rules; other
    bounded bases fall back to n_measure_mc.

    Raises:
        InvalidArgumentError: If the surface is not C^1 or the base is unbounded
    """
    if isinstance(base, EmptySet):
        return 0.0
    _check_measurable(surface, base)
    rule = base_rule(base, order)
    if rule is None:
        logger.info(f"No quadrature rule for {base.kind} base, using Monte Carlo")
        return n_measure_mc(surface, base, n_samples=1 << 16).value
    x, wx = rule
    v, wv = ball_rule((0.0, 0.0, 0.0), 1.0, order)
    return _jacobian_integral(surface, x, wx, v, wv)


def n_measure_mc(
    surface: BaseSurface,
    base: BaseSet,
    n_samples: int,
    seed: Optional[int] = None
) -> MCEstimate:
    """Monte Carlo version of n_measure: uniform x in the bounding box, uniform v in O1."""
    if isinstance(base, EmptySet):
        return MCEstimate(value=0.0, std_error=0.0, n_samples=0, seed=0)
    _check_measurable(surface, base)
    config = get_config()
    seed = config.seed if seed is None else seed
    lower, upper = base.bounding_box()
    box_volume = float(np.prod(upper - lower))
    if box_volume == 0.0:
        return MCEstimate(value=0.0, std_error=0.0, n_samples=0, seed=seed)
    scale = box_volume * constants.VOL_UNIT_BALL

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        x = rng.uniform(lower, upper, (size, 3))
        v = rng.uniform(0.0, 1.0, size)[:, None] ** (1.0 / 3.0) * random_unit_vectors(rng, size)
        inside = base.contains(x)
        jacobian = np.abs(1.0 - np.einsum("ij,ij->i", surface.gradient(x), v))
        return np.where(inside, jacobian, 0.0) * scale

    values = map_chunks(
        chunk,
        require_count("n_samples", n_samples),
        seed,
        workers=config.workers,
        chunk_size=config.chunk_size,
    )
    return estimate_from_samples(values, seed)


__all__ = [
    "localization_probability",
    "meets_indicator",
    "ball_rule",
    "box_rule",
    "base_rule",
    "n_measure",
    "n_measure_mc",
]
