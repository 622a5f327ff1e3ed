"""
Sampled checkers for achronal surfaces.

Sampling can refute a universal statement but never prove one, so the causal
base and Cauchy checks return a third verdict, "inconclusive", whenever
neither a sufficient condition nor a witness was found.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence

import numpy as np

from achronal import constants
from achronal.config import get_config
from achronal.errors import InvalidArgumentError
from achronal.linespace.solvers import confirm_lightlike_miss, lightlike_intersection
from achronal.logger import get_logger
from achronal.minkowski import Separation, as_array, causal_signs, separation
from achronal.poincare.spinors import random_unit_vectors
from achronal.surfaces.models import BaseSet, BaseSurface, LightlikeLine, Region
from achronal.utils.validation import require_count

logger = get_logger("surfaces.checkers")


class CausalBaseVerdict(str, Enum):
    CAUSAL_BASE = "causal-base"
    NOT_CAUSAL_BASE = "not-causal-base"
    INCONCLUSIVE = "inconclusive"


class CauchyVerdict(str, Enum):
    CAUCHY = "cauchy"
    NOT_CAUCHY = "not-cauchy"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SurfaceCheck:
    """Verdict of a sampled surface check with its evidence."""
    verdict: Enum
    witness: Optional[LightlikeLine] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "details": self.details,
        }


def finite_difference_gradient(surface: BaseSurface, x: np.ndarray, step: Optional[float] = None) -> np.ndarray:
    """Central differences of tau along the coordinate axes."""
    step = get_config().fd_step if step is None else step
    grad = np.empty_like(x)
    for i in range(3):
        shift = np.zeros(3)
        shift[i] = step
        grad[..., i] = (surface.tau(x + shift) - surface.tau(x - shift)) / (2.0 * step)
    return grad


def sample_pairs(surface: BaseSurface, n_pairs: int, rng: np.random.Generator):
    """
    Point pairs mixing four strategies: uniform pairs in the sampling cube,
    short local pairs, collinear pairs on rays through the origin, and short
    pairs along the gradient.
    """
    box = constants.SAMPLE_BOX
    sizes = [n_pairs // 4] * 3
    sizes.append(n_pairs - sum(sizes))

    uniform_x = rng.uniform(-box, box, (sizes[0], 3))
    uniform_y = rng.uniform(-box, box, (sizes[0], 3))

    local_x = rng.uniform(-box, box, (sizes[1], 3))
    local_h = 10.0 ** rng.uniform(-3.0, 0.0, sizes[1])
    local_y = local_x + local_h[:, None] * random_unit_vectors(rng, sizes[1])

    rays = random_unit_vectors(rng, sizes[2])
    radial_x = rng.uniform(0.0, box, sizes[2])[:, None] * rays
    radial_y = rng.uniform(0.0, box, sizes[2])[:, None] * rays

    grad_x = rng.uniform(-box, box, (sizes[3], 3))
    if surface.is_c1:
        grad = surface.gradient(grad_x)
    else:
        grad = finite_difference_gradient(surface, grad_x)
    norm = np.linalg.norm(grad, axis=-1, keepdims=True)
    fallback = random_unit_vectors(rng, sizes[3])
    direction = np.where(norm > 1e-12, grad / np.where(norm > 0, norm, 1.0), fallback)
    grad_h = 10.0 ** rng.uniform(-3.0, 0.0, sizes[3])
    grad_y = grad_x + grad_h[:, None] * direction

    x = np.concatenate([uniform_x, local_x, radial_x, grad_x])
    y = np.concatenate([uniform_y, local_y, radial_y, grad_y])
    return x, y


def lipschitz_ratios(surface: BaseSurface, n_pairs: int, rng_seed: int = 0) -> np.ndarray:
    """|tau(x) - tau(y)| / |x - y| over sampled distinct pairs."""
    n_pairs = require_count("n_pairs", n_pairs)
    rng = np.random.default_rng(rng_seed)
    x, y = sample_pairs(surface, n_pairs, rng)
    distance = np.linalg.norm(x - y, axis=-1)
    distinct = distance > 0
    return np.abs(surface.tau(x[distinct]) - surface.tau(y[distinct])) / distance[distinct]


def lipschitz_estimate(surface: BaseSurface, n_pairs: int, rng_seed: int = 0) -> float:
    """
    Largest sampled difference quotient of tau.

    Valid surfaces stay below 1 + 1e-9.
    """
    ratios = lipschitz_ratios(surface, n_pairs, rng_seed)
    return float(ratios.max(initial=0.0))


def is_spacelike_sampled(surface: BaseSurface, n_pairs: int, rng_seed: int = 0) -> bool:
    """True iff no sampled pair reaches the ratio 1 - eps_strict."""
    threshold = 1.0 - get_config().eps_strict
    return bool(lipschitz_estimate(surface, n_pairs, rng_seed) < threshold)


def verified_witness(surface: BaseSurface) -> Optional[LightlikeLine]:
    """The family's closed-form lightlike miss, after a numerical sign check."""
    witness = surface.lightlike_miss_witness()
    if witness is None:
        return None
    if confirm_lightlike_miss(surface.tau, witness.a, witness.omega):
        return witness
    logger.warning(f"Closed-form witness for {surface.kind} failed its sign check")
    return None


def _random_lightlike_lines(n: int, rng: np.random.Generator):
    box = constants.SAMPLE_BOX
    a = rng.uniform(-box, box, (n, 4))
    omega = random_unit_vectors(rng, n)
    return a, omega


def _search_miss(surface: BaseSurface, n_lines: int, rng: np.random.Generator):
    """Random lightlike lines; returns (first certified miss or None, search)."""
    a, omega = _random_lightlike_lines(n_lines, rng)
    search = lightlike_intersection(surface.tau, a, omega)
    misses = np.flatnonzero(search.certified_miss)
    if misses.size:
        i = int(misses[0])
        return LightlikeLine(a[i].copy(), omega[i].copy()), search
    return None, search


def radial_growth(surface: BaseSurface, n_dirs: int, radius_schedule: Sequence[float], rng: np.random.Generator) -> np.ndarray:
    """|tau(r omega)| / r for each radius (rows) and direction (columns)."""
    axes = np.vstack([np.eye(3), -np.eye(3)])
    directions = np.vstack([axes, random_unit_vectors(rng, n_dirs)])
    radii = np.asarray(radius_schedule, dtype=float)
    points = radii[:, None, None] * directions[None, :, :]
    return np.abs(surface.tau(points)) / radii[:, None]


def causal_base_check(
    surface: BaseSurface,
    n_dirs: int = 64,
    radius_schedule: Sequence[float] = constants.RADIUS_SCHEDULE,
    rng_seed: int = 0,
    n_pairs: int = 4000
) -> SurfaceCheck:
    """
    Decide whether the surface is a causal base.

    causal-base: sampled spacelike and limsup |tau(x)|/|x| < 1 - limsup_margin
    over the radius schedule. not-causal-base: not spacelike, or a lightlike
    line missing the graph is known or found. Otherwise inconclusive.
    """
    n_dirs = require_count("n_dirs", n_dirs)
    if len(radius_schedule) < 2:
        raise InvalidArgumentError("radius_schedule", "need at least two radii")
    config = get_config()
    rng = np.random.default_rng(rng_seed)

    ratio = lipschitz_estimate(surface, n_pairs, rng_seed)
    spacelike = ratio < 1.0 - config.eps_strict
    growth = radial_growth(surface, n_dirs, radius_schedule, rng)
    limsup = float(np.max(growth[-2:]))
    details = {"lipschitz_ratio": ratio, "spacelike": spacelike, "limsup": limsup}

    witness = verified_witness(surface)
    if witness is not None:
        logger.info(f"{surface.kind}: closed-form lightlike witness, not a causal base")
        return SurfaceCheck(CausalBaseVerdict.NOT_CAUSAL_BASE, witness, details)
    if not spacelike:
        logger.info(f"{surface.kind}: sampled ratio {ratio:.12f} reaches 1, not spacelike")
        return SurfaceCheck(CausalBaseVerdict.NOT_CAUSAL_BASE, None, details)
    if limsup < 1.0 - config.limsup_margin:
        return SurfaceCheck(CausalBaseVerdict.CAUSAL_BASE, None, details)

    found, search = _search_miss(surface, n_dirs, rng)
    details["undecided_lines"] = int(search.undecided.sum())
    if found is not None:
        logger.info(f"{surface.kind}: sampled lightlike line misses the surface")
        return SurfaceCheck(CausalBaseVerdict.NOT_CAUSAL_BASE, found, details)
    return SurfaceCheck(CausalBaseVerdict.INCONCLUSIVE, None, details)


def cauchy_surface_check(surface: BaseSurface, n_lightlike_lines: int = 1000, rng_seed: int = 0) -> SurfaceCheck:
    """
    Decide whether every lightlike line meets the surface.

    A verified closed-form witness gives not-cauchy immediately; otherwise
    random lines are searched and any certified miss gives not-cauchy.
    """
    n_lightlike_lines = require_count("n_lightlike_lines", n_lightlike_lines)
    if surface.lipschitz_bound() > 1.0 + get_config().eps_strict:
        raise InvalidArgumentError("surface", "Cauchy check needs a 1-Lipschitz surface")

    witness = verified_witness(surface)
    if witness is not None:
        logger.info(f"{surface.kind}: closed-form lightlike witness, not a Cauchy surface")
        return SurfaceCheck(CauchyVerdict.NOT_CAUCHY, witness, {"lines": 0})

    rng = np.random.default_rng(rng_seed)
    found, search = _search_miss(surface, n_lightlike_lines, rng)
    details = {
        "lines": n_lightlike_lines,
        "met": int(search.found.sum()),
        "certified_misses": int(search.certified_miss.sum()),
        "undecided": int(search.undecided.sum()),
    }
    if found is not None:
        return SurfaceCheck(CauchyVerdict.NOT_CAUCHY, found, details)
    if search.found.all():
        return SurfaceCheck(CauchyVerdict.CAUCHY, None, details)
    return SurfaceCheck(CauchyVerdict.INCONCLUSIVE, None, details)


def _on_surface(surface: BaseSurface, z: np.ndarray, tol: float) -> np.ndarray:
    scale = np.maximum(1.0, np.linalg.norm(z, axis=-1))
    return np.abs(z[..., 0] - surface.tau(z[..., 1:])) <= tol * scale


def lightlike_segment_check(surface: BaseSurface, x, y, n_steps: int = 64) -> bool:
    """
    True iff every sampled interior point of the segment [x, y] lies on the graph.

    Raises:
        InvalidArgumentError: If x or y is off the surface or they are not lightlike separated
    """
    n_steps = require_count("n_steps", n_steps)
    tol = get_config().eps_on
    x = as_array(x)
    y = as_array(y)
    if not (_on_surface(surface, x, tol) and _on_surface(surface, y, tol)):
        raise InvalidArgumentError("x, y", "segment endpoints must lie on the surface")
    if separation(x, y) != Separation.LIGHTLIKE:
        raise InvalidArgumentError("x, y", "segment endpoints must be lightlike separated")
    s = np.linspace(0.0, 1.0, n_steps + 2)[1:-1]
    points = x + s[:, None] * (y - x)
    return bool(np.all(_on_surface(surface, points, tol)))


def sample_base_points(base: BaseSet, n: int, rng: np.random.Generator, half_width: float = constants.SAMPLE_BOX) -> np.ndarray:
    """Up to n points of the base, by rejection from its (clipped) bounding box."""
    box = base.bounding_box()
    lower = np.full(3, -half_width)
    upper = np.full(3, half_width)
    if box is not None:
        lower = np.maximum(lower, box[0])
        upper = np.maximum(np.minimum(upper, box[1]), lower)
    kept = []
    total = 0
    for _ in range(20):
        candidates = rng.uniform(lower, upper, (4 * n, 3))
        inside = candidates[base.contains(candidates)]
        kept.append(inside)
        total += inside.shape[0]
        if total >= n:
            break
    return np.concatenate(kept)[:n]


def regions_spacelike_separated(first: Region, second: Region, n_pairs: int = 10000, rng_seed: int = 0) -> bool:
    """True iff every sampled pair of events from the two regions is spacelike separated."""
    n_pairs = require_count("n_pairs", n_pairs)
    rng = np.random.default_rng(rng_seed)
    x = sample_base_points(first.base, n_pairs, rng)
    y = sample_base_points(second.base, n_pairs, rng)
    if x.shape[0] == 0 or y.shape[0] == 0:
        return True
    i = rng.integers(0, x.shape[0], n_pairs)
    j = rng.integers(0, y.shape[0], n_pairs)
    diff = first.events(x[i]) - second.events(y[j])
    return bool(np.all(causal_signs(diff) < 0))


__all__ = [
    "CausalBaseVerdict",
    "CauchyVerdict",
    "SurfaceCheck",
    "finite_difference_gradient",
    "sample_pairs",
    "lipschitz_ratios",
    "lipschitz_estimate",
    "is_spacelike_sampled",
    "verified_witness",
    "radial_growth",
    "causal_base_check",
    "cauchy_surface_check",
    "lightlike_segment_check",
    "sample_base_points",
    "regions_spacelike_separated",
]
