"""
Sampled checks of the localization axioms.

Each check draws lines from the state density with the deterministic chunked
sampler and returns a report dict with a `passed` flag, the estimates
involved and, for pathwise properties, the first violating line.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from achronal.config import get_config
from achronal.errors import InvalidArgumentError, PreconditionError
from achronal.linespace.estimation import estimate_from_samples
from achronal.linespace.lines import line_surface_intersection
from achronal.linespace.states import StateDensity
from achronal.logger import get_logger
from achronal.poincare.group import LinePoint, PoincareElement, act_on_line, line_action_rn_derivative
from achronal.surfaces.influence import influence_gap
from achronal.surfaces.models import BaseSurface, Region
from achronal.surfaces.transport import transform_region
from achronal.utils.parallel import map_chunks
from achronal.utils.validation import require_count

logger = get_logger("linespace.verification")

# Influence-region evaluations are blocked to bound the circle-search tables
_ROI_BLOCK = 4096


def _sample(fn: Callable[[np.random.Generator, int], np.ndarray], n_samples: int, seed: Optional[int]):
    config = get_config()
    seed = config.seed if seed is None else seed
    values = map_chunks(
        fn,
        require_count("n_samples", n_samples),
        seed,
        workers=config.workers,
        chunk_size=config.chunk_size,
    )
    return values, seed


def _hits(region: Region, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    _, points = line_surface_intersection(LinePoint(x, v), region.surface)
    return region.base.contains(points[..., 1:])


def _witness(rows: np.ndarray, violations: np.ndarray) -> Optional[Dict[str, List[float]]]:
    if not np.any(violations):
        return None
    row = rows[int(np.argmax(violations))]
    return {"x": [float(c) for c in row[:3]], "v": [float(c) for c in row[3:6]]}


def additivity_check(
    state: StateDensity,
    partition: Sequence[Region],
    n_samples: int,
    seed: Optional[int] = None
) -> Dict[str, Any]:
    """
    sum_n <psi, T(Delta_n) psi> = 1 for a partition of one surface.

    Every sampled line meets the surface once, so exactly one indicator is 1
    per sample and the sum has no variance.

    Raises:
        InvalidArgumentError: If the regions lie on different surfaces or two bases overlap
    """
    if not partition:
        raise InvalidArgumentError("partition", "partition must contain at least one region")
    surface = partition[0].surface
    if any(region.surface != surface for region in partition[1:]):
        raise InvalidArgumentError("partition", "all regions of a partition must lie on one surface")

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        x, v = state.sample(rng, size)
        _, points = line_surface_intersection(LinePoint(x, v), surface)
        y = points[..., 1:]
        return np.stack([region.base.contains(y) for region in partition], axis=-1).astype(float)

    indicators, seed = _sample(chunk, n_samples, seed)
    counts = indicators.sum(axis=1)
    if np.any(counts > 1):
        raise InvalidArgumentError(
            "partition", f"region bases overlap on {int(np.sum(counts > 1))} sampled intersection points"
        )
    estimates = [estimate_from_samples(indicators[:, k], seed) for k in range(len(partition))]
    total = float(sum(estimate.value for estimate in estimates))
    uncovered = int(np.sum(counts == 0))
    passed = uncovered == 0 and abs(total - 1.0) <= 1e-12
    if not passed:
        logger.warning(f"Additivity failed: sum={total}, {uncovered} lines met no region")
    return {
        "property": "additivity",
        "passed": passed,
        "sum": total,
        "uncovered": uncovered,
        "estimates": [estimate.to_dict() for estimate in estimates],
        "n": int(n_samples),
        "seed": seed,
    }


def causality_check(
    state: StateDensity,
    region: Region,
    sigma: BaseSurface,
    n_samples: int,
    seed: Optional[int] = None,
    require_causal_base: bool = False
) -> Dict[str, Any]:
    """
    T(Delta) <= T(Delta_Sigma) pathwise: whenever a line meets Delta, its
    intersection with Sigma lies in the region of influence of Delta.

    Args:
        state: Line-space density
        region: Region Delta
        sigma: Target surface, expected to be a causal base
        n_samples: Number of sampled lines
        seed: Run seed
        require_causal_base: Run the sampled causal-base check on sigma first

    Raises:
        PreconditionError: If require_causal_base is set and sigma is shown not to be a causal base
    """
    if require_causal_base:
        from achronal.surfaces.checkers import CausalBaseVerdict, causal_base_check

        verdict = causal_base_check(sigma)
        if verdict.verdict == CausalBaseVerdict.NOT_CAUSAL_BASE:
            raise PreconditionError("causal-base", f"{sigma.kind} surface is not a causal base")

    eps_roi = get_config().eps_roi

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        x, v = state.sample(rng, size)
        meets = _hits(region, x, v)
        inside = np.ones(size, dtype=bool)
        rows = np.flatnonzero(meets)
        if rows.size:
            _, points = line_surface_intersection(LinePoint(x[rows], v[rows]), sigma)
            y = points[..., 1:]
            gap = np.concatenate([
                influence_gap(region, sigma, y[start:start + _ROI_BLOCK])
                for start in range(0, y.shape[0], _ROI_BLOCK)
            ])
            inside[rows] = gap <= eps_roi
        return np.column_stack([x, v, meets, inside])

    table, seed = _sample(chunk, n_samples, seed)
    meets = table[:, 6].astype(bool)
    in_influence = table[:, 7].astype(bool)
    violations = meets & ~in_influence
    count = int(violations.sum())
    if count:
        logger.error(f"Causality violated on {count} of {n_samples} lines")
    return {
        "property": "causality",
        "passed": count == 0,
        "violations": count,
        "witness": _witness(table, violations),
        "estimate": estimate_from_samples(meets, seed).to_dict(),
        "n": int(n_samples),
        "seed": seed,
    }


def covariance_check(
    state: StateDensity,
    region: Region,
    g: PoincareElement,
    n_samples: int,
    seed: Optional[int] = None
) -> Dict[str, Any]:
    """
    Covariance of the localization under g.

    Pathwise: g^-1.u meets Delta iff u meets g.Delta, on every sample.
    In distribution: E[1(u meets g.Delta) rho(g^-1.u) J(g, u) / rho(u)] equals
    E[1(u meets Delta)] within three combined standard errors, where J is the
    line-action Radon-Nikodym derivative.

    Raises:
        InvalidArgumentError: If g.Delta leaves the supported surface families
    """
    moved = transform_region(g, region)
    g_inv = g.inverse()

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        x, v = state.sample(rng, size)
        u = LinePoint(x, v)
        back = act_on_line(g_inv, u)
        meets_moved = _hits(moved, x, v)
        meets_back = _hits(region, back.x, back.v)
        weight = state.density(back.x, back.v) * line_action_rn_derivative(g, u) / state.density(x, v)
        meets_here = _hits(region, x, v)
        return np.column_stack([x, v, meets_moved, meets_back, weight, meets_here])

    table, seed = _sample(chunk, n_samples, seed)
    meets_moved = table[:, 6].astype(bool)
    mismatches = meets_moved != table[:, 7].astype(bool)

    plain = estimate_from_samples(table[:, 9], seed)
    weighted = estimate_from_samples(meets_moved.astype(float), seed, weights=table[:, 8])
    combined = float(np.hypot(plain.std_error, weighted.std_error))
    agree = abs(weighted.value - plain.value) <= 3.0 * combined + 1e-12
    count = int(mismatches.sum())
    if count:
        logger.error(f"Pathwise covariance failed on {count} of {n_samples} lines")
    return {
        "property": "covariance",
        "passed": count == 0 and agree,
        "pathwise_mismatches": count,
        "witness": _witness(table, mismatches),
        "estimate": plain.to_dict(),
        "transformed_estimate": weighted.to_dict(),
        "combined_std_error": combined,
        "transformed_region": moved.model_dump(mode="json"),
        "n": int(n_samples),
        "seed": seed,
    }


def monotonicity_check(
    state: StateDensity,
    inner: Region,
    outer: Region,
    n_samples: int,
    seed: Optional[int] = None
) -> Dict[str, Any]:
    """Delta inside Delta' implies 1(u meets Delta) <= 1(u meets Delta') on every sample."""

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        x, v = state.sample(rng, size)
        return np.column_stack([x, v, _hits(inner, x, v), _hits(outer, x, v)])

    table, seed = _sample(chunk, n_samples, seed)
    small = table[:, 6].astype(bool)
    large = table[:, 7].astype(bool)
    violations = small & ~large
    count = int(violations.sum())
    return {
        "property": "monotonicity",
        "passed": count == 0,
        "violations": count,
        "witness": _witness(table, violations),
        "inner": estimate_from_samples(small, seed).to_dict(),
        "outer": estimate_from_samples(large, seed).to_dict(),
        "n": int(n_samples),
        "seed": seed,
    }


def null_region_check(
    state: StateDensity,
    region: Region,
    n_samples: int,
    seed: Optional[int] = None
) -> Dict[str, Any]:
    """
    A base of zero volume has localization probability 0.

    Only this direction is checkable by sampling.

    Raises:
        InvalidArgumentError: If the base volume is not known to be zero
    """
    volume = region.base.volume()
    if volume is None or volume > 0.0:
        raise InvalidArgumentError("region", "null_region_check needs a base of zero volume")

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        x, v = state.sample(rng, size)
        return _hits(region, x, v).astype(float)

    indicators, seed = _sample(chunk, n_samples, seed)
    estimate = estimate_from_samples(indicators, seed)
    return {
        "property": "null-set",
        "passed": estimate.value == 0.0,
        "estimate": estimate.to_dict(),
        "n": int(n_samples),
        "seed": seed,
    }


__all__ = [
    "additivity_check",
    "causality_check",
    "covariance_check",
    "monotonicity_check",
    "null_region_check",
]
