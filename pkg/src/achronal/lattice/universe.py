"""
Finite universes of events and their orthogonality algebra.

Subsets of a universe are frozensets of point indices. x ⊥ y means x != y
and x - y is not timelike; all complements are taken inside the universe.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from achronal.errors import InvalidArgumentError
from achronal.logger import get_logger
from achronal.minkowski import is_perp, is_timelike_separated

logger = get_logger("lattice.universe")

EventSet = FrozenSet[int]


@dataclass(frozen=True, eq=False)
class EventCloud:
    """
    A finite universe U of distinct events.

    Regular grids also carry their shape (n_t, n_x, n_y, n_z) and the
    (time, space) spacing, which makes timelike grid lines decidable.
    """

    points: np.ndarray
    tag: str = "custom"
    grid_shape: Optional[Tuple[int, int, int, int]] = None
    spacing: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 4:
            raise InvalidArgumentError("points", f"universe points must have shape (n, 4), got {points.shape}")
        if len({tuple(row) for row in points}) != points.shape[0]:
            raise InvalidArgumentError("points", "universe points must be distinct")
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def is_grid(self) -> bool:
        return self.grid_shape is not None

    @cached_property
    def perp_matrix(self) -> np.ndarray:
        """perp_matrix[i, j] iff point i ⊥ point j."""
        return np.asarray(is_perp(self.points[:, None, :], self.points[None, :, :]), dtype=bool)

    @cached_property
    def timelike_matrix(self) -> np.ndarray:
        return np.asarray(is_timelike_separated(self.points[:, None, :], self.points[None, :, :]), dtype=bool)

    @property
    def everything(self) -> EventSet:
        return frozenset(range(len(self)))

    def mask(self, subset: Iterable[int]) -> np.ndarray:
        result = np.zeros(len(self), dtype=bool)
        indices = list(subset)
        if indices:
            if min(indices) < 0 or max(indices) >= len(self):
                raise InvalidArgumentError("subset", "subset index outside the universe")
            result[indices] = True
        return result

    def points_of(self, subset: Iterable[int]) -> np.ndarray:
        return self.points[sorted(subset)]

    def index_of(self, point: Sequence[float]) -> int:
        hits = np.flatnonzero(np.all(self.points == np.asarray(point, dtype=float), axis=1))
        if hits.size == 0:
            raise InvalidArgumentError("point", f"{list(point)} is not in the universe")
        return int(hits[0])

    def subset(self, points: Iterable[Sequence[float]]) -> EventSet:
        return frozenset(self.index_of(point) for point in points)

    def to_dict(self) -> Dict:
        return {
            "tag": self.tag,
            "size": len(self),
            "grid_shape": list(self.grid_shape) if self.grid_shape else None,
            "spacing": list(self.spacing) if self.spacing else None,
        }


def _as_set(mask: np.ndarray) -> EventSet:
    return frozenset(int(i) for i in np.flatnonzero(mask))


def grid_universe(
    n_t: int,
    n_s: int,
    spatial_dims: int = 3,
    time_spacing: float = 1.0,
    space_spacing: float = 0.5
) -> EventCloud:
    """
    Regular grid of n_t time slices, each an n_s^spatial_dims spatial grid.

    Unused spatial axes are fixed at 0. Points are ordered row-major in
    (t, x, y, z) index order.
    """
    if not 1 <= spatial_dims <= 3:
        raise InvalidArgumentError("spatial_dims", "spatial_dims must be 1, 2 or 3")
    shape = (n_t,) + (n_s,) * spatial_dims + (1,) * (3 - spatial_dims)
    index = np.array(list(product(*(range(n) for n in shape))), dtype=float)
    scale = np.array([time_spacing] + [space_spacing] * 3)
    return EventCloud(
        points=index * scale,
        tag=f"grid{n_t}x{n_s}^{spatial_dims}",
        grid_shape=tuple(int(n) for n in shape),
        spacing=(float(time_spacing), float(space_spacing)),
    )


def random_universe(rng: np.random.Generator, n: int, half_width: float = 2.0) -> EventCloud:
    """n uniformly random events in [-half_width, half_width]^4."""
    return EventCloud(points=rng.uniform(-half_width, half_width, (n, 4)), tag=f"random{n}")


def parse_universe(text: str) -> EventCloud:
    """
    Parse a universe tag: `grid:NTxNS[xD]` (e.g. `grid:4x4`, `grid:3x5x1`) or
    the short form `gridN`, an N x N grid in one spatial dimension.

    Raises:
        InvalidArgumentError: On malformed tags
    """
    short = re.fullmatch(r"grid(\d+)", text)
    if short and int(short.group(1)) >= 1:
        n = int(short.group(1))
        return grid_universe(n, n, spatial_dims=1)
    kind, _, spec = text.partition(":")
    if kind != "grid" or not spec:
        raise InvalidArgumentError("universe", f"expected grid:NTxNS[xD], got {text!r}")
    try:
        numbers = [int(part) for part in spec.lower().split("x")]
    except ValueError:
        raise InvalidArgumentError("universe", f"expected grid:NTxNS[xD], got {text!r}")
    if len(numbers) not in (2, 3) or min(numbers) < 1:
        raise InvalidArgumentError("universe", f"expected grid:NTxNS[xD], got {text!r}")
    return grid_universe(*numbers)


# ---------------------------------------------------------------------------
# Orthogonality algebra
# ---------------------------------------------------------------------------

def perp_complement(universe: EventCloud, subset: Iterable[int]) -> EventSet:
    """M^⊥ = {x in U : x ⊥ y for all y in M}; U for empty M."""
    mask = universe.mask(subset)
    return _as_set(np.all(universe.perp_matrix[:, mask], axis=1))


def perp_completion(universe: EventCloud, subset: Iterable[int]) -> EventSet:
    """M^∧ = (M^⊥)^⊥."""
    return perp_complement(universe, perp_complement(universe, subset))


def is_perp_complete(universe: EventCloud, subset: Iterable[int]) -> bool:
    subset = frozenset(subset)
    return perp_completion(universe, subset) == subset


def is_achronal(universe: EventCloud, subset: Iterable[int]) -> bool:
    """No two points of the subset are timelike separated."""
    indices = sorted(subset)
    return not np.any(universe.timelike_matrix[np.ix_(indices, indices)])


def join(universe: EventCloud, first: Iterable[int], second: Iterable[int]) -> EventSet:
    """Lattice join (M ∪ N)^∧ of ⊥-complete sets."""
    return perp_completion(universe, frozenset(first) | frozenset(second))


def timelike_directions(universe: EventCloud) -> List[Tuple[int, ...]]:
    """
    Grid steps (1, z) with z in {-1, 0, 1} on the non-trivial spatial axes
    whose physical displacement is timelike.
    """
    _require_grid(universe)
    dt, dx = universe.spacing
    active = [n > 1 for n in universe.grid_shape[1:]]
    directions = []
    for z in product(*([-1, 0, 1] if used else [0] for used in active)):
        if dt * dt - dx * dx * sum(c * c for c in z) > 0:
            directions.append((1,) + tuple(z))
    return directions


def _require_grid(universe: EventCloud) -> None:
    if not universe.is_grid:
        raise InvalidArgumentError("universe", "timelike grid lines need a regular grid universe")


def grid_lines(universe: EventCloud, direction: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """
    For every point, the indices of the progression through it along
    `direction`, one entry per time slice, and whether that progression is
    complete (stays in the grid on every slice).

    Returns:
        (members, complete) with shapes (n, n_t) and (n,)
    """
    _require_grid(universe)
    shape = np.asarray(universe.grid_shape)
    step = np.asarray(direction, dtype=int)
    if step[0] != 1:
        raise InvalidArgumentError("direction", "grid directions must advance one time slice")
    index = np.stack(np.unravel_index(np.arange(len(universe)), universe.grid_shape), axis=-1)
    offsets = np.arange(shape[0])[None, :] - index[:, :1]
    positions = index[:, None, :] + offsets[..., None] * step
    inside = np.all((positions >= 0) & (positions < shape), axis=-1)
    clipped = np.clip(positions, 0, shape - 1)
    members = np.ravel_multi_index(tuple(np.moveaxis(clipped, -1, 0)), universe.grid_shape)
    return members, np.all(inside, axis=1)


def determinacy_set(
    universe: EventCloud,
    subset: Iterable[int],
    directions: Optional[Sequence[Sequence[int]]] = None
) -> EventSet:
    """
    Points x such that every complete timelike grid line through x meets M.

    Progressions that leave the grid before reaching every time slice do
    not count as lines.
    """
    mask = universe.mask(subset)
    directions = timelike_directions(universe) if directions is None else directions
    determined = np.ones(len(universe), dtype=bool)
    for direction in directions:
        members, complete = grid_lines(universe, direction)
        meets = np.any(mask[members], axis=1)
        determined &= ~complete | meets
    return _as_set(determined)


def complete_line_counts(universe: EventCloud, directions: Optional[Sequence[Sequence[int]]] = None) -> np.ndarray:
    """Number of complete timelike grid lines through each point."""
    directions = timelike_directions(universe) if directions is None else directions
    counts = np.zeros(len(universe), dtype=int)
    for direction in directions:
        counts += grid_lines(universe, direction)[1]
    return counts


__all__ = [
    "EventSet",
    "EventCloud",
    "grid_universe",
    "random_universe",
    "parse_universe",
    "perp_complement",
    "perp_completion",
    "is_perp_complete",
    "is_achronal",
    "join",
    "timelike_directions",
    "grid_lines",
    "determinacy_set",
    "complete_line_counts",
]
