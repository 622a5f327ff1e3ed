"""
Root finding along straight lines through a 1-Lipschitz graph.

Timelike lines (0, x) + s(1, v) meet the graph where s = tau(x + s v); the map
is a |v|-contraction, so fixed-point iteration converges geometrically.
Lightlike lines a + s(1, omega) meet it where f(s) = a0 + s - tau(a + s omega)
vanishes; f is non-decreasing, so an expanding bracket followed by bisection
finds the crossing when it exists.

Everything here works on plain callables tau: (N, 3) -> (N,) so that the
solvers do not depend on the surface models.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np

from achronal import constants
from achronal.config import get_config
from achronal.errors import NumericFailureError
from achronal.logger import get_logger

logger = get_logger("linespace.solvers")

TauFn = Callable[[np.ndarray], np.ndarray]

_BISECTION_STEPS = 200


@dataclass
class FixedPointResult:
    """Solution s* of s = tau(x + s v) for a batch of lines."""
    s: np.ndarray
    iterations: int
    bisected: int = 0
    max_residual: float = 0.0


@dataclass
class LightlikeSearch:
    """
    Outcome of the lightlike crossing search for a batch of lines.

    `found` lines have a crossing at `s`; `certified_miss` lines have a
    residual of constant sign that converged away from zero over the whole
    bracket; the remaining lines are undecided.
    """
    found: np.ndarray
    s: np.ndarray
    certified_miss: np.ndarray
    limits: np.ndarray
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def undecided(self) -> np.ndarray:
        return ~(self.found | self.certified_miss)


def iteration_budget(speed: np.ndarray, tol: float) -> np.ndarray:
    """FIXED_POINT_BASE_ITER + ceil(log(tol) / log|v|), per line."""
    speed = np.asarray(speed, dtype=float)
    extra = np.zeros_like(speed)
    moving = speed > 0
    extra[moving] = np.ceil(np.log(tol) / np.log(speed[moving]))
    return constants.FIXED_POINT_BASE_ITER + extra


def _residual_scale(s: np.ndarray) -> np.ndarray:
    return np.maximum(1.0, np.abs(s))


def solve_line_fixed_point(
    tau: TauFn,
    x: np.ndarray,
    v: np.ndarray,
    tol: Optional[float] = None,
    s0: Optional[np.ndarray] = None
) -> FixedPointResult:
    """
    Solve s = tau(x + s v) for lines given as arrays of shape (N, 3).

    Lines whose iteration budget exceeds FIXED_POINT_ITER_CAP (|v| very close
    to 1) are finished by bisection of the increasing map s - tau(x + s v).

    A line converges once |s - tau(x + s v)| <= tol * max(1, |s|): an absolute
    residual below tol for |s| <= 1, relative to |s| beyond, where float64
    spacing alone exceeds 1e-11 once |s| passes about 1e5.

    Raises:
        NumericFailureError: If a residual stays above tol * max(1, |s|)
    """
    tol = get_config().fixed_point_tol if tol is None else tol
    x = np.atleast_2d(np.asarray(x, dtype=float))
    v = np.atleast_2d(np.asarray(v, dtype=float))
    x, v = np.broadcast_arrays(x, v)
    speed = np.linalg.norm(v, axis=-1)
    n = x.shape[0]

    s = np.asarray(tau(x), dtype=float).copy() if s0 is None else np.broadcast_to(np.asarray(s0, dtype=float), (n,)).copy()
    budget = iteration_budget(speed, tol)
    active = np.ones(n, dtype=bool)
    max_steps = int(min(np.max(budget, initial=0), constants.FIXED_POINT_ITER_CAP))

    steps = 0
    for steps in range(1, max_steps + 1):
        index = np.flatnonzero(active)
        if index.size == 0:
            break
        new = tau(x[index] + s[index, None] * v[index])
        residual = np.abs(new - s[index])
        s[index] = new
        done = residual <= tol * _residual_scale(new)
        active[index[done]] = False

    remaining = np.flatnonzero(active)
    if remaining.size:
        logger.debug(f"Fixed point: {remaining.size} lines switched to bisection after {steps} steps")
        s[remaining] = _bisect_timelike(tau, x[remaining], v[remaining], speed[remaining])

    residual = np.abs(s - tau(x + s[:, None] * v))
    worst = int(np.argmax(residual / _residual_scale(s))) if n else 0
    if n and residual[worst] > tol * _residual_scale(s)[worst]:
        raise NumericFailureError(
            "line_surface_intersection",
            {
                "max_residual": float(residual[worst]),
                "speed": float(speed[worst]),
                "x": x[worst].tolist(),
                "v": v[worst].tolist(),
            },
            f"Line/surface fixed point did not converge (residual {residual[worst]:.3e})",
        )
    return FixedPointResult(
        s=s,
        iterations=steps,
        bisected=int(remaining.size),
        max_residual=float(residual.max(initial=0.0)),
    )


def _bisect_timelike(tau: TauFn, x: np.ndarray, v: np.ndarray, speed: np.ndarray) -> np.ndarray:
    # |s* - tau(x)| <= |tau(x)| |v| / (1 - |v|)
    center = tau(x)
    half_width = np.abs(center) * speed / (1.0 - speed) + 1.0
    lo = center - half_width
    hi = center + half_width

    def f(s):
        return s - tau(x + s[:, None] * v)

    return _bisect(f, lo, hi)


def _bisect(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorised bisection of a non-decreasing f with f(lo) <= 0 <= f(hi)."""
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        negative = f(mid) < 0
        lo = np.where(negative, mid, lo)
        hi = np.where(negative, hi, mid)
        if np.all(hi - lo <= 4.0 * np.finfo(float).eps * _residual_scale(mid)):
            break
    return 0.5 * (lo + hi)


def lightlike_residuals(tau: TauFn, a: np.ndarray, omega: np.ndarray, s: np.ndarray) -> np.ndarray:
    """f(s) = a0 + s - tau(a + s omega) for a batch of lines and parameters s of shape (N,)."""
    return a[:, 0] + s - tau(a[:, 1:] + s[:, None] * omega)


def lightlike_intersection(
    tau: TauFn,
    a: np.ndarray,
    omega: np.ndarray,
    max_exponent: int = constants.BRACKET_MAX_EXPONENT,
    tol: Optional[float] = None
) -> LightlikeSearch:
    """
    Search crossings of lightlike lines a + R(1, omega) with the graph of tau.

    Brackets [-2^k, 2^k] for k = 0..max_exponent are tried in order. A line
    without a sign change is a certified miss when its residual on the open
    side has converged (last two bracket values agree to 1e-9 relative) to a
    value farther than tol from zero.

    Args:
        tau: Graph function
        a: Base events, shape (N, 4)
        omega: Unit directions, shape (N, 3)
        max_exponent: Largest bracket exponent
        tol: Distance from zero required for a certified miss (eps_on)
    """
    tol = get_config().eps_on if tol is None else tol
    a = np.atleast_2d(np.asarray(a, dtype=float))
    omega = np.atleast_2d(np.asarray(omega, dtype=float))
    n = max(a.shape[0], omega.shape[0])
    a = np.broadcast_to(a, (n, 4))
    omega = np.broadcast_to(omega, (n, 3))

    radii = 2.0 ** np.arange(max_exponent + 1)
    f_minus = np.empty((radii.size, n))
    f_plus = np.empty((radii.size, n))
    for k, r in enumerate(radii):
        f_minus[k] = lightlike_residuals(tau, a, omega, np.full(n, -r))
        f_plus[k] = lightlike_residuals(tau, a, omega, np.full(n, r))

    bracketed = (f_minus <= 0) & (f_plus >= 0)
    found = bracketed.any(axis=0)
    first = np.argmax(bracketed, axis=0)

    s = np.full(n, np.nan)
    index = np.flatnonzero(found)
    if index.size:
        r = radii[first[index]]
        a_found = a[index]
        omega_found = omega[index]

        def f(sv):
            return lightlike_residuals(tau, a_found, omega_found, sv)

        s[index] = _bisect(f, -r, r)

    # No crossing: f < 0 on the whole bracket (missed from above) or f > 0 (from below)
    below = np.all(f_plus < 0, axis=0)
    above = np.all(f_minus > 0, axis=0)
    limits = np.where(below, f_plus[-1], np.where(above, f_minus[-1], 0.0))
    previous = np.where(below, f_plus[-2], np.where(above, f_minus[-2], 0.0))
    converged = np.abs(limits - previous) <= 1e-9 * (1.0 + np.abs(limits))
    certified = ~found & (below | above) & converged & (np.abs(limits) > tol)

    undecided = int(np.sum(~found & ~certified))
    if undecided:
        logger.debug(f"Lightlike search: {undecided} of {n} lines undecided after 2^{max_exponent}")
    return LightlikeSearch(
        found=found,
        s=s,
        certified_miss=certified,
        limits=limits,
        diagnostics={"lines": float(n), "undecided": float(undecided)},
    )


def confirm_lightlike_miss(tau: TauFn, a: np.ndarray, omega: np.ndarray, max_exponent: int = 20) -> bool:
    """
    Check a closed-form miss witness: the residual keeps one strict sign on
    [-2^k, 2^k] for every k <= max_exponent.

    Exponents stay small enough that s^2 + O(1) is exact in double precision.
    """
    a = np.asarray(a, dtype=float).reshape(1, 4)
    omega = np.asarray(omega, dtype=float).reshape(1, 3)
    radii = 2.0 ** np.arange(max_exponent + 1)
    s = np.concatenate([-radii[::-1], np.linspace(-1.0, 1.0, 41), radii])
    values = np.array([lightlike_residuals(tau, a, omega, np.array([si]))[0] for si in s])
    return bool(np.all(values > 0) or np.all(values < 0))
