"""
Pointwise evaluators of the Poincaré representations.

A field is a callable returning complex spinor values of shape (..., dim)
on batched coordinates. Every apply_* function returns a new field, so
representations compose by nesting: apply(g1, apply(g2, f)).

Domains:
    momentum-velocity space  f(p, v)         apply_w_mom
    mass interval fibres     f(m, p, omega)  apply_w_interval, iota
    a single mass shell      f(p)            apply_w_irreducible
    line space               f(x, v)         apply_w_pos
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from achronal.errors import InvalidArgumentError
from achronal.linespace.estimation import MCEstimate, estimate_from_samples
from achronal.minkowski import minkowski_product
from achronal.poincare import (
    LinePoint,
    PoincareElement,
    act_on_line,
    act_on_momentum_velocity,
    act_on_point,
    inverse_matrices,
    line_action_rn_derivative,
    lorentz_apply,
    random_unit_vectors,
    wigner_d_matrices,
    wigner_rotation_matrices,
)
from achronal.spectrum.fibration import fibre_action, iota_density, k_m_map, s_matrices
from achronal.spectrum.models import SpinContext
from achronal.spectrum.observables import energy, on_shell_momentum
from achronal.utils.parallel import map_chunks
from achronal.utils.validation import Spin, as_twice_spin, require_positive, require_vectors, require_velocity

Field = Callable[..., np.ndarray]
Sampler = Callable[[np.random.Generator, int], Tuple[Tuple[np.ndarray, ...], np.ndarray]]


def _with_time(t: np.ndarray, spatial: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    batch = np.broadcast_shapes(t.shape, spatial.shape[:-1])
    return np.concatenate([np.broadcast_to(t, batch)[..., None], np.broadcast_to(spatial, batch + (3,))], axis=-1)


def _rotate_values(D: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...j->...i", D, values)


def _broadcast_spinor(A: np.ndarray, batch: Tuple[int, ...]) -> np.ndarray:
    return np.broadcast_to(A, batch + (2, 2))


@dataclass(frozen=True, eq=False)
class GaussianField:
    """
    Smooth, rapidly decaying spinor test field.

    On pairs (y, v) it is chi exp(-|y - y0|^2 / 4s^2 - |v - v0|^2 / 4t^2);
    on momenta only the y factor is used and on fibres (m, p, omega) a mass
    bump and the factor exp(omega . v0) are added.
    """

    spinor: np.ndarray
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    width: float = 1.0
    velocity_center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    velocity_width: float = 0.3
    mass_center: float = 0.5
    mass_width: float = 0.1

    def __post_init__(self):
        spinor = np.asarray(self.spinor, dtype=complex).reshape(-1)
        object.__setattr__(self, "spinor", spinor)
        object.__setattr__(self, "center", require_vectors("center", self.center, 3))
        object.__setattr__(self, "velocity_center", require_velocity("velocity_center", self.velocity_center))
        require_positive("width", self.width)
        require_positive("velocity_width", self.velocity_width)
        require_positive("mass_width", self.mass_width)

    @property
    def dimension(self) -> int:
        return self.spinor.shape[0]

    def _envelope(self, y: np.ndarray, center: np.ndarray, width: float) -> np.ndarray:
        return np.exp(-np.sum((y - center) ** 2, axis=-1) / (4.0 * width * width))

    def on_momenta(self, p) -> np.ndarray:
        p = require_vectors("p", p, 3)
        return self._envelope(p, self.center, self.width)[..., None] * self.spinor

    def on_pairs(self, y, v) -> np.ndarray:
        y = require_vectors("y", y, 3)
        v = require_vectors("v", v, 3)
        scale = self._envelope(y, self.center, self.width) * self._envelope(v, self.velocity_center, self.velocity_width)
        return scale[..., None] * self.spinor

    def on_fibres(self, m, p, omega) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        omega = require_vectors("omega", omega, 3)
        bump = np.exp(-((m - self.mass_center) ** 2) / (4.0 * self.mass_width ** 2))
        tilt = np.exp(np.sum(omega * self.velocity_center, axis=-1))
        return (bump * tilt)[..., None] * self.on_momenta(p)

    __call__ = on_pairs


def apply_w_mom(ctx: SpinContext, g: PoincareElement, phi: Field) -> Field:
    """
    Momentum-velocity representation:
    (A^-1.(1, v))_0^(-3/2) e^{i a.P} D^(J)(R((1, v), A)) phi(A^-1.(p, v)) with P = (E(p, v), p).
    """
    A = g.spinor.matrix
    A_inv = inverse_matrices(A)
    a = g.translation

    def transformed(p, v) -> np.ndarray:
        p = require_vectors("p", p, 3)
        v = require_velocity("v", v)
        direction = _with_time(1.0, v)
        batch = direction.shape[:-1]
        w0 = lorentz_apply(A_inv, direction)[..., 0]
        momentum = _with_time(energy(p, v, ctx.mu), p)
        phase = np.exp(1j * minkowski_product(a, momentum))
        D = wigner_d_matrices(ctx.twice_j, wigner_rotation_matrices(direction, _broadcast_spinor(A, batch)))
        p_in, v_in = act_on_momentum_velocity(A_inv, np.broadcast_to(p, batch + (3,)), v, ctx.mu)
        return (w0 ** -1.5 * phase)[..., None] * _rotate_values(D, phi(p_in, v_in))

    return transformed


def apply_w_interval(ctx: SpinContext, g: PoincareElement, phi: Field) -> Field:
    """
    Direct integral over masses:
    sqrt(ε(A^-1.p)/ε(p)) e^{i a.P} D^(J)(R(P, A)) phi(m, A^-1.p, R(P, A)^-1.omega),
    P = (ε(p), p). The mass coordinate is never changed.
    """
    A = g.spinor.matrix
    a = g.translation

    def transformed(m, p, omega) -> np.ndarray:
        p_moved, omega_moved, rotation = fibre_action(ctx, A, m, p, omega)
        momentum = on_shell_momentum(m, np.asarray(p, dtype=float))
        ratio = np.sqrt(on_shell_momentum(m, p_moved)[..., 0] / momentum[..., 0])
        phase = np.exp(1j * minkowski_product(a, momentum))
        D = wigner_d_matrices(ctx.twice_j, rotation)
        m_b = np.broadcast_to(np.asarray(m, dtype=float), ratio.shape)
        return (ratio * phase)[..., None] * _rotate_values(D, phi(m_b, p_moved, omega_moved))

    return transformed


def apply_w_irreducible(m: float, j: Spin, g: PoincareElement, phi: Field) -> Field:
    """
    Irreducible representation of mass m and spin j:
    sqrt(ε(A^-1.p)/ε(p)) e^{i a.P} D^(j)(R(P, A)) phi(A^-1.p).

    Raises:
        InvalidArgumentError: If m <= 0 or j is not a half-integer
    """
    m = require_positive("m", m)
    twice_j = as_twice_spin("j", j)
    A = g.spinor.matrix
    A_inv = inverse_matrices(A)
    a = g.translation

    def transformed(p) -> np.ndarray:
        momentum = on_shell_momentum(m, p)
        batch = momentum.shape[:-1]
        moved = lorentz_apply(A_inv, momentum)
        ratio = np.sqrt(moved[..., 0] / momentum[..., 0])
        phase = np.exp(1j * minkowski_product(a, momentum))
        D = wigner_d_matrices(twice_j, wigner_rotation_matrices(momentum, _broadcast_spinor(A, batch)))
        return (ratio * phase)[..., None] * _rotate_values(D, phi(moved[..., 1:]))

    return transformed


def apply_w_pos(ctx: SpinContext, g: PoincareElement, psi: Field) -> Field:
    """
    Position representation on line space:
    RN(g, u)^(1/2) e^{-i (g^-1.x)_0 |(A^-1.(1, v))_0|^-1 sqrt(1 - v^2) mu} D^(J)(R((1, v), A)) psi(g^-1.u),
    x = (0, x) the chart point of u. The phase is mu times the proper time
    along g^-1.u from its own chart point to g^-1.x.
    """
    A = g.spinor.matrix
    A_inv = inverse_matrices(A)
    g_inv = g.inverse()

    def transformed(x, v) -> np.ndarray:
        u = LinePoint(x, v)
        direction = u.direction()
        batch = direction.shape[:-1]
        w0 = lorentz_apply(A_inv, direction)[..., 0]
        rn = line_action_rn_derivative(g, u)
        t_moved = act_on_point(g_inv, u.base_point())[..., 0]
        proper = t_moved * np.sqrt(1.0 - np.sum(u.v * u.v, axis=-1)) / np.abs(w0)
        phase = np.exp(-1j * ctx.mu * proper)
        D = wigner_d_matrices(ctx.twice_j, wigner_rotation_matrices(direction, _broadcast_spinor(A, batch)))
        moved = act_on_line(g_inv, u)
        return (np.sqrt(rn) * phase)[..., None] * _rotate_values(D, psi(moved.x, moved.v))

    return transformed


def iota(ctx: SpinContext, phi: Field) -> Field:
    """(ι phi)(m, p, omega) = d(m, p, omega) S(m, p, omega) phi(k_m(p, omega))."""

    def transformed(m, p, omega) -> np.ndarray:
        point = k_m_map(ctx, m, p, omega)
        d = np.asarray(iota_density(ctx, m, p, omega))
        S = s_matrices(ctx, m, p, omega)
        return d[..., None] * _rotate_values(S, phi(point.p, point.v))

    return transformed


# Samplers return (coordinates, proposal density) for l2_norm_estimate

def pair_sampler(center, half_width: float, v_radius: float = 1.0 - 1e-6) -> Sampler:
    """(y, v): y uniform in a cube around center, v uniform in the ball |v| < v_radius."""
    center = require_vectors("center", center, 3)
    half_width = require_positive("half_width", half_width)
    density = 1.0 / ((2.0 * half_width) ** 3 * (4.0 * np.pi / 3.0) * v_radius ** 3)

    def draw(rng: np.random.Generator, size: int):
        y = center + rng.uniform(-half_width, half_width, (size, 3))
        v = random_unit_vectors(rng, size) * (v_radius * rng.uniform(0.0, 1.0, size) ** (1.0 / 3.0))[:, None]
        return (y, v), np.full(size, density)

    return draw


def momentum_sampler(center, half_width: float) -> Sampler:
    """p uniform in a cube around center."""
    center = require_vectors("center", center, 3)
    half_width = require_positive("half_width", half_width)
    density = 1.0 / (2.0 * half_width) ** 3

    def draw(rng: np.random.Generator, size: int):
        return (center + rng.uniform(-half_width, half_width, (size, 3)),), np.full(size, density)

    return draw


def fibre_sampler(ctx: SpinContext, center, half_width: float) -> Sampler:
    """
    (m, p, omega): m uniform in the mass window, p in a cube, omega uniform.

    The sphere carries its normalized measure, so omega contributes density 1.
    """
    center = require_vectors("center", center, 3)
    half_width = require_positive("half_width", half_width)
    low, high = ctx.mass_window
    density = 1.0 / ((high - low) * (2.0 * half_width) ** 3)

    def draw(rng: np.random.Generator, size: int):
        m = rng.uniform(low, high, size)
        p = center + rng.uniform(-half_width, half_width, (size, 3))
        return (m, p, random_unit_vectors(rng, size)), np.full(size, density)

    return draw


def l2_norm_estimate(
    phi: Field,
    sampler: Sampler,
    n_samples: int,
    seed: int,
    workers: int = 1,
    chunk_size: Optional[int] = None
) -> MCEstimate:
    """
    Monte Carlo estimate of the squared L2 norm of a field over the region
    covered by the sampler (importance weights 1/density).
    """
    if n_samples < 1:
        raise InvalidArgumentError("n_samples", "n_samples must be positive")

    def chunk(rng: np.random.Generator, size: int) -> np.ndarray:
        coordinates, density = sampler(rng, size)
        values = phi(*coordinates)
        return np.sum(np.abs(values) ** 2, axis=-1) / density

    kwargs = {} if chunk_size is None else {"chunk_size": chunk_size}
    samples = map_chunks(chunk, n_samples, seed, workers=workers, **kwargs)
    return estimate_from_samples(samples, seed)


__all__ = [
    "Field",
    "GaussianField",
    "apply_w_mom",
    "apply_w_interval",
    "apply_w_irreducible",
    "apply_w_pos",
    "iota",
    "pair_sampler",
    "momentum_sampler",
    "fibre_sampler",
    "l2_norm_estimate",
]
