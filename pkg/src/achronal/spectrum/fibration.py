"""
The mass fibration of Π: the maps k_m, their inverse, the density of the ι
transform and the S-matrix, plus the pointwise identities that make ι an
intertwiner.

Masses, momenta and directions are batched along the leading axis; scalars
and single vectors broadcast.
"""

from typing import Dict, Tuple

import numpy as np

from achronal.config import get_config
from achronal.errors import InvalidArgumentError, NumericFailureError
from achronal.logger import get_logger
from achronal.poincare import (
    SpinorLike,
    WignerDMatrix,
    act_on_momentum_velocity,
    as_matrix,
    canonical_boost_matrices,
    inverse_matrices,
    lorentz_apply,
    star_action,
    wigner_d_matrices,
    wigner_rotation_matrices,
)
from achronal.spectrum.models import SpinContext
from achronal.spectrum.observables import MomentumVelocityPoint, energy, mass_squared, on_shell_momentum
from achronal.utils.validation import require_unit_vector, require_vectors

logger = get_logger("spectrum.fibration")

# |det Dk| at or below this counts as singular
SINGULAR_DET = 1e-14


def _require_masses(ctx: SpinContext, m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if np.any(~((m > 0) & (m < ctx.mu))):
        raise InvalidArgumentError("m", f"masses must lie in (0, {ctx.mu})")
    return m


def _shell_scale(ctx: SpinContext, m: np.ndarray) -> np.ndarray:
    """sqrt(1 - m^2/mu^2), the speed of k_m at p = 0."""
    return np.asarray(np.sqrt(1.0 - (np.asarray(m) / ctx.mu) ** 2))


def _tangent_basis(omega: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Two orthonormal tangent vectors of the unit sphere at each omega."""
    helper = np.zeros_like(omega)
    use_x = np.abs(omega[..., 0]) < 0.9
    helper[..., 0] = np.where(use_x, 1.0, 0.0)
    helper[..., 1] = np.where(use_x, 0.0, 1.0)
    e1 = helper - np.sum(helper * omega, axis=-1, keepdims=True) * omega
    e1 /= np.linalg.norm(e1, axis=-1, keepdims=True)
    return e1, np.cross(omega, e1)


def _unit(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def _velocity_on_shell(ctx: SpinContext, m: np.ndarray, p: np.ndarray, omega: np.ndarray) -> np.ndarray:
    q = canonical_boost_matrices(on_shell_momentum(m, p))
    return star_action(q, _shell_scale(ctx, m)[..., None] * omega)


def k_m_map(ctx: SpinContext, m, p, omega) -> MomentumVelocityPoint:
    """
    k_m(p, omega) = (p, Q(P)*(sqrt(1 - m^2/mu^2) omega)) with P = (sqrt(m^2 + p^2), p).

    Raises:
        InvalidArgumentError: If m is outside (0, mu) or omega is not a unit vector
    """
    m = _require_masses(ctx, m)
    p = require_vectors("p", p, 3)
    omega = require_unit_vector("omega", omega, tol=1e-9)
    v = _velocity_on_shell(ctx, m, p, omega)
    p = np.broadcast_to(p, v.shape).copy()
    return MomentumVelocityPoint(p, v, ctx.mu)


def k_m_inverse(ctx: SpinContext, p, v) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Recover (m, p, omega) from a point of the interior of Π.

    Raises:
        InvalidArgumentError: If E <= 0 or gamma(p, v) is outside (0, mu^2)
    """
    p = require_vectors("p", p, 3)
    e = np.asarray(energy(p, v, ctx.mu))
    gamma = np.asarray(mass_squared(p, v, ctx.mu))
    if np.any(e <= 0) or np.any(~((gamma > 0) & (gamma < ctx.mu ** 2))):
        raise InvalidArgumentError("(p, v)", "point is not in the interior of the mass fibration")
    m = np.sqrt(gamma)
    q_inv = inverse_matrices(canonical_boost_matrices(on_shell_momentum(m, p)))
    omega = star_action(q_inv, np.asarray(v, dtype=float)) / _shell_scale(ctx, m)[..., None]
    return m, np.broadcast_to(p, omega.shape).copy(), omega


def k_jacobian_determinant(ctx: SpinContext, m, p, omega) -> np.ndarray:
    """
    |det Dk| at (m, p, omega) in the chart (m, tangent coordinates of omega, p).

    The p block of Dk is the identity, so the determinant reduces to the 3x3
    block of velocity derivatives in m and the two tangent directions, taken
    by central differences with step fd_step.

    Raises:
        NumericFailureError: If m +- h leaves (0, mu) or the Jacobian is singular
    """
    h = get_config().fd_step
    m = _require_masses(ctx, m)
    p = require_vectors("p", p, 3)
    omega = require_unit_vector("omega", omega, tol=1e-9)
    m, p, omega = np.broadcast_arrays(m[..., None], p, omega)
    m = m[..., 0]

    if np.any(m - h <= 0) or np.any(m + h >= ctx.mu):
        raise NumericFailureError(
            "k_jacobian_determinant",
            diagnostics={"step": h, "mu": ctx.mu},
            message="finite-difference stencil leaves the mass interval",
        )

    e1, e2 = _tangent_basis(omega)
    columns = [
        _velocity_on_shell(ctx, m + h, p, omega) - _velocity_on_shell(ctx, m - h, p, omega),
        _velocity_on_shell(ctx, m, p, _unit(omega + h * e1)) - _velocity_on_shell(ctx, m, p, _unit(omega - h * e1)),
        _velocity_on_shell(ctx, m, p, _unit(omega + h * e2)) - _velocity_on_shell(ctx, m, p, _unit(omega - h * e2)),
    ]
    jacobian = np.stack(columns, axis=-1) / (2.0 * h)
    det = np.abs(np.linalg.det(jacobian))
    if np.any(det <= SINGULAR_DET):
        worst = float(np.min(det))
        logger.error(f"Singular mass-fibration Jacobian (|det| = {worst:.3e})")
        raise NumericFailureError(
            "k_jacobian_determinant",
            diagnostics={"min_det": worst},
            message=f"Jacobian of k is singular (|det| = {worst:.3e})",
        )
    return det


def iota_density(ctx: SpinContext, m, p, omega):
    """d(m, p, omega) = sqrt(4 pi |det Dk|), the density that makes ι isometric."""
    d = np.sqrt(4.0 * np.pi * k_jacobian_determinant(ctx, m, p, omega))
    return float(d) if np.ndim(d) == 0 else d


def _rest_direction(ctx: SpinContext, m: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """w = (1, sqrt(1 - m^2/mu^2) omega)."""
    spatial = _shell_scale(ctx, m)[..., None] * omega
    return np.concatenate([np.ones(spatial.shape[:-1] + (1,)), spatial], axis=-1)


def s_rotations(ctx: SpinContext, m, p, omega) -> np.ndarray:
    """R(w, Q(P)^-1), the SU(2) element underlying the S-matrix."""
    m = _require_masses(ctx, m)
    p = require_vectors("p", p, 3)
    omega = require_unit_vector("omega", omega, tol=1e-9)
    q_inv = inverse_matrices(canonical_boost_matrices(on_shell_momentum(m, p)))
    w = _rest_direction(ctx, m, omega)
    w, q_inv = _broadcast_pair(w, q_inv)
    return wigner_rotation_matrices(w, q_inv)


def s_matrices(ctx: SpinContext, m, p, omega) -> np.ndarray:
    """S(m, p, omega) = D^(J)(R(w, Q(P)^-1)), batched."""
    return wigner_d_matrices(ctx.twice_j, s_rotations(ctx, m, p, omega))


def s_matrix(ctx: SpinContext, m, p, omega):
    """Single S-matrix as a WignerDMatrix."""
    entries = s_matrices(ctx, m, p, omega)
    if entries.ndim != 2:
        raise InvalidArgumentError("p", "s_matrix expects a single point; use s_matrices for batches")
    return WignerDMatrix(ctx.J, entries)


def _broadcast_pair(k: np.ndarray, A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    batch = np.broadcast_shapes(k.shape[:-1], A.shape[:-2])
    return np.broadcast_to(k, batch + (4,)), np.broadcast_to(A, batch + (2, 2))


def fibre_action(ctx: SpinContext, A: SpinorLike, m, p, omega) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    The action of A on the fibred coordinates:
    (p, omega) -> (A^-1.p, R(P, A)^-1.omega), with m unchanged.

    Returns:
        (p', omega', R(P, A))
    """
    m = _require_masses(ctx, m)
    p = require_vectors("p", p, 3)
    A = as_matrix(A)
    momentum = on_shell_momentum(m, p)
    momentum, A = _broadcast_pair(momentum, A)
    rotation = wigner_rotation_matrices(momentum, A)
    moved = lorentz_apply(inverse_matrices(A), momentum)[..., 1:]
    omega_new = star_action(inverse_matrices(rotation), np.asarray(omega, dtype=float))
    return moved, omega_new, rotation


def equivariance_residual(ctx: SpinContext, A: SpinorLike, m, p, omega) -> Dict[str, float]:
    """
    Max deviation of k_m^-1(A^-1.k_m(p, omega)) from (m, A^-1.p, R(P, A)^-1.omega).
    """
    point = k_m_map(ctx, m, p, omega)
    A = as_matrix(A)
    p_moved, v_moved = act_on_momentum_velocity(inverse_matrices(A), point.p, point.v, ctx.mu)
    m_back, p_back, omega_back = k_m_inverse(ctx, p_moved, v_moved)
    p_expected, omega_expected, _ = fibre_action(ctx, A, m, p, omega)
    return {
        "mass": float(np.max(np.abs(m_back - np.asarray(m, dtype=float)))),
        "momentum": float(np.max(np.abs(p_back - p_expected))),
        "direction": float(np.max(np.abs(omega_back - omega_expected))),
    }


def rotation_factorization_residual(ctx: SpinContext, A: SpinorLike, m, p, omega) -> Dict[str, float]:
    """
    R(P, A) = R(w, Q(P)^-1) R(Q(P).w, A) R(w', Q(P')^-1)^-1 with primes at the
    moved fibre point; checked in SU(2) and, for J > 0, after applying D^(J).
    """
    A = as_matrix(A)
    m = _require_masses(ctx, m)
    p_moved, omega_moved, rotation = fibre_action(ctx, A, m, p, omega)
    s_here = s_rotations(ctx, m, p, omega)
    s_there = s_rotations(ctx, m, p_moved, omega_moved)

    q = canonical_boost_matrices(on_shell_momentum(m, np.asarray(p, dtype=float)))
    velocity = lorentz_apply(q, _rest_direction(ctx, m, np.asarray(omega, dtype=float)))
    velocity, A_b = _broadcast_pair(velocity, A)
    middle = wigner_rotation_matrices(velocity, A_b)

    product = s_here @ middle @ inverse_matrices(s_there)
    report = {"su2": float(np.max(np.abs(product - rotation)))}
    if ctx.twice_j > 0:
        lhs = wigner_d_matrices(ctx.twice_j, rotation)
        rhs = (
            wigner_d_matrices(ctx.twice_j, s_here)
            @ wigner_d_matrices(ctx.twice_j, middle)
            @ np.conj(np.swapaxes(wigner_d_matrices(ctx.twice_j, s_there), -1, -2))
        )
        report["wigner_d"] = float(np.max(np.abs(lhs - rhs)))
    return report


def delta_factor(ctx: SpinContext, A: SpinorLike, m, p, omega) -> np.ndarray:
    """
    Δ(m, p, omega, A) = d(m, p, omega) / d(m, p', omega') * (A^-1.(1, v))_0^(-3/2),
    v the velocity of k_m(p, omega).
    """
    A = as_matrix(A)
    p_moved, omega_moved, _ = fibre_action(ctx, A, m, p, omega)
    v = k_m_map(ctx, m, p, omega).v
    direction = np.concatenate([np.ones(v.shape[:-1] + (1,)), v], axis=-1)
    w0 = lorentz_apply(inverse_matrices(A), direction)[..., 0]
    return iota_density(ctx, m, p, omega) / iota_density(ctx, m, p_moved, omega_moved) * w0 ** -1.5


def density_ratio_residual(ctx: SpinContext, A: SpinorLike, m, p, omega) -> float:
    """Max relative deviation of Δ(m, p, omega, A) from sqrt(ε(A^-1.p) / ε(p))."""
    A = as_matrix(A)
    m = _require_masses(ctx, m)
    p_moved, _, _ = fibre_action(ctx, A, m, p, omega)
    eps_here = on_shell_momentum(m, np.asarray(p, dtype=float))[..., 0]
    eps_there = on_shell_momentum(m, p_moved)[..., 0]
    expected = np.sqrt(eps_there / eps_here)
    return float(np.max(np.abs(delta_factor(ctx, A, m, p, omega) / expected - 1.0)))


__all__ = [
    "k_m_map",
    "k_m_inverse",
    "k_jacobian_determinant",
    "iota_density",
    "s_rotations",
    "s_matrices",
    "s_matrix",
    "fibre_action",
    "equivariance_residual",
    "rotation_factorization_residual",
    "delta_factor",
    "density_ratio_residual",
]
