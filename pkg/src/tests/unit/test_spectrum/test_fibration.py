"""
Unit tests for the mass fibration of Π.

Tests cover:
- k_m lands on the level set gamma = m^2 and k_m^-1 recovers the fibre point
- The Jacobian determinant against its closed form at p = 0
- S-matrices
- Equivariance, rotation factorization and the density ratio
"""

import numpy as np
import pytest

from achronal.errors import InvalidArgumentError, NumericFailureError
from achronal.poincare import WignerDMatrix, random_unit_vectors
from achronal.spectrum import (
    SpinContext,
    density_ratio_residual,
    equivariance_residual,
    fibre_action,
    iota_density,
    k_jacobian_determinant,
    k_m_inverse,
    k_m_map,
    mass_squared,
    rotation_factorization_residual,
    s_matrices,
    s_matrix,
)
from tests.utils.assertions import assert_close, assert_unitary
from tests.utils.factories import GroupFactory


def _fibre_points(rng, size=40):
    m = rng.uniform(0.3, 0.7, size)
    p = rng.normal(0.0, 1.0, (size, 3))
    return m, p, random_unit_vectors(rng, size)


@pytest.mark.unit
@pytest.mark.spectrum
class TestMassFibration:
    """Test k_m and its inverse."""

    def test_image_has_mass_m(self, rng, spin_half):
        """Test gamma(k_m(p, omega)) = m^2 with positive energy."""
        m, p, omega = _fibre_points(rng)

        point = k_m_map(spin_half, m, p, omega)

        assert_close(mass_squared(point.p, point.v, spin_half.mu), m * m, 1e-10, relative=True)
        assert np.all(np.asarray(point.energy()) > 0)

    def test_inverse_recovers_fibre_point(self, rng, spin_half):
        """Test k_m^-1(k_m(p, omega)) = (m, p, omega)."""
        m, p, omega = _fibre_points(rng)

        point = k_m_map(spin_half, m, p, omega)
        m_back, p_back, omega_back = k_m_inverse(spin_half, point.p, point.v)

        assert_close(m_back, m, 1e-10)
        assert_close(p_back, p, 1e-12)
        assert_close(omega_back, omega, 1e-9)

    def test_rest_point_velocity(self, spin_half):
        """Test v = sqrt(1 - m^2/mu^2) omega at p = 0."""
        point = k_m_map(spin_half, 0.6, np.zeros(3), np.array([0.0, 1.0, 0.0]))

        assert_close(point.v, [0.0, 0.8, 0.0], 1e-12)

    def test_boundary_is_not_interior(self, spin_half):
        """Test that gamma = mu^2 at v = 0 is outside the open fibration."""
        with pytest.raises(InvalidArgumentError):
            k_m_inverse(spin_half, np.zeros(3), np.zeros(3))

    @pytest.mark.parametrize("m", [0.0, 1.0, 1.2])
    def test_rejects_masses_outside_interval(self, spin_half, m):
        """Test 0 < m < mu."""
        with pytest.raises(InvalidArgumentError):
            k_m_map(spin_half, m, np.zeros(3), np.array([1.0, 0.0, 0.0]))


@pytest.mark.unit
@pytest.mark.spectrum
class TestJacobian:
    """Test |det Dk| and the density d."""

    @pytest.mark.parametrize("m", [0.2, 0.5, 0.9])
    def test_closed_form_at_rest(self, spin_half, m):
        """Test |det Dk| = m sqrt(1 - m^2/mu^2) / mu^2 at p = 0."""
        det = k_jacobian_determinant(spin_half, m, np.zeros(3), np.array([0.0, 0.0, 1.0]))

        assert float(det) == pytest.approx(m * np.sqrt(1.0 - m * m), rel=1e-7)

    def test_density(self, rng, spin_half):
        """Test d = sqrt(4 pi |det Dk|)."""
        m, p, omega = _fibre_points(rng, 10)

        assert_close(
            iota_density(spin_half, m, p, omega),
            np.sqrt(4.0 * np.pi * k_jacobian_determinant(spin_half, m, p, omega)),
            1e-14,
        )

    def test_stencil_leaving_interval(self, spin_half):
        """Test that a mass closer to 0 than the step is refused."""
        with pytest.raises(NumericFailureError):
            k_jacobian_determinant(spin_half, 1e-6, np.zeros(3), np.array([1.0, 0.0, 0.0]))


@pytest.mark.unit
@pytest.mark.spectrum
class TestSMatrix:
    """Test S(m, p, omega) = D^(J)(R(w, Q(P)^-1))."""

    @pytest.mark.parametrize("spin", [0, "1/2", 1, "3/2"])
    def test_unitary(self, rng, spin):
        """Test unitarity for several spins."""
        ctx = SpinContext(spin=spin)
        m, p, omega = _fibre_points(rng)

        S = s_matrices(ctx, m, p, omega)

        assert S.shape == (40, ctx.dimension, ctx.dimension)
        assert_unitary(S, 1e-10)

    def test_identity_at_rest(self, spin_half):
        """Test S = 1 at p = 0."""
        S = s_matrices(spin_half, 0.5, np.zeros(3), np.array([0.6, 0.0, 0.8]))

        assert_close(S, np.eye(2), 1e-12)

    def test_single_point_type(self, spin_half):
        """Test the scalar API and its batch guard."""
        single = s_matrix(spin_half, 0.5, np.array([0.3, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))

        assert isinstance(single, WignerDMatrix)
        assert single.is_unitary()
        with pytest.raises(InvalidArgumentError):
            s_matrix(spin_half, 0.5, np.zeros((2, 3)), np.array([0.0, 1.0, 0.0]))


@pytest.mark.unit
@pytest.mark.spectrum
class TestIntertwinerIdentities:
    """Test the pointwise identities behind the ι intertwiner."""

    def test_identity_acts_trivially(self, rng, spin_half):
        """Test that A = 1 fixes every fibre point."""
        m, p, omega = _fibre_points(rng, 10)

        p_moved, omega_moved, rotation = fibre_action(spin_half, np.eye(2), m, p, omega)

        assert_close(p_moved, p, 1e-12)
        assert_close(omega_moved, omega, 1e-12)
        assert_close(rotation, np.broadcast_to(np.eye(2), rotation.shape), 1e-12)

    def test_equivariance(self, rng, spin_half):
        """Test k_m^-1(A^-1.k_m(p, omega)) = (m, A^-1.p, R(P, A)^-1.omega)."""
        m, p, omega = _fibre_points(rng)
        A = GroupFactory.sl2c(rng, 40, max_rapidity=0.8)

        residual = equivariance_residual(spin_half, A, m, p, omega)

        assert max(residual.values()) < 1e-8

    @pytest.mark.parametrize("spin", ["1/2", 1, "5/2"])
    def test_rotation_factorization(self, rng, spin):
        """Test R(P, A) = S-rotation * R(Q(P).w, A) * S-rotation'^-1 in SU(2) and after D^(J)."""
        ctx = SpinContext(spin=spin)
        m, p, omega = _fibre_points(rng)
        A = GroupFactory.sl2c(rng, 40, max_rapidity=0.8)

        residual = rotation_factorization_residual(ctx, A, m, p, omega)

        assert set(residual) == {"su2", "wigner_d"}
        assert max(residual.values()) < 1e-8

    def test_spin_zero_skips_wigner_d(self, rng):
        """Test that J = 0 only reports the SU(2) residual."""
        m, p, omega = _fibre_points(rng, 5)

        residual = rotation_factorization_residual(SpinContext(), GroupFactory.sl2c(rng, 5), m, p, omega)

        assert set(residual) == {"su2"}

    def test_density_ratio(self, rng, spin_half):
        """Test Δ = sqrt(ε(A^-1.p) / ε(p))."""
        m, p, omega = _fibre_points(rng, 20)
        A = GroupFactory.sl2c(rng, 20, max_rapidity=0.5)

        assert density_ratio_residual(spin_half, A, m, p, omega) < 1e-6


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
