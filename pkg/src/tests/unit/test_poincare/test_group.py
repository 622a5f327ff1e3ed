"""
Unit tests for the Poincaré group law and its actions.

Tests cover:
- PoincareElement composition, inverse and JSON layout
- Action on points and on timelike lines
- The Radon-Nikodym derivative of the line action
- The star action on velocities
"""

import numpy as np
import pytest

from achronal.errors import InvalidArgumentError
from achronal.minkowski import FourVector, minkowski_product
from achronal.poincare import (
    LinePoint,
    PoincareElement,
    SpinorMatrix,
    act_on_line,
    act_on_point,
    line_action_rn_derivative,
    star_action,
)
from tests.utils.assertions import assert_close
from tests.utils.factories import GroupFactory, LineFactory


def _jacobian_determinant(g: PoincareElement, u: LinePoint, h: float = 1e-5) -> np.ndarray:
    """|det| of the central-difference Jacobian of u -> g^-1.u in the (x, v) chart."""
    g_inv = g.inverse()
    z = np.concatenate([u.x, u.v], axis=-1)
    shift = np.eye(6) * h

    def moved(points):
        flat = points.reshape(-1, 6)
        image = act_on_line(g_inv, LinePoint(flat[:, :3], flat[:, 3:]))
        return np.concatenate([image.x, image.v], axis=-1).reshape(points.shape)

    jacobian = (moved(z[:, None, :] + shift) - moved(z[:, None, :] - shift)) / (2.0 * h)
    return np.abs(np.linalg.det(jacobian))


@pytest.mark.unit
@pytest.mark.poincare
class TestPoincareElement:
    """Test the ISL(2,C) group law."""

    def test_identity_is_neutral(self, rng):
        """Test e*g = g*e = g."""
        g = GroupFactory.element(rng)
        e = PoincareElement.identity()

        for product in (e * g, g * e):
            assert_close(product.translation, g.translation, 1e-14)
            assert_close(product.spinor.matrix, g.spinor.matrix, 1e-14)

    def test_inverse(self, rng):
        """Test g * g^-1 = identity."""
        g = GroupFactory.element(rng, max_rapidity=1.5, translation_scale=3.0)

        product = g * g.inverse()

        assert_close(product.translation, np.zeros(4), 1e-12)
        assert_close(product.spinor.matrix, np.eye(2), 1e-12)

    def test_associative(self, rng):
        """Test (gh)k = g(hk)."""
        g, h, k = (GroupFactory.element(rng) for _ in range(3))

        left = (g * h) * k
        right = g * (h * k)

        assert_close(left.translation, right.translation, 1e-11)
        assert_close(left.spinor.matrix, right.spinor.matrix, 1e-12)

    def test_json_layout(self, rng):
        """Test the 12-real layout: translation then spinor."""
        g = GroupFactory.element(rng)

        values = g.to_json()
        restored = PoincareElement.from_json(values)

        assert len(values) == 12
        assert values[:4] == [float(a) for a in g.translation]
        assert_close(restored.spinor.matrix, g.spinor.matrix, 0.0)

    def test_from_json_rejects_wrong_length(self):
        """Test that 11 reals are rejected."""
        with pytest.raises(InvalidArgumentError):
            PoincareElement.from_json([0.0] * 11)

    def test_rejects_bad_translation(self):
        """Test that a 3-component translation is rejected."""
        with pytest.raises(InvalidArgumentError):
            PoincareElement(np.zeros(3))

    def test_accepts_raw_spinor_array(self):
        """Test that a raw 2x2 array is wrapped into a SpinorMatrix."""
        g = PoincareElement(np.zeros(4), np.eye(2))

        assert isinstance(g.spinor, SpinorMatrix)


@pytest.mark.unit
@pytest.mark.poincare
class TestPointAction:
    """Test g.x = a + Lambda(A) x."""

    def test_translation(self):
        """Test a pure translation."""
        g = PoincareElement.translation_by([1.0, 2.0, 3.0, 4.0])

        assert act_on_point(g, FourVector(0.0, 0.0, 0.0, 0.0)) == FourVector(1.0, 2.0, 3.0, 4.0)

    def test_is_a_group_action(self, rng):
        """Test (gh).x = g.(h.x) on a batch."""
        g, h = GroupFactory.element(rng), GroupFactory.element(rng)
        x = rng.normal(size=(30, 4))

        assert_close(act_on_point(g * h, x), act_on_point(g, act_on_point(h, x)), 1e-10)

    def test_preserves_intervals(self, rng):
        """Test that (gx - gy)^2 = (x - y)^2."""
        g = GroupFactory.element(rng)
        x, y = rng.normal(size=(30, 4)), rng.normal(size=(30, 4))

        before = minkowski_product(x - y, x - y)
        after = minkowski_product(act_on_point(g, x) - act_on_point(g, y), act_on_point(g, x) - act_on_point(g, y))

        assert_close(after, before, 1e-9, relative=True)


@pytest.mark.unit
@pytest.mark.poincare
class TestLineAction:
    """Test the action on the (x, v) chart of timelike lines."""

    def test_linepoint_rejects_superluminal_velocity(self):
        """Test that |v| >= 1 is rejected."""
        with pytest.raises(InvalidArgumentError):
            LinePoint([0.0, 0.0, 0.0], [1.0, 0.0, 0.0])

    def test_image_lies_on_transformed_line(self, rng):
        """Test that g maps points of the line onto the image line."""
        g = GroupFactory.element(rng)
        u = LineFactory.create(rng, 20)
        image = act_on_line(g, u)

        point = u.base_point() + 1.7 * u.direction()
        moved = act_on_point(g, point)
        on_image = image.base_point() + moved[:, :1] * image.direction()

        assert_close(moved, on_image, 1e-10)

    def test_composition(self, rng):
        """Test (gh).u = g.(h.u)."""
        g, h = GroupFactory.element(rng), GroupFactory.element(rng)
        u = LineFactory.create(rng, 50)

        direct = act_on_line(g * h, u)
        stepwise = act_on_line(g, act_on_line(h, u))

        assert_close(direct.x, stepwise.x, 1e-9)
        assert_close(direct.v, stepwise.v, 1e-12)

    def test_translation_only_shifts(self):
        """Test that a spatial translation shifts x and keeps v."""
        u = LinePoint(np.zeros(3), np.array([0.5, 0.0, 0.0]))

        image = act_on_line(PoincareElement.translation_by([0.0, 1.0, 0.0, 0.0]), u)

        assert_close(image.x, [1.0, 0.0, 0.0], 1e-15)
        assert_close(image.v, [0.5, 0.0, 0.0], 1e-15)

    def test_time_translation_moves_intercept(self):
        """Test that shifting x0 by 1 moves the intercept by -v."""
        u = LinePoint(np.zeros(3), np.array([0.5, 0.0, 0.0]))

        image = act_on_line(PoincareElement.translation_by([1.0, 0.0, 0.0, 0.0]), u)

        assert_close(image.x, [-0.5, 0.0, 0.0], 1e-15)

    def test_rn_derivative_is_one_for_rotations(self, rng):
        """Test that rotations preserve the line measure."""
        g = PoincareElement(rng.normal(size=4), SpinorMatrix(GroupFactory.su2(rng, 1)[0]))

        rn = line_action_rn_derivative(g, LineFactory.create(rng, 30))

        assert_close(rn, np.ones(30), 1e-12)

    def test_rn_derivative_matches_jacobian(self, rng):
        """Test the closed form against a finite-difference Jacobian."""
        g = GroupFactory.element(rng, max_rapidity=0.8)
        u = LineFactory.create(rng, 10, speed=0.7)

        det = _jacobian_determinant(g, u)

        assert_close(det / line_action_rn_derivative(g, u), np.ones(10), 1e-6)


@pytest.mark.unit
@pytest.mark.poincare
class TestStarAction:
    """Test A*v on velocities."""

    def test_identity(self, rng):
        """Test 1*v = v."""
        v = LineFactory.create(rng, 10).v

        assert_close(star_action(np.eye(2), v), v, 1e-15)

    def test_stays_subluminal(self, rng):
        """Test |A*v| < 1."""
        A = GroupFactory.sl2c(rng, 100, max_rapidity=3.0)
        v = LineFactory.create(rng, 100, speed=0.99).v

        assert np.all(np.linalg.norm(star_action(A, v), axis=-1) < 1.0)

    def test_velocity_addition_along_axis(self):
        """Test the relativistic addition of collinear velocities."""
        r = np.arctanh(0.5)
        A = SpinorMatrix.boost([1.0, 0.0, 0.0], r)

        w = star_action(A, np.array([0.5, 0.0, 0.0]))

        assert_close(w, [0.8, 0.0, 0.0], 1e-12)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
