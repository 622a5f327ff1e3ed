"""
Unit tests for the Minkowski vector kernel.

Tests cover:
- FourVector construction and arithmetic
- The Minkowski product (signature, bilinearity, symmetry)
- Causal classification of vectors and point pairs
- The achronal relation and its tolerance
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from achronal.errors import InvalidArgumentError
from achronal.minkowski import (
    CausalClass,
    FourVector,
    Separation,
    as_array,
    causal_signs,
    classification_tolerance,
    classify,
    is_perp,
    is_timelike_separated,
    minkowski_product,
    separation,
    spatial,
)
from tests.utils.factories import VectorFactory

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
four_vectors = st.lists(finite, min_size=4, max_size=4).map(np.array)


@pytest.mark.unit
@pytest.mark.minkowski
class TestFourVector:
    """Test the FourVector value type."""

    def test_from_array_roundtrip(self):
        """Test that from_array and as_array agree."""
        z = FourVector.from_array([1.0, 2.0, 3.0, 4.0])

        assert z.to_list() == [1.0, 2.0, 3.0, 4.0]
        assert np.array_equal(z.as_array(), np.array([1.0, 2.0, 3.0, 4.0]))

    def test_from_array_rejects_wrong_length(self):
        """Test that a 3-component array is rejected."""
        with pytest.raises(InvalidArgumentError):
            FourVector.from_array([1.0, 2.0, 3.0])

    def test_from_parts(self):
        """Test building (t, x) from parts."""
        z = FourVector.from_parts(2.0, [1.0, 0.0, -1.0])

        assert z == FourVector(2.0, 1.0, 0.0, -1.0)
        assert np.array_equal(z.spatial(), [1.0, 0.0, -1.0])

    def test_arithmetic(self):
        """Test addition, subtraction, negation and scaling."""
        a = FourVector(1.0, 2.0, 3.0, 4.0)
        b = FourVector(0.5, 0.5, 0.5, 0.5)

        assert a + b == FourVector(1.5, 2.5, 3.5, 4.5)
        assert a - b == FourVector(0.5, 1.5, 2.5, 3.5)
        assert -a == FourVector(-1.0, -2.0, -3.0, -4.0)
        assert 2.0 * a == a * 2.0 == FourVector(2.0, 4.0, 6.0, 8.0)

    def test_square_uses_mostly_minus_signature(self):
        """Test that (1, 0, 0, 0) squares to 1 and (0, 1, 0, 0) to -1."""
        assert FourVector(1.0, 0.0, 0.0, 0.0).square() == 1.0
        assert FourVector(0.0, 1.0, 0.0, 0.0).square() == -1.0


@pytest.mark.unit
@pytest.mark.minkowski
class TestMinkowskiProduct:
    """Test the bilinear form."""

    def test_accepts_fourvectors_and_arrays(self):
        """Test mixed FourVector/array arguments."""
        a = FourVector(2.0, 1.0, 0.0, 0.0)

        assert minkowski_product(a, [1.0, 1.0, 0.0, 0.0]) == pytest.approx(1.0)

    def test_broadcasts(self, rng):
        """Test that batches broadcast against a single vector."""
        batch = rng.normal(size=(10, 4))
        single = np.array([1.0, 0.0, 0.0, 0.0])

        assert np.allclose(minkowski_product(batch, single), batch[:, 0])

    def test_as_array_rejects_scalars(self):
        """Test that a scalar is not a four-vector."""
        with pytest.raises(InvalidArgumentError):
            as_array(3.0)

    def test_spatial_projection(self):
        """Test the spatial projection of a batch."""
        z = np.array([[1.0, 2.0, 3.0, 4.0], [5.0, 6.0, 7.0, 8.0]])

        assert np.array_equal(spatial(z), z[:, 1:])

    @settings(derandomize=True, max_examples=200)
    @given(four_vectors, four_vectors, four_vectors, finite)
    def test_bilinear_and_symmetric(self, a, b, c, alpha):
        """Test bilinearity in the first slot and symmetry."""
        lhs = minkowski_product(alpha * a + b, c)
        rhs = alpha * minkowski_product(a, c) + minkowski_product(b, c)
        scale = 1.0 + abs(alpha) * np.abs(a).sum() * np.abs(c).sum() + np.abs(b).sum() * np.abs(c).sum()

        assert abs(lhs - rhs) <= 1e-9 * scale
        assert minkowski_product(a, b) == pytest.approx(minkowski_product(b, a))


@pytest.mark.unit
@pytest.mark.minkowski
class TestClassification:
    """Test causal classification."""

    def test_classify_examples(self):
        """Test one vector of each causal class."""
        assert classify([1.0, 0.0, 0.0, 0.0]) == CausalClass.TIMELIKE
        assert classify([0.0, 1.0, 0.0, 0.0]) == CausalClass.SPACELIKE
        assert classify([1.0, 1.0, 0.0, 0.0]) == CausalClass.LIGHTLIKE
        assert classify([0.0, 0.0, 0.0, 0.0]) == CausalClass.ZERO

    def test_classify_rejects_batches(self):
        """Test that classify needs a single vector."""
        with pytest.raises(InvalidArgumentError):
            classify(np.zeros((2, 4)))

    def test_tolerance_scales_with_norm(self):
        """Test the hybrid absolute-relative tolerance."""
        assert classification_tolerance([0.1, 0.0, 0.0, 0.0]) == pytest.approx(1e-12)
        assert classification_tolerance([100.0, 0.0, 0.0, 0.0]) == pytest.approx(1e-8)

    def test_near_cone_counts_as_lightlike(self):
        """Test that a perturbation below tolerance stays on the cone."""
        z = np.array([1.0 + 1e-14, 1.0, 0.0, 0.0])

        assert classify(z) == CausalClass.LIGHTLIKE

    def test_causal_signs_on_factory_batches(self, rng):
        """Test vectorized signs on batches of known type."""
        assert np.all(causal_signs(VectorFactory.timelike(rng)) == 1)
        assert np.all(causal_signs(VectorFactory.spacelike(rng)) == -1)
        assert np.all(causal_signs(VectorFactory.lightlike(rng)) == 0)

    def test_separation_of_points(self):
        """Test the relation between two points."""
        origin = FourVector(0.0, 0.0, 0.0, 0.0)

        assert separation(origin, origin) == Separation.EQUAL
        assert separation([2.0, 0.0, 0.0, 0.0], origin) == Separation.TIMELIKE
        assert separation([1.0, 0.0, 1.0, 0.0], origin) == Separation.LIGHTLIKE
        assert separation([0.0, 0.0, 0.0, 5.0], origin) == Separation.SPACELIKE

    def test_separation_symmetric(self, rng):
        """Test that separation does not depend on argument order."""
        for z in VectorFactory.timelike(rng, 20):
            assert separation(z, np.zeros(4)) == separation(np.zeros(4), z)


@pytest.mark.unit
@pytest.mark.minkowski
class TestAchronalRelation:
    """Test the ⊥ relation."""

    def test_perp_excludes_equal_points(self):
        """Test that a point is not achronal to itself."""
        assert is_perp([1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 4.0]) is False

    def test_perp_includes_lightlike(self):
        """Test that lightlike separated points are achronal."""
        assert is_perp([1.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]) is True

    def test_perp_excludes_timelike(self):
        """Test that timelike separated points are not achronal."""
        assert is_perp([2.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]) is False
        assert is_timelike_separated([2.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]) is True

    def test_perp_broadcasts(self, rng):
        """Test batched evaluation against the origin."""
        points = np.concatenate([VectorFactory.spacelike(rng, 5), VectorFactory.timelike(rng, 5)])

        result = is_perp(points, np.zeros(4))

        assert result.tolist() == [True] * 5 + [False] * 5


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
