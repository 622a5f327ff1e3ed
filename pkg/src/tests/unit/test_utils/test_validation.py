"""
Unit tests for the shared argument validators.

Tests cover:
- Positive reals and counts
- Vector shapes, velocities and unit vectors
- Half-integer spins
"""

from fractions import Fraction

import numpy as np
import pytest

from achronal.errors import InvalidArgumentError
from achronal.utils.validation import (
    as_twice_spin,
    require_count,
    require_half_integer,
    require_positive,
    require_unit_vector,
    require_velocity,
    require_vectors,
)


@pytest.mark.unit
@pytest.mark.utils
class TestScalars:
    """Test scalar validators."""

    def test_positive(self):
        """Test accepted and rejected positive reals."""
        assert require_positive("r", 2) == 2.0

        for bad in (0.0, -1.0, np.inf, np.nan):
            with pytest.raises(InvalidArgumentError):
                require_positive("r", bad)

    def test_count(self):
        """Test integer counts with a minimum."""
        assert require_count("n", 3) == 3
        assert require_count("n", 0, minimum=0) == 0
        assert require_count("n", 4.0) == 4

        for bad in (0, 2.5, True):
            with pytest.raises(InvalidArgumentError):
                require_count("n", bad)

    def test_error_names_argument(self):
        """Test that the error carries the argument name."""
        with pytest.raises(InvalidArgumentError) as exc_info:
            require_positive("radius", -1.0)

        assert exc_info.value.argument == "radius"
        assert "radius" in exc_info.value.message


@pytest.mark.unit
@pytest.mark.utils
class TestVectors:
    """Test vector validators."""

    def test_shapes(self):
        """Test trailing dimension checks on single vectors and batches."""
        assert require_vectors("x", [1, 2, 3], 3).dtype == float
        assert require_vectors("x", np.zeros((5, 4)), 4).shape == (5, 4)

        with pytest.raises(InvalidArgumentError):
            require_vectors("x", 1.0, 3)
        with pytest.raises(InvalidArgumentError):
            require_vectors("x", [1.0, 2.0], 3)
        with pytest.raises(InvalidArgumentError):
            require_vectors("x", [1.0, np.nan, 0.0], 3)

    def test_velocity(self):
        """Test |v| < 1 on a batch."""
        require_velocity("v", [[0.5, 0.0, 0.0], [0.0, 0.0, 0.999]])

        with pytest.raises(InvalidArgumentError):
            require_velocity("v", [[0.5, 0.0, 0.0], [0.6, 0.8, 0.0]])

    def test_unit_vector(self):
        """Test norm one within the tolerance."""
        require_unit_vector("w", [0.6, 0.8, 0.0])

        with pytest.raises(InvalidArgumentError):
            require_unit_vector("w", [0.6, 0.8, 1e-3])
        require_unit_vector("w", [0.6, 0.8, 1e-3], tol=1e-5)


@pytest.mark.unit
@pytest.mark.utils
class TestSpins:
    """Test half-integer spins."""

    @pytest.mark.parametrize("value,twice", [(0, 0), (0.5, 1), (Fraction(3, 2), 3), (2, 4), (2.0, 4)])
    def test_twice_spin(self, value, twice):
        """Test conversion to 2j."""
        assert as_twice_spin("j", value) == twice

    @pytest.mark.parametrize("value", [0.25, -0.5, Fraction(1, 3)])
    def test_rejects(self, value):
        """Test non-half-integers and negatives."""
        with pytest.raises(InvalidArgumentError):
            as_twice_spin("j", value)

    def test_half_integer_bound(self):
        """Test the optional upper bound."""
        assert require_half_integer("j", 1.5, maximum=2) == Fraction(3, 2)

        with pytest.raises(InvalidArgumentError):
            require_half_integer("j", 2.5, maximum=2)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
