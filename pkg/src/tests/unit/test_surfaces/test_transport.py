"""
Unit tests for Poincaré transport of regions.

Tests cover:
- Transported events lie on the transported surface and base
- Pure translations and rotations of flat regions
- Rejection of curved surfaces
- The two clamp pieces
"""

import numpy as np
import pytest

from achronal.errors import InvalidArgumentError
from achronal.poincare import PoincareElement, SpinorMatrix, act_on_point
from achronal.surfaces import (
    Ball,
    Box,
    ClampSurface,
    FlatSurface,
    Halfspace,
    LightCone,
    Region,
    TiltedPlane,
    clamp_pieces,
    sample_base_points,
    transform_region,
)
from tests.utils.assertions import assert_close
from tests.utils.factories import GroupFactory


@pytest.mark.unit
@pytest.mark.surfaces
class TestTransformRegion:
    """Test g.Delta for hyperplane regions."""

    @pytest.mark.parametrize("surface", [FlatSurface(t0=0.5), TiltedPlane(w=(0.2, -0.3, 0.1), offset=-0.4)])
    def test_events_map_onto_image(self, rng, surface):
        """Test that g maps every event of Delta into g.Delta."""
        region = Region(surface=surface, base=Box(lower=(-1.0, -1.0, -1.0), upper=(1.0, 1.0, 1.0)))
        g = GroupFactory.element(rng, max_rapidity=0.8)

        image = transform_region(g, region)
        moved = act_on_point(g, region.events(sample_base_points(region.base, 200, rng)))

        assert_close(moved[:, 0], image.surface.tau(moved[:, 1:]), 1e-9)
        assert image.base.contains(moved[:, 1:]).all()

    def test_translation_shifts_base_and_time(self):
        """Test a pure translation of a flat ball region."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))
        g = PoincareElement.translation_by([2.0, 1.0, 0.0, 0.0])

        image = transform_region(g, region)

        assert isinstance(image.surface, FlatSurface)
        assert image.surface.t0 == pytest.approx(2.0)
        assert isinstance(image.base, Ball)
        assert_close(image.base.center, [1.0, 0.0, 0.0], 1e-12)

    def test_rotation_keeps_flat_slice(self):
        """Test that a rotation keeps the slice and rotates the base."""
        region = Region(surface=FlatSurface(t0=1.0), base=Ball(center=(1.0, 0.0, 0.0), radius=0.5))
        g = PoincareElement.lorentz(SpinorMatrix.rotation([0.0, 0.0, 1.0], np.pi / 2))

        image = transform_region(g, region)

        assert isinstance(image.surface, FlatSurface)
        assert_close(image.base.center, [0.0, 1.0, 0.0], 1e-12)

    def test_boost_tilts_flat_slice(self):
        """Test that a boost turns a flat slice into a tilted plane."""
        region = Region(surface=FlatSurface(), base=Halfspace(normal=(1.0, 0.0, 0.0)))
        g = PoincareElement.lorentz(SpinorMatrix.boost([1.0, 0.0, 0.0], 0.5))

        image = transform_region(g, region)

        assert isinstance(image.surface, TiltedPlane)
        assert_close(image.surface.w, [np.tanh(0.5), 0.0, 0.0], 1e-12)

    def test_rejects_curved_surface(self):
        """Test that only hyperplanes are transported."""
        region = Region(surface=LightCone(), base=Ball(radius=1.0))

        with pytest.raises(InvalidArgumentError):
            transform_region(PoincareElement.identity(), region)


@pytest.mark.unit
@pytest.mark.surfaces
class TestClampPieces:
    """Test the two flat pieces of the clamp surface."""

    def test_pieces_lie_on_clamp(self, rng):
        """Test that both pieces are subsets of the clamp graph."""
        clamp = ClampSurface(lower=0.0, upper=1.0)

        for piece in clamp_pieces(clamp):
            x = sample_base_points(piece.base, 100, rng)
            assert_close(piece.surface.tau(x), clamp.tau(x), 0.0)

    def test_middle_band_is_uncovered(self):
        """Test that points with lower < x3 <= upper belong to neither piece."""
        lower, upper = clamp_pieces()
        x = np.array([[0.0, 0.0, 0.5], [3.0, -2.0, 1.0]])

        assert not lower.contains_point(x).any()
        assert not upper.contains_point(x).any()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
