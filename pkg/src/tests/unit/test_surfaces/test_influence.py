"""
Unit tests for the region of influence.

Tests cover:
- The disc reached by a ball after unit time
- Halfspace and box bases against a brute-force minimum
- Grid fallback over-approximation for curved surfaces
- Grid windows for distant targets and unbounded bases
"""

import numpy as np
import pytest

from achronal.poincare import random_unit_vectors
from achronal.surfaces import (
    Ball,
    Box,
    Complement,
    EmptySet,
    Everything,
    FlatSurface,
    Halfspace,
    KinkSurface,
    LightCone,
    Region,
    SqrtShell,
    TiltedPlane,
    UnionSet,
    influence_gap,
    region_of_influence,
)
from achronal.surfaces.influence import cone_norm


def _brute_force_gap(region: Region, target, y: np.ndarray, rng: np.random.Generator, n: int = 200000) -> np.ndarray:
    """Sampled upper bound for the influence gap over a bounded base."""
    lower, upper = region.base.bounding_box()
    x = rng.uniform(lower, upper, (n, 3))
    x = x[region.base.contains(x)]
    tau = region.surface.tau(x)
    sigma = target.tau(y)
    return np.array([
        np.min(np.linalg.norm(x - point, axis=-1) - np.abs(s - tau)) for point, s in zip(y, sigma)
    ])


@pytest.mark.unit
@pytest.mark.surfaces
class TestInfluenceDisc:
    """Test the ball on a flat slice reaching a later slice."""

    def test_disc_of_radius_two(self, rng):
        """Test that radius 1 at time 0 reaches radius 2 at time 1."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))
        directions = random_unit_vectors(rng, 128)

        inside = region_of_influence(region, FlatSurface(t0=1.0), 1.95 * directions)
        outside = region_of_influence(region, FlatSurface(t0=1.0), 2.05 * directions)

        assert inside.all()
        assert not outside.any()

    def test_boundary_point_is_included(self):
        """Test the closed boundary |y| = 2."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))

        assert region_of_influence(region, FlatSurface(t0=1.0), [2.0, 0.0, 0.0]) is True

    def test_past_slice_is_symmetric(self):
        """Test that the influence region also extends to the past."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))

        assert region_of_influence(region, FlatSurface(t0=-1.0), [0.0, 1.9, 0.0])
        assert not region_of_influence(region, FlatSurface(t0=-1.0), [0.0, 2.1, 0.0])

    def test_same_slice_is_the_region(self):
        """Test that on its own slice the region influences exactly its base."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))

        assert region_of_influence(region, FlatSurface(), [0.99, 0.0, 0.0])
        assert not region_of_influence(region, FlatSurface(), [1.01, 0.0, 0.0])

    def test_shape_of_result(self, rng):
        """Test that batches keep their leading shape."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))

        result = region_of_influence(region, FlatSurface(t0=1.0), rng.normal(size=(4, 5, 3)))

        assert result.shape == (4, 5)


@pytest.mark.unit
@pytest.mark.surfaces
class TestLinearGap:
    """Test the closed-form minima on linear surfaces."""

    def test_cone_norm_non_negative(self, rng):
        """Test N_u(d) >= 0 for |u| <= 1."""
        d = rng.normal(size=(100, 3))
        u = np.array([0.6, 0.0, 0.8])

        assert np.all(cone_norm(d, u) >= -1e-12)

    def test_halfspace_matches_brute_force(self, rng):
        """Test the halfspace minimum on a tilted source."""
        base = Halfspace(normal=(1.0, 0.0, 0.0), offset=0.0)
        region = Region(surface=TiltedPlane(w=(0.0, 0.4, 0.0)), base=base)
        y = np.array([[3.0, 0.0, 0.0], [1.0, 0.5, 0.0], [5.0, -1.0, 2.0]])
        target = FlatSurface(t0=2.0)

        gap = influence_gap(region, target, y)
        # A bounded piece of the halfspace can only have a larger minimum
        bounded = Region(
            surface=region.surface,
            base=Box(lower=(-6.0, -10.0, -8.0), upper=(0.0, 10.0, 12.0)),
        )

        assert np.all(gap <= _brute_force_gap(bounded, target, y, rng) + 1e-9)

    def test_box_matches_brute_force(self, rng):
        """Test the box minimum on a flat source."""
        region = Region(surface=FlatSurface(), base=Box(lower=(0.0, 0.0, 0.0), upper=(1.0, 2.0, 1.0)))
        y = np.array([[3.0, 1.0, 0.5], [-1.0, -1.0, -1.0], [0.5, 4.0, 3.0]])
        target = TiltedPlane(w=(0.1, 0.2, 0.0), offset=1.0)

        gap = influence_gap(region, target, y)
        brute = _brute_force_gap(region, target, y, rng)

        assert np.all(gap <= brute + 1e-9)
        assert np.all(gap >= brute - 0.1)

    def test_union_takes_minimum(self):
        """Test that a union's gap is the smaller member gap."""
        a = Ball(center=(-5.0, 0.0, 0.0), radius=1.0)
        b = Ball(center=(5.0, 0.0, 0.0), radius=1.0)
        y = np.array([[5.0, 1.5, 0.0]])
        target = FlatSurface(t0=1.0)

        union = influence_gap(Region(surface=FlatSurface(), base=UnionSet(members=[a, b])), target, y)
        right = influence_gap(Region(surface=FlatSurface(), base=b), target, y)

        assert union[0] == pytest.approx(right[0])

    def test_trivial_bases(self):
        """Test everything and empty bases."""
        y = np.array([[100.0, 0.0, 0.0]])

        assert region_of_influence(Region(surface=FlatSurface(), base=Everything()), FlatSurface(t0=1.0), y).all()
        assert not region_of_influence(Region(surface=FlatSurface(), base=EmptySet()), FlatSurface(t0=1.0), y).any()


@pytest.mark.unit
@pytest.mark.surfaces
class TestGridFallback:
    """Test the over-approximating grid search."""

    def test_curved_source_over_approximates(self, rng):
        """Test that every truly influenced point is reported."""
        region = Region(surface=SqrtShell(a=1.0), base=Ball(radius=1.0))
        target = FlatSurface(t0=3.0)
        y = rng.uniform(-4.0, 4.0, (40, 3))

        gap = influence_gap(region, target, y)
        brute = _brute_force_gap(region, target, y, rng, n=50000)

        assert np.all(gap <= brute + 1e-9)

    def test_curved_target(self):
        """Test a flat source seen from the light cone."""
        region = Region(surface=FlatSurface(), base=Ball(radius=1.0))

        assert region_of_influence(region, LightCone(), [0.5, 0.0, 0.0])

    def test_curved_source_distant_target(self):
        """Test a kink region seen from a slice two hundred units later."""
        region = Region(surface=KinkSurface(slope=0.5), base=Ball(radius=1.0))
        target = FlatSurface(t0=200.0)

        assert region_of_influence(region, target, [120.0, 0.0, 0.0])
        assert region_of_influence(region, target, [0.0, -150.0, 60.0])
        assert not region_of_influence(region, target, [250.0, 0.0, 0.0])

    def test_distant_target_over_approximates(self, rng):
        """Test points beyond fifty units against sampled base points."""
        region = Region(surface=SqrtShell(a=1.0), base=Ball(radius=1.0))
        target = FlatSurface(t0=100.0)
        y = 60.0 * random_unit_vectors(rng, 20) * rng.uniform(1.0, 1.6, (20, 1))

        gap = influence_gap(region, target, y)
        brute = _brute_force_gap(region, target, y, rng, n=50000)

        assert np.all(gap <= brute + 1e-9)
        assert region_of_influence(region, target, y).all()

    def test_complement_base_far_from_target(self):
        """Test a flat source whose nearest base point is ninety units away."""
        region = Region(surface=FlatSurface(), base=Complement(of=Ball(radius=90.0)))

        assert region_of_influence(region, FlatSurface(t0=100.0), [0.0, 0.0, 0.0])
        assert not region_of_influence(region, FlatSurface(t0=50.0), [0.0, 0.0, 0.0])

    def test_unbounded_base_under_light_cone(self):
        """Test the nearest-node window for a slope-one source."""
        region = Region(surface=LightCone(), base=Complement(of=Ball(radius=90.0)))

        assert region_of_influence(region, FlatSurface(), [0.0, 0.0, 0.0])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
