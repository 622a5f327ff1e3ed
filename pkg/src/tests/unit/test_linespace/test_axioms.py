"""
Unit tests for the sampled localization axiom checks.

Tests cover:
- Additivity over partitions, overlap and coverage failures
- Causality towards a later slice and the causal-base precondition
- Pathwise and weighted covariance
- Monotonicity and null regions
"""

import numpy as np
import pytest

from achronal.errors import InvalidArgumentError, PreconditionError
from achronal.linespace import (
    StateDensity,
    additivity_check,
    causality_check,
    covariance_check,
    monotonicity_check,
    null_region_check,
)
from achronal.poincare import PoincareElement, SpinorMatrix
from achronal.surfaces import (
    Ball,
    Box,
    Complement,
    Everything,
    FlatSurface,
    Halfspace,
    KinkSurface,
    Region,
    SqrtShell,
    TiltedPlane,
)
from tests.utils.assertions import assert_check_passed

N = 2000


@pytest.fixture
def slow_state():
    """State with velocities below 0.9."""
    return StateDensity(sigma=1.0, r_max=0.9)


@pytest.mark.unit
@pytest.mark.linespace
class TestAdditivity:
    """Test sum over a partition equals one."""

    def test_halfspace_and_complement(self, narrow_state):
        """Test a two-piece partition of the hyperboloid."""
        surface = SqrtShell(a=1.0)
        half = Halfspace(normal=(1.0, 0.0, 0.0))
        partition = [Region(surface=surface, base=half), Region(surface=surface, base=Complement(of=half))]

        report = additivity_check(narrow_state, partition, n_samples=N)

        assert_check_passed(report)
        assert report["sum"] == pytest.approx(1.0, abs=1e-12)
        assert len(report["estimates"]) == 2

    def test_uncovered_lines_fail(self, narrow_state, unit_ball_region):
        """Test that a single ball does not cover the slice."""
        report = additivity_check(narrow_state, [unit_ball_region], n_samples=N)

        assert report["passed"] is False
        assert report["uncovered"] > 0

    def test_overlapping_bases(self, narrow_state):
        """Test that overlapping pieces are refused."""
        region = Region(surface=FlatSurface(), base=Everything())

        with pytest.raises(InvalidArgumentError):
            additivity_check(narrow_state, [region, region], n_samples=N)

    def test_mixed_surfaces(self, narrow_state):
        """Test that pieces must share one surface."""
        partition = [
            Region(surface=FlatSurface(), base=Everything()),
            Region(surface=FlatSurface(t0=1.0), base=Everything()),
        ]

        with pytest.raises(InvalidArgumentError):
            additivity_check(narrow_state, partition, n_samples=N)

    def test_empty_partition(self, narrow_state):
        """Test that a partition needs a region."""
        with pytest.raises(InvalidArgumentError):
            additivity_check(narrow_state, [], n_samples=N)


@pytest.mark.unit
@pytest.mark.linespace
class TestCausality:
    """Test T(Delta) <= T(Delta_Sigma) pathwise."""

    def test_ball_to_later_slice(self, narrow_state, unit_ball_region):
        """Test that every line through the ball lands in its influence region."""
        report = causality_check(narrow_state, unit_ball_region, FlatSurface(t0=1.0), n_samples=N)

        assert_check_passed(report)
        assert report["violations"] == 0
        assert report["witness"] is None

    def test_box_to_tilted_plane(self, slow_state):
        """Test a box region against a tilted target."""
        region = Region(surface=FlatSurface(), base=Box(lower=(-1.0, -1.0, -1.0), upper=(1.0, 1.0, 1.0)))

        report = causality_check(slow_state, region, TiltedPlane(w=(0.5, 0.0, 0.0), offset=2.0), n_samples=N)

        assert_check_passed(report)

    def test_kink_source_to_distant_slice(self, narrow_state):
        """Test a curved source against a slice two hundred units later."""
        region = Region(surface=KinkSurface(slope=0.5), base=Ball(radius=2.0))

        report = causality_check(narrow_state, region, FlatSurface(t0=200.0), n_samples=2048, seed=3)

        assert_check_passed(report)
        assert report["violations"] == 0
        assert report["estimate"]["estimate"] > 0.0

    def test_precondition_on_target(self, narrow_state, unit_ball_region):
        """Test that a hyperboloid target fails the causal-base precondition."""
        with pytest.raises(PreconditionError):
            causality_check(narrow_state, unit_ball_region, SqrtShell(), n_samples=N, require_causal_base=True)


@pytest.mark.unit
@pytest.mark.linespace
class TestCovariance:
    """Test <psi, T(g.Delta) psi> = <U(g)^-1 psi, T(Delta) U(g)^-1 psi>."""

    def test_rotation(self, narrow_state):
        """Test a rotation of an off-centre ball."""
        region = Region(surface=FlatSurface(), base=Ball(center=(0.5, 0.0, 0.0), radius=1.0))
        g = PoincareElement.lorentz(SpinorMatrix.rotation([0.0, 0.0, 1.0], 0.7))

        report = covariance_check(narrow_state, region, g, n_samples=N)

        assert_check_passed(report)
        assert report["pathwise_mismatches"] == 0

    def test_boost_and_translation(self, narrow_state, unit_ball_region):
        """Test a small boost followed by a translation."""
        g = PoincareElement.translation_by([0.3, 0.2, 0.0, -0.1]) * PoincareElement.lorentz(
            SpinorMatrix.boost([0.0, 1.0, 0.0], 0.2)
        )

        report = covariance_check(narrow_state, unit_ball_region, g, n_samples=4000)

        assert_check_passed(report)
        assert report["transformed_region"]["surface"]["kind"] == "tilted"
        assert report["combined_std_error"] > 0.0

    def test_curved_region_is_refused(self, narrow_state):
        """Test that only hyperplane regions are transported."""
        region = Region(surface=SqrtShell(), base=Ball(radius=1.0))

        with pytest.raises(InvalidArgumentError):
            covariance_check(narrow_state, region, PoincareElement.identity(), n_samples=N)


@pytest.mark.unit
@pytest.mark.linespace
class TestMonotonicityAndNullSets:
    """Test inclusion monotonicity and null regions."""

    def test_nested_balls(self, narrow_state):
        """Test 1(meets small ball) <= 1(meets large ball)."""
        surface = TiltedPlane(w=(0.0, 0.3, 0.0))
        inner = Region(surface=surface, base=Ball(radius=0.5))
        outer = Region(surface=surface, base=Ball(radius=1.0))

        report = monotonicity_check(narrow_state, inner, outer, n_samples=N)

        assert_check_passed(report)
        assert report["inner"]["estimate"] <= report["outer"]["estimate"]

    def test_reversed_balls_give_witness(self, narrow_state):
        """Test that swapping the regions yields a violating line."""
        inner = Region(surface=FlatSurface(), base=Ball(radius=0.5))
        outer = Region(surface=FlatSurface(), base=Ball(radius=1.0))

        report = monotonicity_check(narrow_state, outer, inner, n_samples=N)

        assert report["passed"] is False
        witness = np.asarray(report["witness"]["x"])
        assert 0.5 < np.linalg.norm(witness) <= 1.0

    def test_zero_radius_ball(self, narrow_state):
        """Test that a point region is never met."""
        region = Region(surface=FlatSurface(), base=Ball(radius=0.0))

        report = null_region_check(narrow_state, region, n_samples=N)

        assert_check_passed(report)
        assert report["estimate"]["estimate"] == 0.0

    def test_null_check_needs_null_base(self, narrow_state, unit_ball_region):
        """Test that a region of positive volume is refused."""
        with pytest.raises(InvalidArgumentError):
            null_region_check(narrow_state, unit_ball_region, n_samples=N)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
