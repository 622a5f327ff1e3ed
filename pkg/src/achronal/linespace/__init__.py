"""
Line space: timelike lines, the surface/line homeomorphism, state densities
and the Monte Carlo evaluation of the canonical localization.
"""

# solvers first: achronal.surfaces.checkers imports it while this package initialises
from achronal.linespace.solvers import (
    FixedPointResult,
    LightlikeSearch,
    confirm_lightlike_miss,
    iteration_budget,
    lightlike_intersection,
    solve_line_fixed_point,
)
from achronal.linespace.estimation import MCEstimate, batch_means, estimate_from_samples
from achronal.linespace.lines import (
    TimelikeLine,
    k_inverse,
    k_map,
    line_meets_region,
    line_surface_intersection,
)
from achronal.linespace.localization import (
    localization_probability,
    n_measure,
    n_measure_mc,
)
from achronal.linespace.states import StateDensity, VelocityLaw
from achronal.linespace.verification import (
    additivity_check,
    causality_check,
    covariance_check,
    monotonicity_check,
    null_region_check,
)

__all__ = [
    "FixedPointResult",
    "LightlikeSearch",
    "confirm_lightlike_miss",
    "iteration_budget",
    "lightlike_intersection",
    "solve_line_fixed_point",
    "MCEstimate",
    "batch_means",
    "estimate_from_samples",
    "TimelikeLine",
    "k_inverse",
    "k_map",
    "line_meets_region",
    "line_surface_intersection",
    "localization_probability",
    "n_measure",
    "n_measure_mc",
    "StateDensity",
    "VelocityLaw",
    "additivity_check",
    "causality_check",
    "covariance_check",
    "monotonicity_check",
    "null_region_check",
]
