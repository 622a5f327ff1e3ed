"""
Mass-spectrum machinery on momentum-velocity space.
"""

from achronal.spectrum.fibration import (
    delta_factor,
    density_ratio_residual,
    equivariance_residual,
    fibre_action,
    iota_density,
    k_jacobian_determinant,
    k_m_inverse,
    k_m_map,
    rotation_factorization_residual,
    s_matrices,
    s_matrix,
    s_rotations,
)
from achronal.spectrum.models import MassShellPoint, SpinContext
from achronal.spectrum.multiplicity import (
    clebsch_gordan_spins,
    multiplicity,
    multiplicity_table,
    peter_weyl_dimension_check,
    spin_tally,
)
from achronal.spectrum.observables import (
    MomentumVelocityPoint,
    energy,
    in_pi,
    in_pi_by_gap,
    mass_squared,
    on_shell_momentum,
)
from achronal.spectrum.representations import (
    Field,
    GaussianField,
    apply_w_interval,
    apply_w_irreducible,
    apply_w_mom,
    apply_w_pos,
    fibre_sampler,
    iota,
    l2_norm_estimate,
    momentum_sampler,
    pair_sampler,
)

__all__ = [
    "delta_factor",
    "density_ratio_residual",
    "equivariance_residual",
    "fibre_action",
    "iota_density",
    "k_jacobian_determinant",
    "k_m_inverse",
    "k_m_map",
    "rotation_factorization_residual",
    "s_matrices",
    "s_matrix",
    "s_rotations",
    "MassShellPoint",
    "SpinContext",
    "clebsch_gordan_spins",
    "multiplicity",
    "multiplicity_table",
    "peter_weyl_dimension_check",
    "spin_tally",
    "MomentumVelocityPoint",
    "energy",
    "in_pi",
    "in_pi_by_gap",
    "mass_squared",
    "on_shell_momentum",
    "Field",
    "GaussianField",
    "apply_w_interval",
    "apply_w_irreducible",
    "apply_w_mom",
    "apply_w_pos",
    "fibre_sampler",
    "iota",
    "l2_norm_estimate",
    "momentum_sampler",
    "pair_sampler",
]
