"""
Poincaré group machinery: SL(2,C), the covering map, group actions,
canonical boosts, Wigner rotations and D-matrices.
"""

from achronal.poincare.group import (
    LinePoint,
    PoincareElement,
    act_on_line,
    act_on_momentum_velocity,
    act_on_point,
    line_action_rn_derivative,
    star_action,
)
from achronal.poincare.spinors import (
    PAULI,
    SpinorLike,
    SpinorMatrix,
    as_matrix,
    boost_matrices,
    covering_map,
    dagger,
    hermitian_of,
    inverse_matrices,
    lorentz_apply,
    random_sl2c,
    random_su2,
    random_unit_vectors,
    rotation_matrices,
    vector_of,
)
from achronal.poincare.wigner import (
    WignerDMatrix,
    canonical_boost,
    canonical_boost_matrices,
    su2_character,
    wigner_d,
    wigner_d_matrices,
    wigner_rotation,
    wigner_rotation_matrices,
)

__all__ = [
    "LinePoint",
    "PoincareElement",
    "act_on_line",
    "act_on_momentum_velocity",
    "act_on_point",
    "line_action_rn_derivative",
    "star_action",
    "PAULI",
    "SpinorLike",
    "SpinorMatrix",
    "as_matrix",
    "boost_matrices",
    "covering_map",
    "dagger",
    "hermitian_of",
    "inverse_matrices",
    "lorentz_apply",
    "random_sl2c",
    "random_su2",
    "random_unit_vectors",
    "rotation_matrices",
    "vector_of",
    "WignerDMatrix",
    "canonical_boost",
    "canonical_boost_matrices",
    "su2_character",
    "wigner_d",
    "wigner_d_matrices",
    "wigner_rotation",
    "wigner_rotation_matrices",
]
