"""
Minkowski space kernel: four-vectors, the Minkowski product and causal predicates.
"""

from achronal.minkowski.vectors import (
    CausalClass,
    FourVector,
    FourVectorLike,
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

__all__ = [
    "CausalClass",
    "FourVector",
    "FourVectorLike",
    "Separation",
    "as_array",
    "causal_signs",
    "classification_tolerance",
    "classify",
    "is_perp",
    "is_timelike_separated",
    "minkowski_product",
    "separation",
    "spatial",
]
