"""
Maximal achronal surfaces, spatial sets, regions and their checkers.
"""

from achronal.surfaces.checkers import (
    CausalBaseVerdict,
    CauchyVerdict,
    SurfaceCheck,
    causal_base_check,
    cauchy_surface_check,
    finite_difference_gradient,
    is_spacelike_sampled,
    lightlike_segment_check,
    lipschitz_estimate,
    lipschitz_ratios,
    regions_spacelike_separated,
    sample_base_points,
    verified_witness,
)
from achronal.surfaces.influence import influence_gap, region_of_influence
from achronal.surfaces.models import (
    SPATIAL_SET_ADAPTER,
    SURFACE_ADAPTER,
    AffineImage,
    Ball,
    BaseSet,
    BaseSurface,
    Box,
    ClampSurface,
    Complement,
    EmptySet,
    Everything,
    FlatSurface,
    GridSurface,
    Halfspace,
    IntersectionSet,
    KinkSurface,
    LightCone,
    LightlikeLine,
    Region,
    SetKind,
    SpatialSet,
    SqrtShell,
    Surface,
    SurfaceKind,
    TiltedPlane,
    UnionSet,
    parse_spatial_set,
    parse_surface,
)
from achronal.surfaces.transport import clamp_pieces, transform_region

__all__ = [
    "CausalBaseVerdict",
    "CauchyVerdict",
    "SurfaceCheck",
    "causal_base_check",
    "cauchy_surface_check",
    "finite_difference_gradient",
    "is_spacelike_sampled",
    "lightlike_segment_check",
    "lipschitz_estimate",
    "lipschitz_ratios",
    "regions_spacelike_separated",
    "sample_base_points",
    "verified_witness",
    "influence_gap",
    "region_of_influence",
    "SPATIAL_SET_ADAPTER",
    "SURFACE_ADAPTER",
    "AffineImage",
    "Ball",
    "BaseSet",
    "BaseSurface",
    "Box",
    "ClampSurface",
    "Complement",
    "EmptySet",
    "Everything",
    "FlatSurface",
    "GridSurface",
    "Halfspace",
    "IntersectionSet",
    "KinkSurface",
    "LightCone",
    "LightlikeLine",
    "Region",
    "SetKind",
    "SpatialSet",
    "SqrtShell",
    "Surface",
    "SurfaceKind",
    "TiltedPlane",
    "UnionSet",
    "parse_spatial_set",
    "parse_surface",
    "clamp_pieces",
    "transform_region",
]
