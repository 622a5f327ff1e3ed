"""
Causal logic on finite universes of events.
"""

from achronal.lattice.checks import (
    achronal_subsets,
    asdc_comparison,
    closed_sets,
    closure_check,
    dacey_check,
    de_morgan_check,
    maximal_achronal_subsets,
    orthomodularity_check,
)
from achronal.lattice.correspondence import (
    ChainLocalization,
    al_to_rcl_correspondence,
    chain_localization,
    maximal_chains,
    orthoadditivity_check,
)
from achronal.lattice.universe import (
    EventCloud,
    EventSet,
    complete_line_counts,
    determinacy_set,
    grid_lines,
    grid_universe,
    is_achronal,
    is_perp_complete,
    join,
    parse_universe,
    perp_complement,
    perp_completion,
    random_universe,
    timelike_directions,
)

__all__ = [
    "achronal_subsets",
    "asdc_comparison",
    "closed_sets",
    "closure_check",
    "dacey_check",
    "de_morgan_check",
    "maximal_achronal_subsets",
    "orthomodularity_check",
    "ChainLocalization",
    "al_to_rcl_correspondence",
    "chain_localization",
    "maximal_chains",
    "orthoadditivity_check",
    "EventCloud",
    "EventSet",
    "complete_line_counts",
    "determinacy_set",
    "grid_lines",
    "grid_universe",
    "is_achronal",
    "is_perp_complete",
    "join",
    "parse_universe",
    "perp_complement",
    "perp_completion",
    "random_universe",
    "timelike_directions",
]
