"""
From achronal localizations to localizations on the lattice of ⊥-complete sets.

A discrete achronal localization T assigns a projection to every achronal
subset. F(M) := T(Δ) for any maximal achronal Δ ⊂ M is well defined exactly
when all maximal achronal subsets of M agree; that is what
al_to_rcl_correspondence verifies.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

import networkx as nx
import numpy as np

from achronal import constants
from achronal.config import get_config
from achronal.errors import InconsistencyError, InvalidArgumentError
from achronal.lattice.checks import MAX_WITNESSES, closed_sets, maximal_achronal_subsets
from achronal.lattice.universe import EventCloud, EventSet, join, perp_complement
from achronal.logger import get_logger

logger = get_logger("lattice.correspondence")

OperatorMap = Callable[[EventSet], np.ndarray]


@dataclass(frozen=True)
class ChainLocalization:
    """
    Localization on a finite universe built from its maximal timelike chains:
    T(Δ) is the diagonal projection onto the chains that meet Δ.

    An achronal set meets a chain at most once, so T is additive on
    disjoint achronal unions.
    """

    universe: EventCloud
    chains: List[EventSet]

    @property
    def dimension(self) -> int:
        return len(self.chains)

    def operator(self, subset) -> np.ndarray:
        subset = frozenset(subset)
        return np.diag([1.0 if chain & subset else 0.0 for chain in self.chains])

    __call__ = operator


def maximal_chains(universe: EventCloud) -> List[EventSet]:
    """Maximal sets of pairwise timelike separated points."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(universe)))
    timelike = universe.timelike_matrix
    graph.add_edges_from((i, j) for i, j in combinations(range(len(universe)), 2) if timelike[i, j])
    return sorted((frozenset(c) for c in nx.find_cliques(graph)), key=sorted)


def chain_localization(universe: EventCloud) -> ChainLocalization:
    """
    Raises:
        InvalidArgumentError: If there are more maximal chains than OPERATOR_DIM_LIMIT
    """
    chains = maximal_chains(universe)
    if len(chains) > constants.OPERATOR_DIM_LIMIT:
        raise InvalidArgumentError(
            "universe", f"{len(chains)} maximal chains exceed the operator dimension limit {constants.OPERATOR_DIM_LIMIT}"
        )
    return ChainLocalization(universe=universe, chains=chains)


def al_to_rcl_correspondence(
    localization: OperatorMap,
    universe: EventCloud,
    family: Optional[Sequence[EventSet]] = None,
    tol: Optional[float] = None
) -> Dict[EventSet, np.ndarray]:
    """
    Build F(M) = T(Δ) over the ⊥-complete sets M, Δ maximal achronal in M.

    Args:
        localization: Operator-valued map on achronal subsets
        universe: Finite universe
        family: ⊥-complete sets to cover (the whole lattice by default)
        tol: Max-norm tolerance for operator equality

    Returns:
        Mapping from ⊥-complete set to operator

    Raises:
        InconsistencyError: If two maximal achronal subsets of some M give
            different operators, or F(U) is not the identity
    """
    tol = get_config().matrix_tol if tol is None else tol
    family = closed_sets(universe) if family is None else [frozenset(m) for m in family]

    result: Dict[EventSet, np.ndarray] = {}
    for m in family:
        subsets = maximal_achronal_subsets(universe, m)
        first = np.asarray(localization(subsets[0]), dtype=float)
        for other in subsets[1:]:
            value = np.asarray(localization(other), dtype=float)
            if np.max(np.abs(value - first)) > tol:
                logger.error(f"Localization is not constant on the maximal achronal subsets of {sorted(m)}")
                raise InconsistencyError(
                    "F(M)",
                    witnesses=[sorted(m), sorted(subsets[0]), sorted(other)],
                    message=f"maximal achronal subsets of {sorted(m)} give different operators",
                )
        result[m] = first

    everything = universe.everything
    if everything in result:
        full = result[everything]
        if np.max(np.abs(full - np.eye(full.shape[0]))) > tol:
            raise InconsistencyError("normalization", witnesses=[sorted(everything)],
                                     message="F(U) is not the identity")
    return result


def orthoadditivity_check(
    lattice_map: Mapping[EventSet, np.ndarray],
    universe: EventCloud,
    tol: Optional[float] = None
) -> Dict[str, Any]:
    """
    F(M ∨ N) = F(M) + F(N) whenever M ⊥ N, and every F(M) is a projection.
    """
    tol = get_config().matrix_tol if tol is None else tol
    witnesses = []
    for m, value in lattice_map.items():
        if np.max(np.abs(value @ value - value)) > tol or np.max(np.abs(value - value.conj().T)) > tol:
            witnesses.append({"law": "projection", "sets": [sorted(m)]})

    pairs = 0
    for m, n in combinations(lattice_map, 2):
        if not n <= perp_complement(universe, m):
            continue
        joined = join(universe, m, n)
        if joined not in lattice_map:
            continue
        pairs += 1
        if np.max(np.abs(lattice_map[joined] - lattice_map[m] - lattice_map[n])) > tol:
            witnesses.append({"law": "additive", "sets": [sorted(m), sorted(n)]})
    return {
        "check": "orthoadditivity",
        "universe": universe.tag,
        "passes": not witnesses,
        "witnesses": witnesses[:MAX_WITNESSES],
        "witness_count": len(witnesses),
        "pairs": pairs,
    }


__all__ = [
    "ChainLocalization",
    "maximal_chains",
    "chain_localization",
    "al_to_rcl_correspondence",
    "orthoadditivity_check",
]
