"""
Exhaustive checks of the causal logic on finite universes.

Reports follow one layout: {"check", "universe", "passes", "witnesses", ...}
with witnesses given as sorted index lists.
"""

from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence

import networkx as nx
import numpy as np

from achronal import constants
from achronal.errors import InvalidArgumentError
from achronal.lattice.universe import (
    EventCloud,
    EventSet,
    complete_line_counts,
    determinacy_set,
    is_perp_complete,
    perp_complement,
    perp_completion,
)
from achronal.logger import get_logger

logger = get_logger("lattice.checks")

# Witness lists in reports are cut at this length
MAX_WITNESSES = 10


def _listed(*sets: Iterable[int]) -> List[List[int]]:
    return [sorted(s) for s in sets]


def _report(check: str, universe: EventCloud, witnesses: List[Any], **extra) -> Dict[str, Any]:
    return {
        "check": check,
        "universe": universe.tag,
        "passes": not witnesses,
        "witnesses": witnesses[:MAX_WITNESSES],
        "witness_count": len(witnesses),
        **extra,
    }


def closed_sets(universe: EventCloud) -> List[EventSet]:
    """
    Every ⊥-complete subset of the universe.

    The ⊥-complete sets are exactly the intersections of point complements
    {x}^⊥ (the empty intersection being U), so they are built by closing the
    point complements under intersection.

    Raises:
        InvalidArgumentError: If the universe exceeds CLOSED_SET_LIMIT points
    """
    n = len(universe)
    if n > constants.CLOSED_SET_LIMIT:
        raise InvalidArgumentError(
            "universe", f"closed-set enumeration supports at most {constants.CLOSED_SET_LIMIT} points, got {n}"
        )
    masks = [sum(1 << int(j) for j in np.flatnonzero(row)) for row in universe.perp_matrix]
    closed = {(1 << n) - 1}
    for mask in masks:
        closed |= {c & mask for c in closed}
    sets = [frozenset(i for i in range(n) if c >> i & 1) for c in closed]
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def closure_check(universe: EventCloud, family: Sequence[EventSet]) -> Dict[str, Any]:
    """Completion is extensive, idempotent and monotone on the family."""
    witnesses = []
    completed = {m: perp_completion(universe, m) for m in family}
    for m, hat in completed.items():
        if not m <= hat:
            witnesses.append({"law": "extensive", "sets": _listed(m)})
        if perp_completion(universe, hat) != hat:
            witnesses.append({"law": "idempotent", "sets": _listed(m)})
    for m, n in combinations(family, 2):
        for small, large in ((m, n), (n, m)):
            if small <= large and not completed[small] <= completed[large]:
                witnesses.append({"law": "monotone", "sets": _listed(small, large)})
    return _report("closure", universe, witnesses, sets=len(family))


def de_morgan_check(universe: EventCloud, family: Sequence[EventSet]) -> Dict[str, Any]:
    """(M ∪ N)^⊥ = M^⊥ ∩ N^⊥ for all pairs of the family."""
    perps = {m: perp_complement(universe, m) for m in family}
    witnesses = [
        {"sets": _listed(m, n)}
        for m, n in combinations(family, 2)
        if perp_complement(universe, m | n) != perps[m] & perps[n]
    ]
    return _report("de-morgan", universe, witnesses, sets=len(family))


def _require_closed(universe: EventCloud, family: Sequence[EventSet]) -> None:
    for member in family:
        if not is_perp_complete(universe, member):
            raise InvalidArgumentError("family", f"{sorted(member)} is not ⊥-complete")


def orthomodularity_check(universe: EventCloud, family: Optional[Sequence[EventSet]] = None) -> Dict[str, Any]:
    """
    N = (M ∪ (M^⊥ ∩ N))^∧ for all M ⊂ N in a family of ⊥-complete sets.

    The family defaults to the full lattice of the universe.

    Raises:
        InvalidArgumentError: If a family member is not ⊥-complete
    """
    if family is None:
        family = closed_sets(universe)
    else:
        family = [frozenset(m) for m in family]
        _require_closed(universe, family)

    witnesses = []
    pairs = 0
    for m in family:
        m_perp = perp_complement(universe, m)
        for n in family:
            if not m <= n:
                continue
            pairs += 1
            if perp_completion(universe, m | (m_perp & n)) != n:
                witnesses.append({"sets": _listed(m, n)})
    if witnesses:
        logger.info(f"Universe {universe.tag} is not orthomodular ({len(witnesses)} failing pairs)")
    return _report("orthomodularity", universe, witnesses, pairs=pairs)


def _compatibility_graph(universe: EventCloud, subset: Iterable[int]) -> nx.Graph:
    """Graph on the subset joining points that are not timelike separated."""
    nodes = sorted(subset)
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    timelike = universe.timelike_matrix
    graph.add_edges_from((i, j) for i, j in combinations(nodes, 2) if not timelike[i, j])
    return graph


def maximal_achronal_subsets(universe: EventCloud, subset: Iterable[int]) -> List[EventSet]:
    """Maximal achronal subsets of M: maximal cliques of its compatibility graph."""
    subset = frozenset(subset)
    if not subset:
        return [frozenset()]
    cliques = nx.find_cliques(_compatibility_graph(universe, subset))
    return sorted((frozenset(c) for c in cliques), key=sorted)


def achronal_subsets(universe: EventCloud, subset: Optional[Iterable[int]] = None) -> List[EventSet]:
    """Every achronal subset of M (the universe by default), including the empty set."""
    subset = universe.everything if subset is None else frozenset(subset)
    cliques = nx.enumerate_all_cliques(_compatibility_graph(universe, subset))
    return [frozenset()] + [frozenset(c) for c in cliques]


def dacey_check(universe: EventCloud, family: Optional[Sequence[EventSet]] = None) -> Dict[str, Any]:
    """
    Every maximal achronal subset of every ⊥-complete M completes to M.

    On finite universes this holds exactly when the lattice is orthomodular.
    """
    if family is None:
        family = closed_sets(universe)
    else:
        family = [frozenset(m) for m in family]
        _require_closed(universe, family)

    witnesses = []
    for m in family:
        for delta in maximal_achronal_subsets(universe, m):
            if perp_completion(universe, delta) != m:
                witnesses.append({"sets": _listed(m, delta)})
    return _report("dacey", universe, witnesses, sets=len(family))


def asdc_comparison(universe: EventCloud, subsets: Optional[Sequence[EventSet]] = None) -> Dict[str, Any]:
    """
    Compare determinacy_set(M) with perp_completion(M) for achronal M.

    The grid surrogate only sees finitely many timelike directions, so
    deviations are logged and reported, never raised. `direction_rich` tells
    whether every point has at least two complete timelike grid lines.
    """
    if subsets is None:
        subsets = achronal_subsets(universe)
    witnesses = []
    for m in subsets:
        determined = determinacy_set(universe, m)
        completed = perp_completion(universe, m)
        if determined != completed:
            witnesses.append({"sets": _listed(m, determined, completed)})
    counts = complete_line_counts(universe)
    rich = bool(counts.min() >= 2) if counts.size else False
    if witnesses:
        logger.warning(
            f"Determinacy/completion differ on {len(witnesses)} of {len(subsets)} achronal sets in {universe.tag}"
        )
    return _report(
        "determinacy-vs-completion",
        universe,
        witnesses,
        sets=len(subsets),
        direction_rich=rich,
        min_complete_lines=int(counts.min()) if counts.size else 0,
    )


__all__ = [
    "closed_sets",
    "closure_check",
    "de_morgan_check",
    "orthomodularity_check",
    "maximal_achronal_subsets",
    "achronal_subsets",
    "dacey_check",
    "asdc_comparison",
]
