"""
Spin content of L2(S1) ⊗ C^(2J+1).

Peter–Weyl splits L2(S1) into the integer spins l = 0, 1, 2, ...; each
D^(l) ⊗ D^(J) splits into the spins |l - J|, ..., l + J. Spins are handled
as Fractions throughout so tallies are exact.
"""

from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from achronal.config import get_config
from achronal.logger import get_logger
from achronal.poincare import rotation_matrices, su2_character, wigner_d_matrices
from achronal.utils.validation import Spin, as_twice_spin, require_count

logger = get_logger("spectrum.multiplicity")

# Rotation angles at which characters are compared
CHARACTER_ANGLES = 16
CHARACTER_TOL = 1e-9


def multiplicity(J: Spin, j: Spin) -> int:
    """nu_j = 2 min(j, J) + 1 if j + J is an integer, else 0."""
    twice_big = as_twice_spin("J", J)
    twice_small = as_twice_spin("j", j)
    if (twice_big + twice_small) % 2:
        return 0
    return min(twice_big, twice_small) + 1


def clebsch_gordan_spins(l: Spin, J: Spin) -> List[Fraction]:
    """The spins |l - J|, |l - J| + 1, ..., l + J occurring in D^(l) ⊗ D^(J)."""
    twice_l = as_twice_spin("l", l)
    twice_big = as_twice_spin("J", J)
    return [Fraction(k, 2) for k in range(abs(twice_l - twice_big), twice_l + twice_big + 1, 2)]


def spin_tally(J: Spin, l_max: int) -> Dict[Fraction, int]:
    """How often each spin occurs in the blocks l = 0, ..., l_max."""
    l_max = require_count("l_max", l_max, minimum=0)
    tally: Counter = Counter()
    for l in range(l_max + 1):
        tally.update(clebsch_gordan_spins(l, J))
    return dict(sorted(tally.items()))


def multiplicity_table(J_max: Spin, j_max: Optional[Spin] = None) -> List[Dict[str, Any]]:
    """Rows {J, j, nu} over all half-integers up to the given bounds."""
    twice_big = as_twice_spin("J_max", J_max)
    twice_small = twice_big if j_max is None else as_twice_spin("j_max", j_max)
    return [
        {"J": str(Fraction(a, 2)), "j": str(Fraction(b, 2)), "nu": multiplicity(Fraction(a, 2), Fraction(b, 2))}
        for a in range(twice_big + 1)
        for b in range(twice_small + 1)
    ]


def _character_residual(twice_j: int, l_max: int, tally: Dict[Fraction, int], seed: int) -> Dict[str, float]:
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, CHARACTER_ANGLES)

    lhs = sum(su2_character(2 * l, angles) for l in range(l_max + 1)) * su2_character(twice_j, angles)
    rhs = sum(count * su2_character(int(2 * k), angles) for k, count in tally.items())

    # Traces of D-matrices at rotations about z reproduce the characters
    rotations = rotation_matrices(np.array([0.0, 0.0, 1.0]), angles)
    traces = {
        int(2 * k): np.trace(wigner_d_matrices(int(2 * k), rotations), axis1=-2, axis2=-1)
        for k in tally
        if k <= get_config().j_max
    }
    trace_error = max(
        (float(np.max(np.abs(traces[k2] - su2_character(k2, angles)))) for k2 in traces),
        default=0.0,
    )
    return {
        "character_error": float(np.max(np.abs(lhs - rhs))),
        "trace_error": trace_error,
    }


def peter_weyl_dimension_check(J: Spin, l_max: int, seed: int = 0) -> Dict[str, Any]:
    """
    Dimension count and multiplicity tally of the truncated decomposition.

    Checks that the summed block dimensions equal (2J + 1)(l_max + 1)^2 and
    that the tallied multiplicities agree with the closed form for every
    j <= l_max - J, where truncation cannot cut a block. Characters of both
    sides are compared at random rotation angles.
    """
    twice_j = as_twice_spin("J", J)
    l_max = require_count("l_max", l_max, minimum=0)
    tally = spin_tally(Fraction(twice_j, 2), l_max)

    total = sum(int(2 * k + 1) * count for k, count in tally.items())
    expected_total = (twice_j + 1) * (l_max + 1) ** 2

    complete_bound = Fraction(2 * l_max - twice_j, 2)
    mismatches = [
        {"j": str(k), "tally": count, "nu": multiplicity(Fraction(twice_j, 2), k)}
        for k, count in tally.items()
        if k <= complete_bound and count != multiplicity(Fraction(twice_j, 2), k)
    ]
    characters = _character_residual(twice_j, l_max, tally, seed)

    passed = (
        total == expected_total
        and not mismatches
        and characters["character_error"] <= CHARACTER_TOL
        and characters["trace_error"] <= CHARACTER_TOL
    )
    if not passed:
        logger.error(f"Peter-Weyl check failed for J={Fraction(twice_j, 2)}, l_max={l_max}")

    return {
        "property": "peter-weyl-dimension",
        "passed": passed,
        "J": str(Fraction(twice_j, 2)),
        "l_max": l_max,
        "total_dimension": total,
        "expected_dimension": expected_total,
        "blocks": {str(k): count for k, count in tally.items()},
        "mismatches": mismatches,
        **characters,
    }


__all__ = [
    "multiplicity",
    "clebsch_gordan_spins",
    "spin_tally",
    "multiplicity_table",
    "peter_weyl_dimension_check",
]
