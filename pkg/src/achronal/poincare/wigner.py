"""
Canonical cross section, Wigner rotations and SU(2) representation matrices.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt
from typing import Optional, Tuple

import numpy as np

from achronal.config import get_config
from achronal.errors import InvalidArgumentError
from achronal.minkowski import FourVectorLike, as_array
from achronal.poincare.spinors import (
    IDENTITY2,
    SpinorLike,
    SpinorMatrix,
    as_matrix,
    hermitian_of,
    inverse_matrices,
    lorentz_apply,
    require_unimodular,
    require_unitary,
)
from achronal.utils.validation import Spin, as_twice_spin


@dataclass(frozen=True, eq=False)
class WignerDMatrix:
    """D^(J)(B) in the weight basis m = J, J-1, ..., -J."""

    spin: Fraction
    entries: np.ndarray

    @property
    def dimension(self) -> int:
        return self.entries.shape[-1]

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def is_unitary(self, tol: Optional[float] = None) -> bool:
        tol = get_config().unitary_tol if tol is None else tol
        gram = self.entries @ self.entries.conj().T
        return bool(np.max(np.abs(gram - np.eye(self.dimension))) <= tol)


def canonical_boost_matrices(k: np.ndarray) -> np.ndarray:
    """
    Q(k) for timelike k of shape (..., 4).

    With m = sqrt(k·k) and eta = sgn(k0), K = (eta k0 + eta k.sigma)/m is positive
    Hermitian of unit determinant and Q = (K + 1)/sqrt(tr K + 2) is its positive
    square root (Cayley–Hamilton).

    Raises:
        InvalidArgumentError: If some k is not timelike
    """
    k = as_array(k)
    square = k[..., 0] ** 2 - np.sum(k[..., 1:] ** 2, axis=-1)
    if np.any(square <= 0):
        raise InvalidArgumentError("k", "canonical boost needs a timelike vector (k·k > 0)")
    m = np.sqrt(square)
    eta = np.sign(k[..., 0])
    K = hermitian_of(k * (eta / m)[..., None])
    trace = np.trace(K, axis1=-2, axis2=-1).real
    return (K + IDENTITY2) / np.sqrt(trace + 2.0)[..., None, None]


def canonical_boost(k: FourVectorLike) -> SpinorMatrix:
    """Positive SL(2,C) matrix Q(k) with Q(k).(eta m, 0, 0, 0) = k."""
    k = as_array(k)
    if k.shape != (4,):
        raise InvalidArgumentError("k", "canonical_boost expects one four-vector; use canonical_boost_matrices")
    return SpinorMatrix(canonical_boost_matrices(k))


def wigner_rotation_matrices(k: np.ndarray, A: SpinorLike) -> np.ndarray:
    """R(k, A) = Q(k)^-1 A Q(A^-1.k), batched over k and A."""
    A = require_unimodular(A)
    k = as_array(k)
    moved = lorentz_apply(inverse_matrices(A), k)
    return inverse_matrices(canonical_boost_matrices(k)) @ A @ canonical_boost_matrices(moved)


def wigner_rotation(k: FourVectorLike, A: SpinorLike) -> SpinorMatrix:
    """
    Wigner rotation R(k, A), an element of SU(2).

    Raises:
        InvalidArgumentError: If k is not timelike
    """
    return SpinorMatrix(wigner_rotation_matrices(as_array(k), as_matrix(A)))


@lru_cache(maxsize=None)
def _symmetric_power_terms(twice_j: int) -> Tuple[np.ndarray, ...]:
    """
    Index tables for the symmetric power of degree n = 2J.

    Basis vector r (weight m = J - r) is the monomial e1^a e2^b / sqrt(a! b!)
    with a = n - r, b = r. Under B, e1 -> B11 e1 + B21 e2 and e2 -> B12 e1 + B22 e2;
    expanding gives one term per (i, j) with output power a' = i + j of e1.
    """
    n = twice_j
    rows = []
    for r in range(n + 1):
        a, b = n - r, r
        for i in range(a + 1):
            for j in range(b + 1):
                a_out = i + j
                r_out = n - a_out
                coefficient = comb(a, i) * comb(b, j) * sqrt(
                    factorial(a_out) * factorial(n - a_out) / (factorial(a) * factorial(b))
                )
                rows.append((r_out * (n + 1) + r, i, a - i, j, b - j, coefficient))
    table = np.array(rows, dtype=float)
    flat_index = table[:, 0].astype(int)
    scatter = np.zeros((len(rows), (n + 1) ** 2))
    scatter[np.arange(len(rows)), flat_index] = 1.0
    powers = table[:, 1:5].astype(int)
    return powers, table[:, 5], scatter


def _power_table(z: np.ndarray, n: int) -> np.ndarray:
    """z^0 .. z^n along a new last axis (no 0**0 ambiguity)."""
    table = np.empty(z.shape + (n + 1,), dtype=complex)
    table[..., 0] = 1.0
    for p in range(1, n + 1):
        table[..., p] = table[..., p - 1] * z
    return table


def wigner_d_matrices(twice_j: int, B: SpinorLike) -> np.ndarray:
    """
    D^(J)(B) for J = twice_j / 2, batched over B of shape (..., 2, 2).

    Raises:
        InvalidArgumentError: If J exceeds j_max or B is not in SU(2)
    """
    config = get_config()
    if twice_j < 0 or twice_j > 2 * config.j_max:
        raise InvalidArgumentError("J", f"spin must lie in [0, {config.j_max}], got {twice_j}/2")
    B = require_unitary(B)
    n = twice_j
    if n == 0:
        return np.ones(B.shape[:-2] + (1, 1), dtype=complex)

    powers, coefficients, scatter = _symmetric_power_terms(n)
    p11 = _power_table(B[..., 0, 0], n)
    p21 = _power_table(B[..., 1, 0], n)
    p12 = _power_table(B[..., 0, 1], n)
    p22 = _power_table(B[..., 1, 1], n)
    terms = (
        coefficients
        * p11[..., powers[:, 0]]
        * p21[..., powers[:, 1]]
        * p12[..., powers[:, 2]]
        * p22[..., powers[:, 3]]
    )
    return (terms @ scatter).reshape(B.shape[:-2] + (n + 1, n + 1))


def wigner_d(J: Spin, B: SpinorLike) -> WignerDMatrix:
    """
    Irreducible SU(2) representation matrix of spin J, built from the
    symmetric tensor power of B. D^(1/2)(B) = B and D^(0)(B) = [1].
    """
    twice_j = as_twice_spin("J", J)
    B = as_matrix(B)
    if B.shape != (2, 2):
        raise InvalidArgumentError("B", "wigner_d expects one matrix; use wigner_d_matrices for batches")
    return WignerDMatrix(Fraction(twice_j, 2), wigner_d_matrices(twice_j, B))


def su2_character(twice_j: int, angle) -> np.ndarray:
    """chi_J(theta) = sum over m of e^{i m theta}: trace of D^(J) at a rotation by theta."""
    m = (twice_j - 2 * np.arange(twice_j + 1)) / 2.0
    angle = np.asarray(angle, dtype=float)
    return np.sum(np.exp(1j * angle[..., None] * m), axis=-1)
