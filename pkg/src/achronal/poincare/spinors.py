"""
SL(2,C) spinor matrices and the covering map onto the Lorentz group.

A four-vector x is identified with the Hermitian matrix
X = x0*1 + x1*s1 + x2*s2 + x3*s3 (Pauli matrices s_i) and A acts by
X -> A X A^dagger. Batched helpers work on arrays of shape (..., 2, 2).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from achronal import constants
from achronal.config import get_config
from achronal.errors import InvalidArgumentError
from achronal.logger import get_logger

logger = get_logger("poincare.spinors")

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

IDENTITY2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class SpinorMatrix:
    """
    A 2x2 complex matrix with unit determinant.

    `compositions` counts products since the last renormalization; after
    RENORMALIZE_EVERY products the result is rescaled by det^(-1/2).
    """

    matrix: np.ndarray
    compositions: int = 0

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise InvalidArgumentError("matrix", f"SpinorMatrix must be 2x2, got shape {matrix.shape}")
        det = matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]
        if abs(det - 1.0) > get_config().det_tol:
            raise InvalidArgumentError("matrix", f"SpinorMatrix must be unimodular, det = {det}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls) -> "SpinorMatrix":
        return cls(IDENTITY2)

    @classmethod
    def boost(cls, axis: Sequence[float], rapidity: float) -> "SpinorMatrix":
        """Pure boost of the given rapidity along a unit axis."""
        return cls(boost_matrices(np.asarray(axis, dtype=float), rapidity))

    @classmethod
    def rotation(cls, axis: Sequence[float], angle: float) -> "SpinorMatrix":
        """SU(2) element covering the rotation by `angle` about a unit axis."""
        return cls(rotation_matrices(np.asarray(axis, dtype=float), angle))

    @classmethod
    def from_json(cls, values: Sequence[float]) -> "SpinorMatrix":
        """Inverse of to_json: 8 reals (Re, Im) of A11, A12, A21, A22."""
        data = np.asarray(values, dtype=float)
        if data.shape != (8,):
            raise InvalidArgumentError("spinor", f"expected 8 reals, got shape {data.shape}")
        entries = data[0::2] + 1j * data[1::2]
        return cls(entries.reshape(2, 2))

    def to_json(self) -> List[float]:
        flat = self.matrix.reshape(-1)
        return [float(v) for pair in zip(flat.real, flat.imag) for v in pair]

    def det(self) -> complex:
        m = self.matrix
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def inverse(self) -> "SpinorMatrix":
        return SpinorMatrix(inverse_matrices(self.matrix), self.compositions)

    def dagger(self) -> "SpinorMatrix":
        return SpinorMatrix(self.matrix.conj().T, self.compositions)

    def is_unitary(self, tol: Optional[float] = None) -> bool:
        tol = get_config().unitary_tol if tol is None else tol
        return bool(np.max(np.abs(self.matrix @ self.matrix.conj().T - IDENTITY2)) <= tol)

    def renormalized(self) -> "SpinorMatrix":
        return SpinorMatrix(renormalize(self.matrix))

    def __matmul__(self, other: "SpinorMatrix") -> "SpinorMatrix":
        product = self.matrix @ other.matrix
        count = self.compositions + other.compositions + 1
        if count >= constants.RENORMALIZE_EVERY:
            product = renormalize(product)
            count = 0
        return SpinorMatrix(product, count)

    def __neg__(self) -> "SpinorMatrix":
        return SpinorMatrix(-self.matrix, self.compositions)

    def __repr__(self) -> str:
        return f"SpinorMatrix({self.matrix.tolist()})"


SpinorLike = Union[SpinorMatrix, np.ndarray]


def as_matrix(A: SpinorLike) -> np.ndarray:
    """Complex array of shape (..., 2, 2)."""
    if isinstance(A, SpinorMatrix):
        return A.matrix
    array = np.asarray(A, dtype=complex)
    if array.ndim < 2 or array.shape[-2:] != (2, 2):
        raise InvalidArgumentError("A", f"expected trailing shape (2, 2), got {array.shape}")
    return array


def determinants(A: SpinorLike) -> np.ndarray:
    A = as_matrix(A)
    return A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]


def require_unimodular(A: SpinorLike, tol: Optional[float] = None) -> np.ndarray:
    """Return A as an array, raising InvalidArgumentError unless det A = 1."""
    A = as_matrix(A)
    tol = get_config().det_tol if tol is None else tol
    deviation = np.max(np.abs(determinants(A) - 1.0))
    if deviation > tol:
        raise InvalidArgumentError("A", f"matrix is not unimodular (|det - 1| = {deviation:.3e})")
    return A


def require_unitary(B: SpinorLike, tol: Optional[float] = None) -> np.ndarray:
    """Return B as an array, raising InvalidArgumentError unless B is in SU(2)."""
    B = require_unimodular(B, tol)
    tol = get_config().unitary_tol if tol is None else tol
    gram = B @ np.conj(np.swapaxes(B, -1, -2))
    deviation = np.max(np.abs(gram - IDENTITY2))
    if deviation > tol:
        raise InvalidArgumentError("B", f"matrix is not unitary (deviation {deviation:.3e})")
    return B


def renormalize(A: np.ndarray) -> np.ndarray:
    """Rescale by det^(-1/2) so that det = 1 again."""
    A = as_matrix(A)
    return A / np.sqrt(determinants(A))[..., None, None]


def inverse_matrices(A: SpinorLike) -> np.ndarray:
    """Inverse of unimodular matrices via the adjugate."""
    A = as_matrix(A)
    inv = np.empty_like(A)
    inv[..., 0, 0] = A[..., 1, 1]
    inv[..., 1, 1] = A[..., 0, 0]
    inv[..., 0, 1] = -A[..., 0, 1]
    inv[..., 1, 0] = -A[..., 1, 0]
    return inv / determinants(A)[..., None, None]


def dagger(A: SpinorLike) -> np.ndarray:
    return np.conj(np.swapaxes(as_matrix(A), -1, -2))


def hermitian_of(x: np.ndarray) -> np.ndarray:
    """X = x0*1 + x.sigma for four-vectors of shape (..., 4)."""
    x = np.asarray(x, dtype=float)
    return np.einsum("...m,mij->...ij", x.astype(complex), PAULI)


def vector_of(X: np.ndarray) -> np.ndarray:
    """Inverse of hermitian_of: x_m = tr(sigma_m X) / 2."""
    return 0.5 * np.einsum("mij,...ji->...m", PAULI, X).real


def covering_map(A: SpinorLike) -> np.ndarray:
    """
    Lorentz matrix of A: Lambda(A)_{mn} = tr(sigma_m A sigma_n A^dagger) / 2.

    Accepts a SpinorMatrix or an array (..., 2, 2) and returns (..., 4, 4).

    Raises:
        InvalidArgumentError: If det A != 1
    """
    A = require_unimodular(A)
    conjugated = np.einsum("...ij,njk,...lk->...nil", A, PAULI, np.conj(A))
    return 0.5 * np.einsum("mij,...nji->...mn", PAULI, conjugated).real


def lorentz_apply(A: SpinorLike, x: np.ndarray) -> np.ndarray:
    """Lambda(A) x for four-vectors x of shape (..., 4)."""
    return np.einsum("...mn,...n->...m", covering_map(A), np.asarray(x, dtype=float))


def boost_matrices(axis: np.ndarray, rapidity) -> np.ndarray:
    """cosh(r/2)*1 + sinh(r/2) n.sigma, batched over axis and rapidity."""
    axis = np.asarray(axis, dtype=float)
    rapidity = np.asarray(rapidity, dtype=float)
    n_sigma = np.einsum("...i,ijk->...jk", axis.astype(complex), PAULI[1:])
    half = (rapidity / 2.0)[..., None, None]
    return np.cosh(half) * IDENTITY2 + np.sinh(half) * n_sigma


def rotation_matrices(axis: np.ndarray, angle) -> np.ndarray:
    """cos(t/2)*1 - i sin(t/2) n.sigma, batched over axis and angle."""
    axis = np.asarray(axis, dtype=float)
    angle = np.asarray(angle, dtype=float)
    n_sigma = np.einsum("...i,ijk->...jk", axis.astype(complex), PAULI[1:])
    half = (angle / 2.0)[..., None, None]
    return np.cos(half) * IDENTITY2 - 1j * np.sin(half) * n_sigma


def su2_from_quaternion(a: np.ndarray) -> np.ndarray:
    """
    SU(2) matrix [[a0 + i a3, a2 + i a1], [-a2 + i a1, a0 - i a3]].

    `a` has shape (..., 4) and unit norm.
    """
    a = np.asarray(a, dtype=float)
    out = np.empty(a.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = a[..., 0] + 1j * a[..., 3]
    out[..., 0, 1] = a[..., 2] + 1j * a[..., 1]
    out[..., 1, 0] = -a[..., 2] + 1j * a[..., 1]
    out[..., 1, 1] = a[..., 0] - 1j * a[..., 3]
    return out


def random_unit_vectors(rng: np.random.Generator, size: int, dim: int = 3) -> np.ndarray:
    """Uniform directions on the unit sphere in R^dim."""
    g = rng.standard_normal((size, dim))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def random_su2(rng: np.random.Generator, size: int) -> np.ndarray:
    """Haar-random SU(2) elements (uniform unit quaternions)."""
    return su2_from_quaternion(random_unit_vectors(rng, size, dim=4))


def random_sl2c(rng: np.random.Generator, size: int, max_rapidity: float = 1.0) -> np.ndarray:
    """Random SL(2,C) elements U * boost(n, r) with r uniform in [0, max_rapidity]."""
    rotations = random_su2(rng, size)
    axes = random_unit_vectors(rng, size)
    rapidities = rng.uniform(0.0, max_rapidity, size)
    return rotations @ boost_matrices(axes, rapidities)
