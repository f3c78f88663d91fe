"""
Dense complex linear algebra for states and operators.

Conventions:
- matrices and kets are plain ``numpy`` arrays of dtype complex128;
- in tensor products the left operand is the most significant factor, so
  qubit 0 owns the most significant bit of a computational-basis index;
- the only spectral primitive is the Hermitian eigendecomposition.
"""

import math
from collections.abc import Iterable, Sequence
from functools import reduce

import numpy as np
import numpy.typing as npt

from rftwirl.config import settings
from rftwirl.errors import DimensionMismatchError, InvalidStateError

Matrix = npt.NDArray[np.complex128]
Ket = npt.NDArray[np.complex128]
FactorShape = tuple[int, ...]


def _tol(tol: float | None) -> float:
    return float(settings.TOLERANCE if tol is None else tol)


def as_matrix(entries: npt.ArrayLike) -> Matrix:
    mat = np.asarray(entries, dtype=np.complex128)
    if mat.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-d matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise InvalidStateError("Matrix has non-finite entries")
    return mat


def as_ket(amplitudes: npt.ArrayLike, tol: float | None = None) -> Ket:
    vec = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if vec.size == 0:
        raise DimensionMismatchError("Ket must have positive dimension")
    if not np.all(np.isfinite(vec)):
        raise InvalidStateError("Ket has non-finite amplitudes")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > _tol(tol):
        raise InvalidStateError(f"Ket is not normalized (norm={norm!r})")
    return vec


def as_density(matrix: npt.ArrayLike, tol: float | None = None) -> Matrix:
    rho = as_matrix(matrix)
    eps = _tol(tol)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatchError(f"Density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > eps:
        raise InvalidStateError("Density matrix is not Hermitian")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > eps:
        raise InvalidStateError(f"Density matrix trace is {trace.real!r}, expected 1")
    if float(np.min(np.linalg.eigvalsh(hermitian_part(rho)))) < -eps:
        raise InvalidStateError("Density matrix has a negative eigenvalue")
    return rho


def hermitian_part(mat: Matrix) -> Matrix:
    return np.asarray(0.5 * (mat + mat.conj().T), dtype=np.complex128)


def projector(ket: Ket) -> Matrix:
    vec = np.asarray(ket, dtype=np.complex128).reshape(-1)
    return np.outer(vec, vec.conj())


def basis_ket(dim: int, index: int) -> Ket:
    if not 0 <= index < dim:
        raise DimensionMismatchError(f"Basis index {index} out of range for dim {dim}")
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index] = 1.0
    return vec


def maximally_mixed(dim: int) -> Matrix:
    return np.eye(dim, dtype=np.complex128) / dim


def tensor(a: npt.ArrayLike, b: npt.ArrayLike) -> Matrix:
    return np.asarray(np.kron(np.asarray(a), np.asarray(b)), dtype=np.complex128)


def tensor_all(factors: Iterable[npt.ArrayLike]) -> Matrix:
    items = list(factors)
    if not items:
        raise DimensionMismatchError("tensor_all needs at least one factor")
    return reduce(tensor, items[1:], np.asarray(items[0], dtype=np.complex128))


def partial_trace(rho: npt.ArrayLike, shape: Sequence[int], keep: Sequence[int]) -> Matrix:
    """
    Reduced operator on the factors listed in ``keep`` (in that order).

    ``rho`` need not be normalized; unnormalized blocks are traced the same way.
    """
    mat = np.asarray(rho, dtype=np.complex128)
    dims = tuple(int(d) for d in shape)
    if any(d < 1 for d in dims):
        raise DimensionMismatchError(f"Factor dimensions must be positive: {dims}")
    total = math.prod(dims)
    if mat.ndim != 2 or mat.shape != (total, total):
        raise DimensionMismatchError(
            f"Shape {dims} (product {total}) does not match matrix {mat.shape}"
        )
    kept = [int(k) for k in keep]
    if len(set(kept)) != len(kept) or any(not 0 <= k < len(dims) for k in kept):
        raise DimensionMismatchError(f"Invalid factor selection {kept} for {dims}")

    n = len(dims)
    row_labels = list(range(n))
    col_labels = list(range(n, 2 * n))
    for i in range(n):
        if i not in kept:
            col_labels[i] = row_labels[i]
    out_labels = [row_labels[k] for k in kept] + [col_labels[k] for k in kept]
    reduced = np.einsum(mat.reshape(dims + dims), row_labels + col_labels, out_labels)
    d_keep = math.prod(dims[k] for k in kept)
    return np.asarray(reduced, dtype=np.complex128).reshape(d_keep, d_keep)


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Dimension mismatch: {a.shape} vs {b.shape}")


def trace_norm_hermitian(mat: npt.ArrayLike) -> float:
    eigenvalues = np.linalg.eigvalsh(hermitian_part(np.asarray(mat, dtype=np.complex128)))
    return float(np.sum(np.abs(eigenvalues)))


def trace_distance(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    left = np.asarray(a, dtype=np.complex128)
    right = np.asarray(b, dtype=np.complex128)
    _same_shape(left, right)
    return min(1.0, 0.5 * trace_norm_hermitian(left - right))


def von_neumann_entropy(rho: npt.ArrayLike, tol: float | None = None) -> float:
    eigenvalues = np.linalg.eigvalsh(hermitian_part(np.asarray(rho, dtype=np.complex128)))
    eps = _tol(tol)
    if float(np.min(eigenvalues)) < -eps:
        raise InvalidStateError("Entropy of an operator with negative eigenvalues")
    # 0 log 0 = 0; negative noise within the tolerance is dropped
    positive = eigenvalues[eigenvalues > 0.0]
    return max(0.0, float(-np.sum(positive * np.log2(positive))))


def gram_orthonormality(states: Sequence[npt.ArrayLike]) -> float:
    """Worst deviation of the Gram matrix from the identity."""
    if not states:
        return 0.0
    columns = np.column_stack([np.asarray(s, dtype=np.complex128).reshape(-1) for s in states])
    gram = columns.conj().T @ columns
    deviation = np.abs(gram - np.eye(gram.shape[0]))
    return float(np.max(deviation))


def pure_fidelity(ket: npt.ArrayLike, rho: npt.ArrayLike) -> float:
    vec = np.asarray(ket, dtype=np.complex128).reshape(-1)
    mat = np.asarray(rho, dtype=np.complex128)
    return float(np.real(vec.conj() @ mat @ vec))


def is_unitary(mat: npt.ArrayLike, tol: float | None = None) -> bool:
    u = np.asarray(mat, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= _tol(tol))


def conjugate(unitary: Matrix, rho: Matrix) -> Matrix:
    return np.asarray(unitary @ rho @ unitary.conj().T, dtype=np.complex128)


def n_qubits_for_dim(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DimensionMismatchError(f"Dimension {dim} is not 2^N for N >= 1")
    return n


def random_pure_state(dim: int, rng: np.random.Generator) -> Ket:
    """Normalized complex-Gaussian vector; unitarily invariant distribution."""
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return np.asarray(vec / np.linalg.norm(vec), dtype=np.complex128)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> Matrix:
    k = dim if rank is None else int(rank)
    ginibre = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    rho = ginibre @ ginibre.conj().T
    return np.asarray(rho / np.trace(rho).real, dtype=np.complex128)
