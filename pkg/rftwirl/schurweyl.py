"""
Schur-Weyl decomposition of N-qubit space, collective SU(2) rotations and the
qubit-permutation representation.

The Schur basis is built by coupling qubits left to right, ((q0 q1) q2) ...,
with Condon-Shortley spin-1/2 Clebsch-Gordan coefficients. Qubit state |0>
carries m = +1/2. Inside a block of spin j the column index is
``offset + m_index * d_P + p_index`` with m descending from j to -j and the
multiplicity index running over Bratteli paths in lexicographic order, so the
block is the tensor product H_R (x) H_P with H_R most significant.
"""

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import numpy.typing as npt
import structlog

from rftwirl.config import settings
from rftwirl.core.cache import disk_memoize
from rftwirl.errors import (
    ConstructionError,
    DimensionMismatchError,
    ResourceLimitError,
    UsageError,
)
from rftwirl.matcore import Ket, Matrix, conjugate, tensor_all

logger = structlog.get_logger("rftwirl.schurweyl")

SU2_TOLERANCE = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def format_spin(two_j: int) -> str:
    return str(two_j // 2) if two_j % 2 == 0 else f"{two_j}/2"


def parse_spin(value: int | float | str | Fraction) -> int:
    """Return 2j for a spin given as 1, 0.5, "3/2", Fraction(1, 2), ..."""
    try:
        spin = Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"Cannot parse spin value {value!r}") from exc
    doubled = 2 * spin
    if doubled.denominator != 1 or doubled < 0:
        raise UsageError(f"Spin must be a nonnegative multiple of 1/2, got {value!r}")
    return int(doubled)


@dataclass(frozen=True, order=True)
class IrrepLabel:
    two_j: int
    n_qubits: int

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise DimensionMismatchError("n_qubits must be positive")
        if not 0 <= self.two_j <= self.n_qubits:
            raise DimensionMismatchError(
                f"2j={self.two_j} outside [0, {self.n_qubits}] for N={self.n_qubits}"
            )
        if (self.two_j - self.n_qubits) % 2:
            raise DimensionMismatchError(
                f"2j={self.two_j} has the wrong parity for N={self.n_qubits}"
            )

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    def __str__(self) -> str:
        return format_spin(self.two_j)


def dim_R(label: IrrepLabel) -> int:
    return label.two_j + 1


def dim_P(label: IrrepLabel) -> int:
    n = label.n_qubits
    k = (n - label.two_j) // 2
    quotient, remainder = divmod(
        math.comb(n, k) * (label.two_j + 1), (n + label.two_j) // 2 + 1
    )
    if remainder:
        raise ConstructionError(f"Non-integer multiplicity for {label}")
    return quotient


def irrep_labels(n_qubits: int) -> list[IrrepLabel]:
    """All spins of N qubits, descending."""
    return [IrrepLabel(two_j, n_qubits) for two_j in range(n_qubits, -1, -2)]


def bratteli_path_count(n_qubits: int, two_j: int) -> int:
    counts = {1: 1}
    for _ in range(1, n_qubits):
        stepped: dict[int, int] = {}
        for tj, count in counts.items():
            for nxt in (tj + 1, tj - 1):
                if nxt >= 0:
                    stepped[nxt] = stepped.get(nxt, 0) + count
        counts = stepped
    return counts.get(two_j, 0)


def bratteli_paths(n_qubits: int, two_j: int) -> list[tuple[int, ...]]:
    """Sequences (2j after qubit 1, ..., 2j after qubit N) ending at ``two_j``."""
    paths: list[tuple[int, ...]] = []

    def walk(prefix: tuple[int, ...]) -> None:
        remaining = n_qubits - len(prefix)
        current = prefix[-1]
        if remaining == 0:
            if current == two_j:
                paths.append(prefix)
            return
        if abs(current - two_j) > remaining:
            return
        for nxt in (current - 1, current + 1):
            if nxt >= 0:
                walk(prefix + (nxt,))

    walk((1,))
    return sorted(paths)


@dataclass(frozen=True)
class IrrepBlock:
    label: IrrepLabel
    d_R: int
    d_P: int
    offset: int

    @property
    def two_j(self) -> int:
        return self.label.two_j

    @property
    def dim(self) -> int:
        return self.d_R * self.d_P

    @property
    def columns(self) -> slice:
        return slice(self.offset, self.offset + self.dim)

    def column(self, m_index: int, p_index: int) -> int:
        if not (0 <= m_index < self.d_R and 0 <= p_index < self.d_P):
            raise DimensionMismatchError(
                f"({m_index}, {p_index}) outside block j={self.label}"
            )
        return self.offset + m_index * self.d_P + p_index

    def as_dict(self) -> dict[str, int]:
        return {"two_j": self.two_j, "d_R": self.d_R, "d_P": self.d_P, "offset": self.offset}


@dataclass(frozen=True, eq=False)
class SchurTransform:
    n_qubits: int
    unitary: Matrix = field(repr=False)
    blocks: tuple[IrrepBlock, ...]
    path_labels: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        self.unitary.setflags(write=False)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def block(self, two_j: int) -> IrrepBlock:
        for blk in self.blocks:
            if blk.two_j == two_j:
                return blk
        raise DimensionMismatchError(
            f"No block j={format_spin(two_j)} for N={self.n_qubits}"
        )

    def block_basis(self, block: IrrepBlock) -> Matrix:
        """Computational-basis columns spanning ``block`` (R (x) P order)."""
        return np.asarray(self.unitary[:, block.columns])

    def embed(self, block: IrrepBlock, local: npt.ArrayLike) -> Ket:
        """Map a vector on H_R (x) H_P of ``block`` into the N-qubit space."""
        vec = np.asarray(local, dtype=np.complex128).reshape(-1)
        if vec.size != block.dim:
            raise DimensionMismatchError(
                f"Local vector has size {vec.size}, block j={block.label} has {block.dim}"
            )
        return np.asarray(self.block_basis(block) @ vec, dtype=np.complex128)

    def embed_operator(self, block: IrrepBlock, local: npt.ArrayLike) -> Matrix:
        basis = self.block_basis(block)
        return np.asarray(basis @ np.asarray(local) @ basis.conj().T, dtype=np.complex128)


def _coupling_coefficients(two_j: int, two_j_new: int, two_m: int) -> tuple[float, float]:
    """Coefficients of |j, M-1/2>|up> and |j, M+1/2>|down> in |j_new, M>."""
    denom = 2.0 * (two_j + 1)
    plus = math.sqrt((two_j + two_m + 1) / denom) if two_j + two_m + 1 > 0 else 0.0
    minus = math.sqrt((two_j - two_m + 1) / denom) if two_j - two_m + 1 > 0 else 0.0
    if two_j_new == two_j + 1:
        return plus, minus
    return -minus, plus


def _couple_qubits(n_qubits: int) -> dict[tuple[int, ...], npt.NDArray[np.float64]]:
    up = np.array([1.0, 0.0])
    down = np.array([0.0, 1.0])
    states: dict[tuple[int, ...], npt.NDArray[np.float64]] = {(1,): np.eye(2)}
    for k in range(1, n_qubits):
        coupled: dict[tuple[int, ...], npt.NDArray[np.float64]] = {}
        for path, columns in states.items():
            tj = path[-1]
            for tj_new in (tj + 1, tj - 1):
                if tj_new < 0:
                    continue
                block = np.zeros((2 ** (k + 1), tj_new + 1))
                for m_index, tm in enumerate(range(tj_new, -tj_new - 1, -2)):
                    a, b = _coupling_coefficients(tj, tj_new, tm)
                    if abs(tm - 1) <= tj:
                        block[:, m_index] += a * np.kron(columns[:, (tj - tm + 1) // 2], up)
                    if abs(tm + 1) <= tj:
                        block[:, m_index] += b * np.kron(columns[:, (tj - tm - 1) // 2], down)
                coupled[path + (tj_new,)] = block
        states = coupled
    return states


def _check_qubit_count(n_qubits: int) -> None:
    if n_qubits < 1:
        raise DimensionMismatchError(f"n_qubits must be >= 1, got {n_qubits}")
    if n_qubits > settings.MAX_QUBITS:
        raise ResourceLimitError(
            f"n_qubits={n_qubits} exceeds the configured cap {settings.MAX_QUBITS} "
            "(set RFTWIRL_MAX_N to raise it)"
        )


@functools.lru_cache(maxsize=16)
@disk_memoize("schur:v1")
def _build(n_qubits: int) -> SchurTransform:
    states = _couple_qubits(n_qubits)
    columns: list[npt.NDArray[np.float64]] = []
    blocks: list[IrrepBlock] = []
    labels: list[tuple[tuple[int, ...], ...]] = []
    offset = 0
    for label in irrep_labels(n_qubits):
        paths = sorted(p for p in states if p[-1] == label.two_j)
        d_r, d_p = dim_R(label), dim_P(label)
        if len(paths) != d_p:
            raise ConstructionError(
                f"Found {len(paths)} coupling paths for j={label}, expected {d_p}"
            )
        for m_index in range(d_r):
            for path in paths:
                columns.append(states[path][:, m_index])
        blocks.append(IrrepBlock(label=label, d_R=d_r, d_P=d_p, offset=offset))
        labels.append(tuple(paths))
        offset += d_r * d_p

    unitary = np.column_stack(columns).astype(np.complex128)
    return SchurTransform(
        n_qubits=n_qubits,
        unitary=unitary,
        blocks=tuple(blocks),
        path_labels=tuple(labels),
    )


def build_schur_transform(n_qubits: int) -> SchurTransform:
    _check_qubit_count(n_qubits)
    transform = _build(n_qubits)
    transform.unitary.setflags(write=False)
    logger.debug(
        "schur_transform_ready",
        n_qubits=n_qubits,
        blocks=[(format_spin(b.two_j), b.d_R, b.d_P) for b in transform.blocks],
    )
    return transform


def schur_header(transform: SchurTransform) -> dict[str, object]:
    return {
        "n_qubits": transform.n_qubits,
        "blocks": [b.as_dict() for b in transform.blocks],
        "path_labels": [[list(p) for p in paths] for paths in transform.path_labels],
    }


def _check_dim(rho: Matrix, transform: SchurTransform) -> None:
    if rho.shape != (transform.dim, transform.dim):
        raise DimensionMismatchError(
            f"Operator shape {rho.shape} does not match N={transform.n_qubits}"
        )


def to_schur(rho: npt.ArrayLike, transform: SchurTransform) -> Matrix:
    mat = np.asarray(rho, dtype=np.complex128)
    _check_dim(mat, transform)
    u = transform.unitary
    return np.asarray(u.conj().T @ mat @ u, dtype=np.complex128)


def from_schur(rho: npt.ArrayLike, transform: SchurTransform) -> Matrix:
    mat = np.asarray(rho, dtype=np.complex128)
    _check_dim(mat, transform)
    return conjugate(np.asarray(transform.unitary), mat)


def block_project(rho_schur: npt.ArrayLike, block: IrrepBlock) -> tuple[Matrix, float]:
    """Diagonal sub-block of a Schur-basis operator and its weight p_j."""
    mat = np.asarray(rho_schur, dtype=np.complex128)
    cols = block.columns
    if mat.ndim != 2 or mat.shape[0] < cols.stop or mat.shape[1] < cols.stop:
        raise DimensionMismatchError(f"Operator {mat.shape} too small for block j={block.label}")
    sub = np.array(mat[cols, cols], dtype=np.complex128)
    return sub, float(np.real(np.trace(sub)))


def block_projector(transform: SchurTransform, block: IrrepBlock) -> Matrix:
    """Pi_j in the computational basis."""
    basis = transform.block_basis(block)
    return np.asarray(basis @ basis.conj().T, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Rotation:
    """An SU(2) element, stored in its canonical form as a 2x2 matrix."""

    matrix: Matrix = field(repr=False)

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        if mat.shape != (2, 2):
            raise DimensionMismatchError(f"SU(2) matrix must be 2x2, got {mat.shape}")
        if np.max(np.abs(mat.conj().T @ mat - np.eye(2))) > SU2_TOLERANCE:
            raise ConstructionError("Rotation matrix is not unitary")
        if abs(np.linalg.det(mat) - 1.0) > SU2_TOLERANCE:
            raise ConstructionError("Rotation matrix does not have unit determinant")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls) -> "Rotation":
        return cls(np.eye(2, dtype=np.complex128))

    @classmethod
    def from_axis_angle(cls, axis: npt.ArrayLike, angle: float) -> "Rotation":
        n = np.asarray(axis, dtype=np.float64).reshape(3)
        norm = float(np.linalg.norm(n))
        if norm == 0.0:
            raise ConstructionError("Rotation axis must be nonzero")
        nx, ny, nz = n / norm
        generator = nx * PAULI_X + ny * PAULI_Y + nz * PAULI_Z
        half = 0.5 * float(angle)
        return cls(math.cos(half) * np.eye(2) - 1j * math.sin(half) * generator)

    @classmethod
    def from_euler_zyz(cls, alpha: float, beta: float, gamma: float) -> "Rotation":
        z_axis = (0.0, 0.0, 1.0)
        y_axis = (0.0, 1.0, 0.0)
        return (
            cls.from_axis_angle(z_axis, alpha)
            .compose(cls.from_axis_angle(y_axis, beta))
            .compose(cls.from_axis_angle(z_axis, gamma))
        )

    @classmethod
    def random(cls, rng: np.random.Generator) -> "Rotation":
        """Draw from the invariant measure: a uniform unit quaternion."""
        w, x, y, z = random_quaternions(rng, 1)[0]
        return cls(quaternion_matrix(w, x, y, z))

    def compose(self, other: "Rotation") -> "Rotation":
        return Rotation(self.matrix @ other.matrix)


def random_quaternions(rng: np.random.Generator, count: int) -> npt.NDArray[np.float64]:
    q = rng.standard_normal((count, 4))
    return np.asarray(q / np.linalg.norm(q, axis=1, keepdims=True), dtype=np.float64)


def quaternion_matrix(w: float, x: float, y: float, z: float) -> Matrix:
    return np.array(
        [[w - 1j * z, -y - 1j * x], [y - 1j * x, w + 1j * z]], dtype=np.complex128
    )


def collective_rotation(rot: Rotation, n_qubits: int) -> Matrix:
    if n_qubits < 1:
        raise DimensionMismatchError(f"n_qubits must be >= 1, got {n_qubits}")
    return tensor_all([rot.matrix] * n_qubits)


def spin_coherent_ket(direction: npt.ArrayLike) -> Ket:
    """Single-qubit state with Bloch vector along ``direction``."""
    n = np.asarray(direction, dtype=np.float64).reshape(3)
    n = n / np.linalg.norm(n)
    theta = math.acos(max(-1.0, min(1.0, float(n[2]))))
    phi = math.atan2(float(n[1]), float(n[0]))
    return np.array(
        [math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)], dtype=np.complex128
    )


@dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the position that qubit ``i`` is sent to."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(len(self.images))) or not self.images:
            raise ConstructionError(f"{self.images} is not a permutation of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other: apply ``other`` first."""
        if other.n != self.n:
            raise DimensionMismatchError(f"Cannot compose S_{self.n} with S_{other.n}")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, target in enumerate(self.images):
            inv[target] = i
        return Permutation(tuple(inv))


def permutation_operator(p: Permutation, n_qubits: int | None = None) -> Matrix:
    if n_qubits is not None and n_qubits != p.n:
        raise DimensionMismatchError(f"Permutation on {p.n} qubits, expected {n_qubits}")
    n = p.n
    dim = 1 << n
    inverse = list(p.inverse().images)
    basis = np.eye(dim, dtype=np.complex128).reshape([2] * n + [dim])
    return np.asarray(np.transpose(basis, inverse + [n]).reshape(dim, dim))
