"""
Private quantum and classical communication schemes and their capacity bounds.

Every classical construction here produces orthonormal signal states whose
images under the scheme's twirl coincide. Within one irrep the signal states
are maximally entangled between the decohering factor A and the untouched
factor B; several irreps are combined with a discrete Fourier transform over
the irrep index so that each signal has equal weight in every chosen block.
"""

import cmath
import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt
import structlog

from rftwirl.config import settings
from rftwirl.errors import ConstructionError, DecodeError, DimensionMismatchError, UsageError
from rftwirl.matcore import (
    Ket,
    Matrix,
    as_ket,
    basis_ket,
    hermitian_part,
    maximally_mixed,
    projector,
    tensor,
)
from rftwirl.schurweyl import (
    IrrepBlock,
    SchurTransform,
    build_schur_transform,
    dim_P,
    dim_R,
    format_spin,
    irrep_labels,
    parse_spin,
    spin_coherent_ket,
)
from rftwirl.twirl import SuperopKind, parse_kind

logger = structlog.get_logger("rftwirl.schemes")

TETRAHEDRON_DIRECTIONS = (
    (1.0, 1.0, 1.0),
    (1.0, -1.0, -1.0),
    (-1.0, 1.0, -1.0),
    (-1.0, -1.0, 1.0),
)


@dataclass(frozen=True, eq=False)
class ClassicalScheme:
    n_qubits: int
    superop_kind: SuperopKind
    states: tuple[Ket, ...]
    claimed_rho0: Matrix
    construction: str
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        dim = 1 << self.n_qubits
        if len(self.states) < 2:
            raise ConstructionError(
                f"{self.construction}: a scheme needs at least two signal states, "
                f"got {len(self.states)}"
            )
        for state in self.states:
            if state.shape != (dim,):
                raise DimensionMismatchError(
                    f"{self.construction}: state of shape {state.shape}, expected ({dim},)"
                )
            as_ket(state)
        if self.claimed_rho0.shape != (dim, dim):
            raise DimensionMismatchError(f"{self.construction}: rho0 has the wrong shape")

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def scheme_id(self) -> str:
        return f"{self.construction}-n{self.n_qubits}-{self.superop_kind.value}"

    def density_matrices(self) -> list[Matrix]:
        return [projector(s) for s in self.states]


@dataclass(frozen=True, eq=False)
class QuantumScheme:
    n_qubits: int
    superop_kind: SuperopKind
    logical_dim: int
    encode_isometry: Matrix
    target_block: IrrepBlock
    ancilla_state: Ket | None
    claimed_rho0: Matrix
    construction: str = "quantum"
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        v = self.encode_isometry
        dim = 1 << self.n_qubits
        if v.shape != (dim, self.logical_dim):
            raise DimensionMismatchError(
                f"Isometry has shape {v.shape}, expected ({dim}, {self.logical_dim})"
            )
        defect = float(np.max(np.abs(v.conj().T @ v - np.eye(self.logical_dim))))
        if defect > settings.TOLERANCE:
            raise ConstructionError(f"Encoding is not an isometry (defect {defect:.3e})")

    @property
    def scheme_id(self) -> str:
        return f"{self.construction}-n{self.n_qubits}-{self.superop_kind.value}"

    def encode(self, logical_rho: npt.ArrayLike) -> Matrix:
        v = self.encode_isometry
        rho = np.asarray(logical_rho, dtype=np.complex128)
        if rho.shape != (self.logical_dim, self.logical_dim):
            raise DimensionMismatchError(
                f"Logical state of shape {rho.shape}, expected dim {self.logical_dim}"
            )
        return np.asarray(v @ rho @ v.conj().T, dtype=np.complex128)


@dataclass(frozen=True)
class CapacityRow:
    n_qubits: int
    srf_kind: SuperopKind
    quantum_qubits: float
    classical_cbits: float
    scheme_sizes: dict[str, int]
    best_construction: str
    classical_bound: int
    asymptotic_quantum: float
    asymptotic_classical: float
    details: dict[str, str] = field(default_factory=dict)

    @property
    def below_asymptotic_quantum(self) -> bool:
        return self.quantum_qubits < self.asymptotic_quantum

    @property
    def below_asymptotic_classical(self) -> bool:
        return self.classical_cbits < self.asymptotic_classical


def _swap_factors(vec: Ket, d_first: int, d_second: int) -> Ket:
    """Reorder a vector on first (x) second into second (x) first."""
    return np.asarray(vec.reshape(d_first, d_second).T.reshape(-1), dtype=np.complex128)


def entangled_signals(d_A: int, d_B: int) -> list[Ket]:
    """
    Orthogonal maximally entangled states on A (x) B (A most significant) that a
    depolarizer on A sends to one common state.

    d_A >= d_B: d_A*d_B states; otherwise d_A**2 states supported on the
    first d_A basis vectors of B.
    """
    if d_A < 1 or d_B < 1:
        raise DimensionMismatchError(f"Factor dimensions must be positive: {d_A}, {d_B}")
    width = min(d_A, d_B)
    states: list[Ket] = []
    for shift in range(d_A):
        for freq in range(width):
            vec = np.zeros(d_A * d_B, dtype=np.complex128)
            for k in range(width):
                phase = cmath.exp(2j * math.pi * k * freq / width)
                vec[((k + shift) % d_A) * d_B + k] = phase / math.sqrt(width)
            states.append(vec)
    return states


def entangled_image(d_A: int, d_B: int) -> Matrix:
    """(I_A / d_A) (x) sigma_B, the common depolarized image of ``entangled_signals``."""
    width = min(d_A, d_B)
    sigma_b = np.zeros((d_B, d_B), dtype=np.complex128)
    sigma_b[:width, :width] = np.eye(width) / width
    return tensor(maximally_mixed(d_A), sigma_b)


def irrep_message_count(block: IrrepBlock, kind: SuperopKind) -> int:
    """Signals one irrep can carry privately: d_A * min(d_A, d_B)."""
    if kind == SuperopKind.SU2:
        return block.d_R * min(block.d_R, block.d_P)
    if kind == SuperopKind.PERM:
        return block.d_P * min(block.d_P, block.d_R)
    return block.d_R * block.d_P


def _irrep_signals(
    transform: SchurTransform, block: IrrepBlock, kind: SuperopKind
) -> tuple[list[Ket], Matrix]:
    """Entangled signals of one block, embedded, with their common twirl image."""
    d_r, d_p = block.d_R, block.d_P
    if kind == SuperopKind.SU2 or (kind == SuperopKind.BOTH and d_r >= d_p):
        local = entangled_signals(d_r, d_p)
        image = entangled_image(d_r, d_p)
        if kind == SuperopKind.BOTH:
            image = maximally_mixed(block.dim)
    else:
        local = [_swap_factors(v, d_p, d_r) for v in entangled_signals(d_p, d_r)]
        width = min(d_p, d_r)
        sigma_r = np.zeros((d_r, d_r), dtype=np.complex128)
        sigma_r[:width, :width] = np.eye(width) / width
        image = tensor(sigma_r, maximally_mixed(d_p))
        if kind == SuperopKind.BOTH:
            image = maximally_mixed(block.dim)
    return [transform.embed(block, v) for v in local], transform.embed_operator(block, image)


def _fourier_combine(per_irrep: Sequence[Sequence[Ket]]) -> list[Ket]:
    count = len(per_irrep)
    width = len(per_irrep[0])
    out: list[Ket] = []
    for mu in range(count):
        for i in range(width):
            vec = sum(
                cmath.exp(2j * math.pi * mu * a / count) * per_irrep[a][i] for a in range(count)
            )
            out.append(np.asarray(vec, dtype=np.complex128) / math.sqrt(count))
    return out


def _resolve_irreps(transform: SchurTransform, irrep_set: Iterable[int | str]) -> list[IrrepBlock]:
    blocks: list[IrrepBlock] = []
    for spin in irrep_set:
        two_j = parse_spin(spin) if isinstance(spin, str) else int(spin)
        blk = transform.block(two_j)
        if blk not in blocks:
            blocks.append(blk)
    if not blocks:
        raise UsageError("irrep_set must name at least one irrep")
    return sorted(blocks, key=lambda b: -b.two_j)


def tetrahedron_states() -> ClassicalScheme:
    """Four two-qubit signals 1/2 |psi-> + sqrt(3)/2 e^{i a_k} |n_k n_k>."""
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / math.sqrt(2)
    spins = [spin_coherent_ket(d) for d in TETRAHEDRON_DIRECTIONS]
    overlap_sq = [[complex(np.vdot(a, b)) ** 2 for b in spins] for a in spins]

    phases = [0.0] + [math.pi - cmath.phase(overlap_sq[0][k]) for k in range(1, 4)]
    for i, k in itertools.combinations(range(4), 2):
        value = cmath.exp(1j * (phases[k] - phases[i])) * overlap_sq[i][k]
        if abs(value + 1.0 / 3.0) > settings.TOLERANCE:
            raise ConstructionError(
                f"Tetrahedron phases inconsistent for pair ({i}, {k}): {value!r}"
            )

    states = tuple(
        np.asarray(
            0.5 * singlet
            + (math.sqrt(3) / 2) * cmath.exp(1j * phases[k]) * np.kron(spins[k], spins[k]),
            dtype=np.complex128,
        )
        for k in range(4)
    )
    return ClassicalScheme(
        n_qubits=2,
        superop_kind=SuperopKind.SU2,
        states=states,
        claimed_rho0=maximally_mixed(4),
        construction="tetrahedron",
        params={"phases": [float(p) for p in phases]},
    )


def three_qubit_octet() -> ClassicalScheme:
    """Eight signals (|3/2, mu> +- |1/2, mu>) / sqrt(2)."""
    t = build_schur_transform(3)
    top, low = t.block(3), t.block(1)
    quartet = [t.embed(top, basis_ket(top.dim, mu)) for mu in range(top.dim)]
    entangled = [t.embed(low, v) for v in entangled_signals(low.d_R, low.d_P)]
    states = tuple(
        np.asarray((quartet[mu] + (-1) ** b * entangled[mu]) / math.sqrt(2), dtype=np.complex128)
        for b in range(2)
        for mu in range(4)
    )
    return ClassicalScheme(
        n_qubits=3,
        superop_kind=SuperopKind.SU2,
        states=states,
        claimed_rho0=maximally_mixed(8),
        construction="octet",
    )


def _default_quantum_block(transform: SchurTransform, kind: SuperopKind) -> IrrepBlock:
    if kind == SuperopKind.SU2:
        return transform.block(transform.n_qubits)

    def score(blk: IrrepBlock) -> int:
        return blk.d_P if kind == SuperopKind.PERM else blk.dim

    best = None
    # ascending j with a strict comparison keeps the smaller j on ties
    for blk in sorted(transform.blocks, key=lambda b: b.two_j):
        if best is None or score(blk) > score(best):
            best = blk
    assert best is not None
    return best


def quantum_scheme(
    n_qubits: int, srf: SuperopKind | str, j: int | float | str | None = None
) -> QuantumScheme:
    """
    Encode into the largest D-full subsystem for ``srf`` (or into irrep ``j``).

    SU2 carries the logical system on H_R with H_P fixed to its first basis
    vector, S_N on H_P with H_R fixed, both on the whole block.
    """
    kind = parse_kind(srf)
    if kind == SuperopKind.BLOCK_DEPOLARIZE:
        raise UsageError("Quantum schemes are defined for su2, perm or both")
    t = build_schur_transform(n_qubits)
    block = _default_quantum_block(t, kind) if j is None else t.block(parse_spin(j))
    d_r, d_p = block.d_R, block.d_P

    ancilla: Ket | None
    if kind == SuperopKind.SU2:
        ancilla = basis_ket(d_p, 0)
        local = [tensor(basis_ket(d_r, r), ancilla).reshape(-1) for r in range(d_r)]
        rho0_local = tensor(maximally_mixed(d_r), projector(ancilla))
    elif kind == SuperopKind.PERM:
        ancilla = basis_ket(d_r, 0)
        local = [tensor(ancilla, basis_ket(d_p, p)).reshape(-1) for p in range(d_p)]
        rho0_local = tensor(projector(ancilla), maximally_mixed(d_p))
    else:
        ancilla = None
        local = [basis_ket(block.dim, i) for i in range(block.dim)]
        rho0_local = maximally_mixed(block.dim)

    isometry = np.column_stack([t.embed(block, v) for v in local])
    scheme = QuantumScheme(
        n_qubits=n_qubits,
        superop_kind=kind,
        logical_dim=len(local),
        encode_isometry=isometry,
        target_block=block,
        ancilla_state=ancilla,
        claimed_rho0=t.embed_operator(block, rho0_local),
        params={"j": format_spin(block.two_j)},
    )
    logger.info(
        "quantum_scheme_built",
        n_qubits=n_qubits,
        srf=kind.value,
        j=format_spin(block.two_j),
        logical_dim=scheme.logical_dim,
    )
    return scheme


def quantum_decode(scheme: QuantumScheme, rho_received: npt.ArrayLike) -> Matrix:
    rho = np.asarray(rho_received, dtype=np.complex128)
    v = scheme.encode_isometry
    if rho.shape != (v.shape[0], v.shape[0]):
        raise DimensionMismatchError(
            f"Received state of shape {rho.shape}, expected {v.shape[0]}x{v.shape[0]}"
        )
    logical = v.conj().T @ rho @ v
    weight = float(np.real(np.trace(logical)))
    if weight <= settings.TOLERANCE:
        raise DecodeError("Received state has no support on the code")
    return hermitian_part(logical / weight)


def su2_scheme_size(n_qubits: int, two_j_min: int) -> int:
    return ((n_qubits - two_j_min) // 2) * (two_j_min + 1) ** 2


def _check_jmin(n_qubits: int, two_j_min: int) -> None:
    if not 0 <= two_j_min < n_qubits or (n_qubits - two_j_min) % 2:
        raise UsageError(
            f"j_min={format_spin(two_j_min)} "
            f"is not a valid irrep below N/2 for N={n_qubits}"
        )


def su2_classical_scheme(n_qubits: int, j_min: int | float | str) -> ClassicalScheme:
    """
    Fourier-transformed entangled signals over the irreps j_min <= j < N/2.

    d = 2 j_min + 1 and K = N/2 - j_min; K * d**2 signals, all sent by the
    SU(2) twirl to one state.
    """
    two_j_min = parse_spin(j_min)
    _check_jmin(n_qubits, two_j_min)
    if su2_scheme_size(n_qubits, two_j_min) < 2:
        raise UsageError(
            f"j_min={format_spin(two_j_min)} at N={n_qubits} gives K * d**2 = 1 signal state; "
            "a scheme needs at least two"
        )
    t = build_schur_transform(n_qubits)
    d = two_j_min + 1
    blocks = [t.block(tj) for tj in range(two_j_min, n_qubits, 2)]
    count = len(blocks)

    per_irrep: list[list[Ket]] = []
    rho0 = np.zeros((t.dim, t.dim), dtype=np.complex128)
    for blk in blocks:
        signals = []
        for k in range(d):
            for shift in range(d):
                local = np.zeros((blk.d_R, blk.d_P), dtype=np.complex128)
                for s in range(d):
                    local[s, (s + shift) % d] = cmath.exp(2j * math.pi * s * k / d) / math.sqrt(d)
                signals.append(t.embed(blk, local))
        per_irrep.append(signals)
        sigma_p = np.zeros((blk.d_P, blk.d_P), dtype=np.complex128)
        sigma_p[:d, :d] = np.eye(d) / d
        rho0 += t.embed_operator(blk, tensor(maximally_mixed(blk.d_R), sigma_p)) / count

    scheme = ClassicalScheme(
        n_qubits=n_qubits,
        superop_kind=SuperopKind.SU2,
        states=tuple(_fourier_combine(per_irrep)),
        claimed_rho0=rho0,
        construction="su2-classical",
        params={"j_min": format_spin(two_j_min)},
    )
    logger.info("classical_scheme_built", scheme=scheme.scheme_id, size=scheme.size)
    return scheme


def fourier_scheme_size(
    transform: SchurTransform, kind: SuperopKind, irrep_set: Iterable[int | str]
) -> int:
    blocks = _resolve_irreps(transform, irrep_set)
    return len(blocks) * min(irrep_message_count(b, kind) for b in blocks)


def best_irrep_set(n_qubits: int, srf: SuperopKind | str) -> list[int]:
    """Top-k irreps by per-irrep count, k chosen to maximize k * (k-th count)."""
    kind = parse_kind(srf)
    t = build_schur_transform(n_qubits)
    ranked = sorted(t.blocks, key=lambda b: (-irrep_message_count(b, kind), b.two_j))
    best_k, best_size = 1, 0
    for k in range(1, len(ranked) + 1):
        size = k * irrep_message_count(ranked[k - 1], kind)
        if size > best_size:
            best_k, best_size = k, size
    return sorted((b.two_j for b in ranked[:best_k]), reverse=True)


def fourier_classical_scheme(
    n_qubits: int,
    srf: SuperopKind | str,
    irrep_set: Iterable[int | str] | None = None,
    construction: str = "fourier-classical",
) -> ClassicalScheme:
    """
    Equal-count entangled signals in each chosen irrep, Fourier transformed across
    irreps. ``irrep_set`` holds 2j values (or spin strings like "1/2").
    """
    kind = parse_kind(srf)
    if kind == SuperopKind.BLOCK_DEPOLARIZE:
        raise UsageError("Classical schemes are defined for su2, perm or both")
    t = build_schur_transform(n_qubits)
    chosen = best_irrep_set(n_qubits, kind) if irrep_set is None else list(irrep_set)
    blocks = _resolve_irreps(t, chosen)
    width = min(irrep_message_count(b, kind) for b in blocks)
    if len(blocks) * width < 2:
        labels = [format_spin(b.two_j) for b in blocks]
        raise UsageError(
            f"irreps {labels} at N={n_qubits} carry a single {kind.value} signal state; "
            "pick an irrep set with at least two"
        )

    per_irrep: list[list[Ket]] = []
    rho0 = np.zeros((t.dim, t.dim), dtype=np.complex128)
    for blk in blocks:
        signals, image = _irrep_signals(t, blk, kind)
        per_irrep.append(signals[:width])
        rho0 += image / len(blocks)

    scheme = ClassicalScheme(
        n_qubits=n_qubits,
        superop_kind=kind,
        states=tuple(_fourier_combine(per_irrep)),
        claimed_rho0=rho0,
        construction=construction,
        params={"irreps": [format_spin(b.two_j) for b in blocks], "per_irrep": width},
    )
    logger.info("classical_scheme_built", scheme=scheme.scheme_id, size=scheme.size)
    return scheme


def default_perm_irreps(n_qubits: int) -> list[int]:
    """Irreps with d_P >= d_R, where the entangled signals fill the whole block."""
    return [
        label.two_j
        for label in irrep_labels(n_qubits)
        if dim_P(label) >= dim_R(label)
    ]


def perm_classical_scheme(
    n_qubits: int, irrep_set: Iterable[int | str] | None = None
) -> ClassicalScheme:
    chosen = default_perm_irreps(n_qubits) if irrep_set is None else list(irrep_set)
    if not chosen:
        raise UsageError(f"No irrep with d_P >= d_R for N={n_qubits}; pass irrep_set")
    return fourier_classical_scheme(
        n_qubits, SuperopKind.PERM, chosen, construction="perm-classical"
    )


def both_private_classical_scheme(
    n_qubits: int, irrep_set: Iterable[int | str] | None = None
) -> ClassicalScheme:
    """Defaults to the single block maximizing d_R * d_P."""
    if irrep_set is None:
        t = build_schur_transform(n_qubits)
        irrep_set = [_default_quantum_block(t, SuperopKind.BOTH).two_j]
    return fourier_classical_scheme(
        n_qubits, SuperopKind.BOTH, irrep_set, construction="both-classical"
    )


def symmetric_subspace_scheme(n_qubits: int) -> ClassicalScheme:
    """The N+1 m-basis states of the j = N/2 block."""
    t = build_schur_transform(n_qubits)
    top = t.block(n_qubits)
    return ClassicalScheme(
        n_qubits=n_qubits,
        superop_kind=SuperopKind.SU2,
        states=tuple(t.embed(top, basis_ket(top.dim, i)) for i in range(top.dim)),
        claimed_rho0=t.embed_operator(top, maximally_mixed(top.dim)),
        construction="symmetric-subspace",
    )


def product_subsystem_scheme(
    n_qubits: int, srf: SuperopKind | str, j: int | float | str
) -> ClassicalScheme:
    """Signals |k>_A (x) |0>_B on the decohering factor A of one irrep."""
    kind = parse_kind(srf)
    if kind not in (SuperopKind.SU2, SuperopKind.PERM):
        raise UsageError("Product subsystem schemes need su2 or perm")
    t = build_schur_transform(n_qubits)
    blk = t.block(parse_spin(j))
    if kind == SuperopKind.SU2:
        fixed = projector(basis_ket(blk.d_P, 0))
        local = [tensor(basis_ket(blk.d_R, k), basis_ket(blk.d_P, 0)) for k in range(blk.d_R)]
        image = tensor(maximally_mixed(blk.d_R), fixed)
    else:
        fixed = projector(basis_ket(blk.d_R, 0))
        local = [tensor(basis_ket(blk.d_R, 0), basis_ket(blk.d_P, k)) for k in range(blk.d_P)]
        image = tensor(fixed, maximally_mixed(blk.d_P))
    return ClassicalScheme(
        n_qubits=n_qubits,
        superop_kind=kind,
        states=tuple(t.embed(blk, v) for v in local),
        claimed_rho0=t.embed_operator(blk, image),
        construction="product-subsystem",
        params={"j": format_spin(blk.two_j)},
    )


def schur_basis_scheme(n_qubits: int, srf: SuperopKind | str) -> ClassicalScheme:
    """Negative control: the whole Schur basis, which leaks block and m labels."""
    kind = parse_kind(srf)
    t = build_schur_transform(n_qubits)
    return ClassicalScheme(
        n_qubits=n_qubits,
        superop_kind=kind,
        states=tuple(np.array(t.unitary[:, c]) for c in range(t.dim)),
        claimed_rho0=maximally_mixed(t.dim),
        construction="schur-basis",
    )


def sabotaged_quantum_scheme(n_qubits: int, srf: SuperopKind | str) -> QuantumScheme:
    """Negative control: a logical qubit spread over the highest and lowest irreps."""
    kind = parse_kind(srf)
    t = build_schur_transform(n_qubits)
    if len(t.blocks) < 2:
        raise ConstructionError("A sabotaged code needs at least two irreps (N >= 2)")
    top = t.blocks[0]
    isometry = np.column_stack([np.array(t.unitary[:, 0]), np.array(t.unitary[:, t.dim - 1])])
    return QuantumScheme(
        n_qubits=n_qubits,
        superop_kind=kind,
        logical_dim=2,
        encode_isometry=isometry,
        target_block=top,
        ancilla_state=None,
        claimed_rho0=t.embed_operator(top, maximally_mixed(top.dim)),
        construction="sabotaged-quantum",
    )


def classical_bound(n_qubits: int, srf: SuperopKind | str) -> int:
    """sum_j d_A * min(d_A, d_B) with A the decohering factor; 2^N for both."""
    kind = parse_kind(srf)
    if kind == SuperopKind.BOTH:
        return 1 << n_qubits
    total = 0
    for label in irrep_labels(n_qubits):
        d_r, d_p = dim_R(label), dim_P(label)
        d_a, d_b = (d_r, d_p) if kind == SuperopKind.SU2 else (d_p, d_r)
        total += d_a * min(d_a, d_b)
    return total


def quantum_logical_dim(n_qubits: int, srf: SuperopKind | str) -> int:
    kind = parse_kind(srf)
    labels = irrep_labels(n_qubits)
    if kind == SuperopKind.SU2:
        return n_qubits + 1
    if kind == SuperopKind.PERM:
        return max(dim_P(label) for label in labels)
    return max(dim_R(label) * dim_P(label) for label in labels)


def asymptotic_capacity(n_qubits: int, srf: SuperopKind | str) -> tuple[float, float]:
    """Large-N (quantum qubits, classical c-bits) formulas."""
    kind = parse_kind(srf)
    log_n = math.log2(n_qubits)
    if kind == SuperopKind.SU2:
        return log_n, 3 * log_n
    if kind == SuperopKind.PERM:
        return n_qubits - log_n, float(n_qubits)
    return n_qubits - 0.5 * log_n, float(n_qubits)


def best_su2_jmin(n_qubits: int) -> tuple[int, int] | None:
    """(2 j_min, size) maximizing the SU(2) Fourier scheme; None if no j_min exists."""
    best: tuple[int, int] | None = None
    for two_j_min in range(n_qubits % 2, n_qubits, 2):
        size = su2_scheme_size(n_qubits, two_j_min)
        if best is None or size > best[1]:
            best = (two_j_min, size)
    return best


def classical_scheme_sizes(n_qubits: int, srf: SuperopKind | str) -> dict[str, int]:
    """Sizes of every classical construction available for (N, srf)."""
    kind = parse_kind(srf)
    t = build_schur_transform(n_qubits)
    sizes: dict[str, int] = {
        "fourier-classical": fourier_scheme_size(t, kind, best_irrep_set(n_qubits, kind))
    }
    if kind == SuperopKind.SU2:
        sizes["symmetric-subspace"] = n_qubits + 1
        best = best_su2_jmin(n_qubits)
        if best is not None:
            sizes["su2-classical"] = best[1]
        if n_qubits == 2:
            sizes["tetrahedron"] = 4
        if n_qubits == 3:
            sizes["octet"] = 8
    elif kind == SuperopKind.PERM:
        default = default_perm_irreps(n_qubits)
        if default:
            sizes["perm-classical"] = fourier_scheme_size(t, kind, default)
    else:
        top = _default_quantum_block(t, SuperopKind.BOTH)
        sizes["both-classical"] = fourier_scheme_size(t, kind, [top.two_j])
    return {name: size for name, size in sizes.items() if size >= 2}


def capacity_table(n_range: Iterable[int]) -> list[CapacityRow]:
    rows: list[CapacityRow] = []
    for n_qubits in n_range:
        for kind in (SuperopKind.SU2, SuperopKind.PERM, SuperopKind.BOTH):
            sizes = classical_scheme_sizes(n_qubits, kind)
            best_name = max(sizes, key=lambda name: (sizes[name], name)) if sizes else "none"
            best_size = sizes.get(best_name, 1)
            asym_q, asym_c = asymptotic_capacity(n_qubits, kind)
            details: dict[str, str] = {}
            if kind == SuperopKind.SU2:
                best = best_su2_jmin(n_qubits)
                if best is not None:
                    details["su2_best_jmin"] = format_spin(best[0])
                if n_qubits % 2 == 0:
                    details["su2_asymptotic_jmin"] = str(round(n_qubits / 3))
            rows.append(
                CapacityRow(
                    n_qubits=n_qubits,
                    srf_kind=kind,
                    quantum_qubits=math.log2(quantum_logical_dim(n_qubits, kind)),
                    classical_cbits=math.log2(best_size),
                    scheme_sizes=sizes,
                    best_construction=best_name,
                    classical_bound=classical_bound(n_qubits, kind),
                    asymptotic_quantum=asym_q,
                    asymptotic_classical=asym_c,
                    details=details,
                )
            )
    logger.info("capacity_table_built", rows=len(rows))
    return rows
