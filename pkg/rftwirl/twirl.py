"""
Group-averaging superoperators.

The exact twirls act block by block in the Schur basis:

- SU(2): block j -> (I_R / d_R) (x) Tr_R(block)
- S_N:   block j -> Tr_P(block) (x) (I_P / d_P)
- both:  block j -> p_j I / (d_R d_P)

with every off-diagonal block removed. ``twirl_su2_sampled`` and
``twirl_perm_enumerated`` evaluate the defining averages literally and serve
as independent oracles.
"""

import itertools
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt
import structlog

from rftwirl.config import settings
from rftwirl.core.metrics import TWIRL_APPLICATIONS
from rftwirl.errors import DimensionMismatchError, ResourceLimitError, UsageError
from rftwirl.matcore import (
    Matrix,
    hermitian_part,
    maximally_mixed,
    n_qubits_for_dim,
    partial_trace,
    tensor,
)
from rftwirl.schurweyl import (
    IrrepBlock,
    Permutation,
    Rotation,
    SchurTransform,
    build_schur_transform,
    collective_rotation,
    from_schur,
    permutation_operator,
    quaternion_matrix,
    random_quaternions,
    to_schur,
)

logger = structlog.get_logger("rftwirl.twirl")


class SuperopKind(str, Enum):
    SU2 = "su2"
    PERM = "perm"
    BOTH = "both"
    BLOCK_DEPOLARIZE = "block"


class Side(str, Enum):
    R = "R"
    P = "P"


_KIND_ALIASES = {
    "su2": SuperopKind.SU2,
    "perm": SuperopKind.PERM,
    "sn": SuperopKind.PERM,
    "both": SuperopKind.BOTH,
    "block": SuperopKind.BLOCK_DEPOLARIZE,
}


def parse_kind(value: str | SuperopKind) -> SuperopKind:
    if isinstance(value, SuperopKind):
        return value
    kind = _KIND_ALIASES.get(str(value).strip().lower())
    if kind is None:
        raise UsageError(f"Unknown superoperator kind {value!r} (use su2, perm or both)")
    return kind


def d_full_side(kind: SuperopKind) -> Side | None:
    """Factor that the twirl fully depolarizes; None when both are."""
    if kind == SuperopKind.SU2:
        return Side.R
    if kind == SuperopKind.PERM:
        return Side.P
    return None


def depolarize_block(rho_block: npt.ArrayLike, dims: tuple[int, int], side: Side | str) -> Matrix:
    """Replace one factor of a d_R*d_P block by its maximally mixed state."""
    block = np.asarray(rho_block, dtype=np.complex128)
    d_r, d_p = int(dims[0]), int(dims[1])
    if block.shape != (d_r * d_p, d_r * d_p):
        raise DimensionMismatchError(
            f"Block of shape {block.shape} does not match factors {d_r}x{d_p}"
        )
    if Side(side) == Side.R:
        return tensor(maximally_mixed(d_r), partial_trace(block, (d_r, d_p), keep=[1]))
    return tensor(partial_trace(block, (d_r, d_p), keep=[0]), maximally_mixed(d_p))


def _resolve(rho: npt.ArrayLike, transform: SchurTransform | None) -> tuple[Matrix, SchurTransform]:
    mat = np.asarray(rho, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f"Twirl input must be square, got {mat.shape}")
    n_qubits = n_qubits_for_dim(mat.shape[0])
    if transform is None:
        transform = build_schur_transform(n_qubits)
    elif transform.n_qubits != n_qubits:
        raise DimensionMismatchError(
            f"Operator on {n_qubits} qubits, transform built for {transform.n_qubits}"
        )
    return mat, transform


def _blockwise(
    rho: npt.ArrayLike,
    transform: SchurTransform | None,
    block_map: Callable[[Matrix, IrrepBlock], Matrix],
) -> Matrix:
    mat, t = _resolve(rho, transform)
    schur = to_schur(mat, t)
    out = np.zeros_like(schur)
    for blk in t.blocks:
        cols = blk.columns
        out[cols, cols] = block_map(schur[cols, cols], blk)
    return from_schur(out, t)


def twirl_su2_exact(rho: npt.ArrayLike, transform: SchurTransform | None = None) -> Matrix:
    TWIRL_APPLICATIONS.labels(kind="su2").inc()
    return _blockwise(
        rho, transform, lambda sub, blk: depolarize_block(sub, (blk.d_R, blk.d_P), Side.R)
    )


def twirl_perm_exact(rho: npt.ArrayLike, transform: SchurTransform | None = None) -> Matrix:
    TWIRL_APPLICATIONS.labels(kind="perm").inc()
    return _blockwise(
        rho, transform, lambda sub, blk: depolarize_block(sub, (blk.d_R, blk.d_P), Side.P)
    )


def twirl_both_exact(rho: npt.ArrayLike, transform: SchurTransform | None = None) -> Matrix:
    TWIRL_APPLICATIONS.labels(kind="both").inc()
    return _blockwise(
        rho, transform, lambda sub, blk: np.trace(sub) * maximally_mixed(blk.dim)
    )


def twirl_exact(
    rho: npt.ArrayLike, kind: SuperopKind | str, transform: SchurTransform | None = None
) -> Matrix:
    resolved = parse_kind(kind)
    if resolved == SuperopKind.SU2:
        return twirl_su2_exact(rho, transform)
    if resolved == SuperopKind.PERM:
        return twirl_perm_exact(rho, transform)
    if resolved == SuperopKind.BOTH:
        return twirl_both_exact(rho, transform)
    raise UsageError("Block depolarizers act on a single block; use Superop.apply")


def twirl_su2_sampled(rho: npt.ArrayLike, n_samples: int, seed: int) -> Matrix:
    """Monte-Carlo average of R^{(x)N} rho R^{(x)N}+ over invariant rotations."""
    if n_samples < 1:
        raise UsageError(f"n_samples must be >= 1, got {n_samples}")
    mat = np.asarray(rho, dtype=np.complex128)
    n_qubits = n_qubits_for_dim(mat.shape[0])
    rng = np.random.default_rng(seed)
    acc = np.zeros_like(mat)
    for w, x, y, z in random_quaternions(rng, n_samples):
        u = collective_rotation(Rotation(quaternion_matrix(w, x, y, z)), n_qubits)
        acc += u @ mat @ u.conj().T
    TWIRL_APPLICATIONS.labels(kind="su2_sampled").inc()
    logger.debug("sampled_twirl_done", n_qubits=n_qubits, n_samples=n_samples, seed=seed)
    return hermitian_part(acc / n_samples)


def permutation_source_indices(p: Permutation) -> npt.NDArray[np.intp]:
    """Row a of P(p) has its single 1 in column src[a]."""
    return np.asarray(np.argmax(np.abs(permutation_operator(p)), axis=1), dtype=np.intp)


def apply_permutation(rho: Matrix, p: Permutation) -> Matrix:
    src = permutation_source_indices(p)
    return np.asarray(rho[np.ix_(src, src)], dtype=np.complex128)


def twirl_perm_enumerated(rho: npt.ArrayLike) -> Matrix:
    """Literal (1/N!) sum over S_N of P(p) rho P(p)+."""
    mat = np.asarray(rho, dtype=np.complex128)
    n_qubits = n_qubits_for_dim(mat.shape[0])
    if n_qubits > settings.ENUMERATION_MAX_N:
        raise ResourceLimitError(
            f"Enumerating S_{n_qubits} exceeds the cap N <= {settings.ENUMERATION_MAX_N}"
        )
    acc = np.zeros_like(mat)
    count = 0
    for images in itertools.permutations(range(n_qubits)):
        acc += apply_permutation(mat, Permutation(images))
        count += 1
    TWIRL_APPLICATIONS.labels(kind="perm_enumerated").inc()
    return np.asarray(acc / count, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Superop:
    kind: SuperopKind
    n_qubits: int
    transform: SchurTransform
    block: IrrepBlock | None = None
    side: Side | None = None

    def __post_init__(self) -> None:
        if self.transform.n_qubits != self.n_qubits:
            raise DimensionMismatchError(
                f"Superop on {self.n_qubits} qubits with a transform for "
                f"{self.transform.n_qubits}"
            )
        if self.kind == SuperopKind.BLOCK_DEPOLARIZE and (self.block is None or self.side is None):
            raise UsageError("A block depolarizer needs both a block and a side")

    @classmethod
    def build(
        cls,
        kind: SuperopKind | str,
        n_qubits: int,
        block: IrrepBlock | None = None,
        side: Side | str | None = None,
    ) -> "Superop":
        return cls(
            kind=parse_kind(kind),
            n_qubits=n_qubits,
            transform=build_schur_transform(n_qubits),
            block=block,
            side=None if side is None else Side(side),
        )

    def apply(self, rho: npt.ArrayLike) -> Matrix:
        if self.kind == SuperopKind.BLOCK_DEPOLARIZE:
            assert self.block is not None and self.side is not None
            TWIRL_APPLICATIONS.labels(kind="block").inc()
            return depolarize_block(rho, (self.block.d_R, self.block.d_P), self.side)
        return twirl_exact(rho, self.kind, self.transform)

    def descriptor(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value, "n": self.n_qubits}
        if self.kind == SuperopKind.BLOCK_DEPOLARIZE:
            assert self.block is not None and self.side is not None
            out["two_j"] = self.block.two_j
            out["side"] = self.side.value
        return out

    @classmethod
    def from_descriptor(cls, payload: dict[str, Any]) -> "Superop":
        try:
            kind = parse_kind(payload["kind"])
            n_qubits = int(payload["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"Malformed superoperator descriptor: {exc}") from exc
        if kind == SuperopKind.BLOCK_DEPOLARIZE:
            transform = build_schur_transform(n_qubits)
            return cls(
                kind=kind,
                n_qubits=n_qubits,
                transform=transform,
                block=transform.block(int(payload.get("two_j", -1))),
                side=Side(payload.get("side", "R")),
            )
        return cls.build(kind, n_qubits)
