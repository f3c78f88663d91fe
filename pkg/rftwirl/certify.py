"""
Numerical certificates for private schemes.

Privacy is accepted only when two independent zero-tests agree: the largest
trace distance between twirl images and the Holevo quantity of the uniform
image ensemble.
"""

import itertools
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
import numpy.typing as npt
import structlog

from rftwirl.config import settings
from rftwirl.core.metrics import CERTIFICATION_SECONDS, CERTIFICATIONS
from rftwirl.errors import DimensionMismatchError, InvalidStateError
from rftwirl.matcore import (
    Matrix,
    basis_ket,
    gram_orthonormality,
    maximally_mixed,
    projector,
    pure_fidelity,
    random_density,
    random_pure_state,
    tensor,
    trace_distance,
    von_neumann_entropy,
)
from rftwirl.schemes import (
    ClassicalScheme,
    QuantumScheme,
    classical_bound,
    quantum_decode,
    quantum_logical_dim,
)
from rftwirl.schurweyl import IrrepBlock, format_spin
from rftwirl.twirl import Side, Superop, SuperopKind, d_full_side

logger = structlog.get_logger("rftwirl.certify")


@dataclass(frozen=True)
class CertReport:
    scheme_id: str
    kind: str
    srf: str
    n_states: int
    orthogonality_defect: float
    privacy_defect: float
    privacy_metric: str
    rho0_residual: float
    holevo_bits: float
    bound_used: int
    passed: bool
    tolerance: float
    holevo_tolerance: float
    min_fidelity: float | None = None

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class DfullCheck:
    two_j: int
    srf: str
    side: str
    passed: bool
    defect: float
    n_checked: int


def holevo(ensemble: Sequence[tuple[float, npt.ArrayLike]], tol: float | None = None) -> float:
    """S(sum p_i rho_i) - sum p_i S(rho_i) in bits."""
    eps = settings.HOLEVO_TOLERANCE if tol is None else tol
    if not ensemble:
        raise InvalidStateError("Holevo quantity of an empty ensemble")
    probs = [float(p) for p, _ in ensemble]
    if any(p < 0 for p in probs) or abs(sum(probs) - 1.0) > eps:
        raise InvalidStateError(f"Ensemble probabilities must sum to 1, got {sum(probs)!r}")
    states = [np.asarray(rho, dtype=np.complex128) for _, rho in ensemble]
    average = sum(p * rho for p, rho in zip(probs, states))
    value = von_neumann_entropy(average, eps) - sum(
        p * von_neumann_entropy(rho, eps) for p, rho in zip(probs, states)
    )
    return max(0.0, float(value))


def helstrom_guess(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """Optimal success probability for two equiprobable states."""
    return 0.5 + 0.5 * trace_distance(a, b)


def _privacy_defect(images: Sequence[Matrix]) -> tuple[float, str]:
    if len(images) <= settings.PAIRWISE_LIMIT:
        worst = max(
            (trace_distance(a, b) for a, b in itertools.combinations(images, 2)), default=0.0
        )
        return worst, "pairwise"
    # triangle inequality through the centroid bounds every pair
    centroid = sum(images) / len(images)
    return min(1.0, 2.0 * max(trace_distance(img, centroid) for img in images)), "centroid"


def _record(kind: str, passed: bool) -> None:
    CERTIFICATIONS.labels(kind=kind, result="pass" if passed else "fail").inc()


def scheme_bound(scheme: ClassicalScheme) -> int:
    return classical_bound(scheme.n_qubits, scheme.superop_kind)


def certify_classical(scheme: ClassicalScheme, tol: float | None = None) -> CertReport:
    eps = settings.CERT_TOLERANCE if tol is None else tol
    holevo_eps = settings.HOLEVO_TOLERANCE
    with CERTIFICATION_SECONDS.time():
        superop = Superop.build(scheme.superop_kind, scheme.n_qubits)
        orthogonality = gram_orthonormality(scheme.states)
        images = [superop.apply(rho) for rho in scheme.density_matrices()]
        privacy, metric = _privacy_defect(images)
        residual = max(trace_distance(img, scheme.claimed_rho0) for img in images)
        weight = 1.0 / len(images)
        chi = holevo([(weight, img) for img in images], holevo_eps)
        bound = scheme_bound(scheme)
        passed = (
            orthogonality <= eps
            and privacy <= eps
            and residual <= eps
            and chi <= holevo_eps
            and scheme.size <= bound
        )

    report = CertReport(
        scheme_id=scheme.scheme_id,
        kind="classical",
        srf=scheme.superop_kind.value,
        n_states=scheme.size,
        orthogonality_defect=orthogonality,
        privacy_defect=privacy,
        privacy_metric=metric,
        rho0_residual=residual,
        holevo_bits=chi,
        bound_used=bound,
        passed=passed,
        tolerance=eps,
        holevo_tolerance=holevo_eps,
    )
    _record("classical", passed)
    logger.info(
        "certification_finished",
        scheme=scheme.scheme_id,
        passed=passed,
        privacy_defect=privacy,
        holevo_bits=chi,
    )
    return report


def _dfull_side(superop: Superop) -> Side | None:
    if superop.kind == SuperopKind.BLOCK_DEPOLARIZE:
        return superop.side
    return d_full_side(superop.kind)


def certify_dfull(
    block: IrrepBlock,
    superop: Superop,
    n_random: int | None = None,
    seed: int | None = None,
    tol: float | None = None,
) -> DfullCheck:
    """
    Check that ``superop`` sends rho_R (x) rho_P on ``block`` to the product with
    its D-full factor replaced by the maximally mixed state and the other
    factor untouched.
    """
    eps = settings.CERT_TOLERANCE if tol is None else tol
    count = settings.CERT_N_RANDOM if n_random is None else int(n_random)
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    transform = superop.transform
    if block not in transform.blocks:
        raise DimensionMismatchError(
            f"Block j={format_spin(block.two_j)} is not part of the N={transform.n_qubits} transform"
        )
    d_r, d_p = block.d_R, block.d_P
    side = _dfull_side(superop)

    def expected(rho_r: Matrix, rho_p: Matrix) -> Matrix:
        if side == Side.R:
            return tensor(maximally_mixed(d_r), rho_p)
        if side == Side.P:
            return tensor(rho_r, maximally_mixed(d_p))
        return maximally_mixed(block.dim)

    inputs: list[tuple[Matrix, Matrix]] = [
        (projector(basis_ket(d_r, a)), projector(basis_ket(d_p, b)))
        for a in range(d_r)
        for b in range(d_p)
    ]
    inputs += [(random_density(d_r, rng), random_density(d_p, rng)) for _ in range(count)]

    local_only = superop.kind == SuperopKind.BLOCK_DEPOLARIZE
    defect = 0.0
    for rho_r, rho_p in inputs:
        local = tensor(rho_r, rho_p)
        want = expected(rho_r, rho_p)
        if local_only:
            got = superop.apply(local)
        else:
            got = superop.apply(transform.embed_operator(block, local))
            want = transform.embed_operator(block, want)
        defect = max(defect, trace_distance(got, want))

    passed = defect <= eps
    _record("dfull", passed)
    logger.debug(
        "dfull_checked", two_j=block.two_j, srf=superop.kind.value, defect=defect, passed=passed
    )
    return DfullCheck(
        two_j=block.two_j,
        srf=superop.kind.value,
        side="block" if side is None else side.value,
        passed=passed,
        defect=defect,
        n_checked=len(inputs),
    )


def certify_quantum(
    scheme: QuantumScheme,
    n_random: int | None = None,
    seed: int | None = None,
    tol: float | None = None,
) -> CertReport:
    eps = settings.CERT_TOLERANCE if tol is None else tol
    holevo_eps = settings.HOLEVO_TOLERANCE
    count = settings.CERT_N_RANDOM if n_random is None else int(n_random)
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)

    with CERTIFICATION_SECONDS.time():
        superop = Superop.build(scheme.superop_kind, scheme.n_qubits)
        v = scheme.encode_isometry
        isometry_defect = float(np.max(np.abs(v.conj().T @ v - np.eye(scheme.logical_dim))))

        logical = [basis_ket(scheme.logical_dim, k) for k in range(scheme.logical_dim)]
        logical += [random_pure_state(scheme.logical_dim, rng) for _ in range(count)]
        images: list[Matrix] = []
        min_fidelity = 1.0
        for psi in logical:
            encoded = scheme.encode(projector(psi))
            min_fidelity = min(min_fidelity, pure_fidelity(psi, quantum_decode(scheme, encoded)))
            images.append(superop.apply(encoded))

        privacy, metric = _privacy_defect(images)
        residual = max(trace_distance(img, scheme.claimed_rho0) for img in images)
        chi = holevo([(1.0 / len(images), img) for img in images], holevo_eps)
        bound = quantum_logical_dim(scheme.n_qubits, scheme.superop_kind)
        passed = (
            isometry_defect <= eps
            and min_fidelity >= 1.0 - eps
            and privacy <= eps
            and residual <= eps
            and chi <= holevo_eps
            and scheme.logical_dim <= bound
        )

    report = CertReport(
        scheme_id=scheme.scheme_id,
        kind="quantum",
        srf=scheme.superop_kind.value,
        n_states=len(logical),
        orthogonality_defect=isometry_defect,
        privacy_defect=privacy,
        privacy_metric=metric,
        rho0_residual=residual,
        holevo_bits=chi,
        bound_used=bound,
        passed=passed,
        tolerance=eps,
        holevo_tolerance=holevo_eps,
        min_fidelity=min_fidelity,
    )
    _record("quantum", passed)
    logger.info(
        "certification_finished",
        scheme=scheme.scheme_id,
        passed=passed,
        privacy_defect=privacy,
        min_fidelity=min_fidelity,
    )
    return report


def certify_scheme(
    scheme: ClassicalScheme | QuantumScheme,
    n_random: int | None = None,
    seed: int | None = None,
    tol: float | None = None,
) -> CertReport:
    if isinstance(scheme, QuantumScheme):
        return certify_quantum(scheme, n_random=n_random, seed=seed, tol=tol)
    return certify_classical(scheme, tol=tol)
