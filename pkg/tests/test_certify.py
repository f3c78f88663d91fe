import math

import numpy as np
import pytest

from rftwirl.certify import (
    certify_classical,
    certify_dfull,
    certify_quantum,
    certify_scheme,
    helstrom_guess,
    holevo,
)
from rftwirl.config import settings
from rftwirl.errors import DimensionMismatchError, InvalidStateError
from rftwirl.matcore import basis_ket, maximally_mixed, projector
from rftwirl.schemes import (
    ClassicalScheme,
    fourier_classical_scheme,
    perm_classical_scheme,
    quantum_scheme,
    sabotaged_quantum_scheme,
    schur_basis_scheme,
    su2_classical_scheme,
    symmetric_subspace_scheme,
    tetrahedron_states,
    three_qubit_octet,
)
from rftwirl.schurweyl import build_schur_transform
from rftwirl.twirl import Superop, SuperopKind


def test_holevo_values():
    zero = projector(basis_ket(2, 0))
    one = projector(basis_ket(2, 1))
    assert holevo([(0.5, zero), (0.5, one)]) == pytest.approx(1.0)
    assert holevo([(0.5, zero), (0.5, zero)]) == pytest.approx(0.0, abs=1e-12)
    assert holevo([(1.0, maximally_mixed(4))]) == pytest.approx(0.0, abs=1e-12)

    with pytest.raises(InvalidStateError):
        holevo([(0.7, zero), (0.7, one)])
    with pytest.raises(InvalidStateError):
        holevo([])


def test_helstrom_guess():
    zero = projector(basis_ket(2, 0))
    plus = projector(np.array([1, 1], dtype=np.complex128) / math.sqrt(2))
    assert helstrom_guess(zero, zero) == pytest.approx(0.5)
    assert helstrom_guess(zero, projector(basis_ket(2, 1))) == pytest.approx(1.0)
    assert helstrom_guess(zero, plus) == pytest.approx(0.5 + 0.5 / math.sqrt(2))


def test_worked_examples_certify():
    tetra = certify_classical(tetrahedron_states())
    assert tetra.passed
    assert tetra.n_states == 4 and tetra.bound_used == 4
    assert tetra.privacy_metric == "pairwise"

    octet = certify_classical(three_qubit_octet())
    assert octet.passed and octet.bound_used == 8


@pytest.mark.parametrize(
    "build",
    [
        lambda: su2_classical_scheme(6, 2),
        lambda: su2_classical_scheme(5, "1/2"),
        lambda: perm_classical_scheme(4),
        lambda: fourier_classical_scheme(4, "perm"),
        lambda: fourier_classical_scheme(3, "both"),
        lambda: symmetric_subspace_scheme(3),
    ],
)
def test_constructions_certify(build):
    report = certify_classical(build())
    assert report.passed, report.as_dict()
    assert report.holevo_bits <= settings.HOLEVO_TOLERANCE


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("srf", ["su2", "perm", "both"])
def test_schur_basis_control_fails(n, srf):
    report = certify_classical(schur_basis_scheme(n, srf))
    assert not report.passed
    assert report.privacy_defect > 0.1
    assert report.holevo_bits > 0.1


def test_schur_basis_on_one_qubit_is_private_for_su2():
    report = certify_classical(schur_basis_scheme(1, "su2"))
    assert report.passed


def test_size_above_bound_fails():
    base = tetrahedron_states()
    # the S_N bound for two qubits is 2
    relabelled = ClassicalScheme(
        n_qubits=2,
        superop_kind=SuperopKind.PERM,
        states=base.states,
        claimed_rho0=base.claimed_rho0,
        construction="tetrahedron",
    )
    report = certify_classical(relabelled)
    assert report.bound_used == 2
    assert not report.passed


def test_centroid_metric_for_large_schemes():
    original = settings.PAIRWISE_LIMIT
    settings.PAIRWISE_LIMIT = 2
    try:
        report = certify_classical(tetrahedron_states())
    finally:
        settings.PAIRWISE_LIMIT = original
    assert report.privacy_metric == "centroid"
    assert report.passed


@pytest.mark.parametrize("n,srf", [(2, "su2"), (3, "su2"), (4, "perm"), (3, "both"), (4, "both")])
def test_quantum_schemes_certify(n, srf):
    report = certify_quantum(quantum_scheme(n, srf), n_random=16, seed=5)
    assert report.passed, report.as_dict()
    assert report.min_fidelity == pytest.approx(1.0)
    assert report.n_states == quantum_scheme(n, srf).logical_dim + 16


@pytest.mark.parametrize("srf", ["su2", "perm", "both"])
def test_sabotaged_quantum_scheme_fails(srf):
    report = certify_scheme(sabotaged_quantum_scheme(3, srf), n_random=8, seed=1)
    assert report.kind == "quantum"
    assert not report.passed
    assert report.min_fidelity == pytest.approx(1.0)


def test_dfull_checks_on_every_block():
    for n in (2, 3, 4):
        t = build_schur_transform(n)
        for kind in ("su2", "perm", "both"):
            superop = Superop.build(kind, n)
            for blk in t.blocks:
                check = certify_dfull(blk, superop, n_random=4, seed=11)
                assert check.passed, (n, kind, blk.two_j, check.defect)
                assert check.n_checked == blk.dim + 4


def test_dfull_block_depolarizer_sides():
    t = build_schur_transform(3)
    blk = t.block(1)
    for side in ("R", "P"):
        check = certify_dfull(blk, Superop.build("block", 3, block=blk, side=side), n_random=3)
        assert check.passed and check.side == side


def test_dfull_rejects_foreign_block():
    foreign = build_schur_transform(4).block(2)
    with pytest.raises(DimensionMismatchError):
        certify_dfull(foreign, Superop.build("su2", 3))
