import itertools

import numpy as np
import pytest

from rftwirl.config import settings
from rftwirl.errors import ResourceLimitError, UsageError
from rftwirl.matcore import basis_ket, is_unitary, projector, random_density, tensor_all
from rftwirl.schurweyl import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Permutation,
    Rotation,
    block_project,
    bratteli_path_count,
    bratteli_paths,
    build_schur_transform,
    collective_rotation,
    dim_P,
    dim_R,
    format_spin,
    from_schur,
    irrep_labels,
    parse_spin,
    permutation_operator,
    schur_header,
    spin_coherent_ket,
    to_schur,
)


def _total_spin(n_qubits: int, pauli: np.ndarray) -> np.ndarray:
    eye = np.eye(2)
    return sum(
        tensor_all([pauli / 2 if k == i else eye for k in range(n_qubits)])
        for i in range(n_qubits)
    )


def test_block_table_for_four_qubits():
    t = build_schur_transform(4)
    assert [(b.two_j, b.d_R, b.d_P, b.offset) for b in t.blocks] == [
        (4, 5, 1, 0),
        (2, 3, 3, 5),
        (0, 1, 2, 14),
    ]


def test_small_block_tables():
    assert [(b.two_j, b.d_R, b.d_P) for b in build_schur_transform(1).blocks] == [(1, 2, 1)]
    assert [(b.two_j, b.d_R, b.d_P) for b in build_schur_transform(3).blocks] == [
        (3, 4, 1),
        (1, 2, 2),
    ]


def test_counting_identities_up_to_twelve_qubits():
    for n in range(1, 13):
        labels = irrep_labels(n)
        assert sum(dim_R(label) * dim_P(label) for label in labels) == 2**n
        for label in labels:
            assert dim_P(label) == bratteli_path_count(n, label.two_j)
            if label.two_j < n:
                assert dim_P(label) >= dim_R(label)


def test_bratteli_paths_are_sorted_and_complete():
    assert bratteli_paths(3, 1) == [(1, 0, 1), (1, 2, 1)]
    assert len(bratteli_paths(6, 2)) == dim_P(irrep_labels(6)[2])


def test_columns_are_total_spin_eigenvectors():
    for n in range(1, 6):
        t = build_schur_transform(n)
        assert is_unitary(t.unitary, 1e-12)
        sx, sy, sz = (_total_spin(n, p) for p in (PAULI_X, PAULI_Y, PAULI_Z))
        casimir = sx @ sx + sy @ sy + sz @ sz
        for blk in t.blocks:
            j = blk.two_j / 2
            for m_index in range(blk.d_R):
                for p_index in range(blk.d_P):
                    col = t.unitary[:, blk.column(m_index, p_index)]
                    assert np.allclose(casimir @ col, j * (j + 1) * col, atol=1e-10)
                    assert np.allclose(sz @ col, (j - m_index) * col, atol=1e-10)


def test_highest_weight_is_all_zeros():
    t = build_schur_transform(4)
    assert abs(t.unitary[0, 0]) == pytest.approx(1.0)


def test_unitary_is_read_only():
    t = build_schur_transform(2)
    with pytest.raises(ValueError):
        t.unitary[0, 0] = 2.0


def test_qubit_cap_is_enforced():
    original = settings.MAX_QUBITS
    settings.MAX_QUBITS = 3
    try:
        with pytest.raises(ResourceLimitError):
            build_schur_transform(4)
    finally:
        settings.MAX_QUBITS = original


def test_spin_parsing():
    assert parse_spin("3/2") == 3
    assert parse_spin(0.5) == 1
    assert parse_spin(2) == 4
    assert format_spin(3) == "3/2"
    assert format_spin(4) == "2"
    for bad in ("x", "1/3", -1):
        with pytest.raises(UsageError):
            parse_spin(bad)


def test_rotations():
    z = (0.0, 0.0, 1.0)
    assert np.allclose(Rotation.from_axis_angle(z, 2 * np.pi).matrix, -np.eye(2))
    half = Rotation.from_axis_angle(z, np.pi / 2)
    assert np.allclose(half.compose(half).matrix, Rotation.from_axis_angle(z, np.pi).matrix)

    euler = Rotation.from_euler_zyz(0.3, 1.1, -0.4)
    assert np.linalg.det(euler.matrix) == pytest.approx(1.0)


def test_spin_coherent_states():
    assert np.allclose(spin_coherent_ket((0, 0, 1)), [1, 0])
    assert np.allclose(np.abs(spin_coherent_ket((0, 0, -1))), [0, 1])
    plus = spin_coherent_ket((1, 0, 0))
    assert np.allclose(plus, np.array([1, 1]) / np.sqrt(2))


def test_permutation_operator_moves_qubits():
    # qubit 0 goes to position 1: |100> -> |010>
    p = Permutation((1, 2, 0))
    op = permutation_operator(p)
    assert np.allclose(op[:, 4], np.eye(8)[:, 2])

    q = Permutation((0, 2, 1))
    assert np.allclose(
        permutation_operator(p.compose(q)), permutation_operator(p) @ permutation_operator(q)
    )
    assert np.allclose(permutation_operator(p.inverse()), op.conj().T)


def test_rotations_and_permutations_commute(rng):
    u = collective_rotation(Rotation.random(rng), 3)
    for images in itertools.permutations(range(3)):
        op = permutation_operator(Permutation(images))
        assert np.allclose(u @ op, op @ u, atol=1e-12)


def test_schur_header_shape():
    header = schur_header(build_schur_transform(3))
    assert header["n_qubits"] == 3
    assert [b["two_j"] for b in header["blocks"]] == [3, 1]
    assert header["path_labels"][1] == [[1, 0, 1], [1, 2, 1]]


SINGLET = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)


def test_schur_change_of_basis_round_trips(rng):
    for n in range(1, 6):
        t = build_schur_transform(n)
        rho = random_density(2**n, rng)
        assert np.max(np.abs(from_schur(to_schur(rho, t), t) - rho)) <= 1e-12


def test_singlet_lands_on_the_singlet_column():
    t = build_schur_transform(2)
    singlet_col = t.block(0).column(0, 0)
    in_schur = to_schur(projector(SINGLET), t)
    expected = np.zeros((4, 4))
    expected[singlet_col, singlet_col] = 1.0
    assert np.max(np.abs(in_schur - expected)) <= 1e-12


def test_block_project_weights():
    t = build_schur_transform(2)
    triplet, singlet = t.block(2), t.block(0)

    def weights(ket):
        rho = to_schur(projector(ket), t)
        return block_project(rho, triplet)[1], block_project(rho, singlet)[1]

    assert weights(basis_ket(4, 0)) == pytest.approx((1.0, 0.0))
    assert weights(SINGLET) == pytest.approx((0.0, 1.0))
    assert weights(basis_ket(4, 1)) == pytest.approx((0.5, 0.5))

    sub, _ = block_project(to_schur(projector(SINGLET), t), singlet)
    assert sub.shape == (1, 1)


def _is_block_diagonal(op, t):
    covered = np.zeros_like(op, dtype=bool)
    for blk in t.blocks:
        covered[blk.columns, blk.columns] = True
    return np.max(np.abs(op[~covered]), initial=0.0) <= 1e-10


def test_rotations_act_as_d_r_tensor_identity(rng):
    for n in range(1, 7):
        t = build_schur_transform(n)
        for _ in range(100):
            rotated = to_schur(collective_rotation(Rotation.random(rng), n), t)
            assert _is_block_diagonal(rotated, t)
            for blk in t.blocks:
                sub = rotated[blk.columns, blk.columns]
                d_r_part = sub[:: blk.d_P, :: blk.d_P]
                assert np.max(np.abs(sub - np.kron(d_r_part, np.eye(blk.d_P)))) <= 1e-10


def test_permutations_act_on_multiplicity_factor_only():
    for n in range(2, 6):
        t = build_schur_transform(n)
        for images in itertools.permutations(range(n)):
            permuted = to_schur(permutation_operator(Permutation(images)), t)
            assert _is_block_diagonal(permuted, t)
            for blk in t.blocks:
                sub = permuted[blk.columns, blk.columns]
                p_part = sub[: blk.d_P, : blk.d_P]
                assert np.max(np.abs(sub - np.kron(np.eye(blk.d_R), p_part))) <= 1e-10
