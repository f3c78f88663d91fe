import itertools

import numpy as np
import pytest

from rftwirl.config import settings
from rftwirl.errors import DimensionMismatchError, ResourceLimitError, UsageError
from rftwirl.matcore import (
    maximally_mixed,
    partial_trace,
    projector,
    random_density,
    tensor,
    trace_distance,
)
from rftwirl.schurweyl import (
    Permutation,
    Rotation,
    block_projector,
    build_schur_transform,
    collective_rotation,
    permutation_operator,
    to_schur,
)
from rftwirl.twirl import (
    Side,
    Superop,
    SuperopKind,
    depolarize_block,
    parse_kind,
    twirl_both_exact,
    twirl_exact,
    twirl_perm_enumerated,
    twirl_perm_exact,
    twirl_su2_exact,
    twirl_su2_sampled,
)

SINGLET = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)


def test_single_qubit_twirl_is_completely_depolarizing(rng):
    for _ in range(20):
        out = twirl_su2_exact(random_density(2, rng))
        assert np.max(np.abs(out - maximally_mixed(2))) <= 1e-12


def test_two_qubit_twirl_gives_werner_states(rng):
    pi0 = projector(SINGLET)
    pi1 = np.eye(4) - pi0
    for _ in range(20):
        rho = random_density(4, rng)
        p0 = float(np.real(np.trace(pi0 @ rho)))
        expected = (1 - p0) * pi1 / 3 + p0 * pi0
        assert np.max(np.abs(twirl_su2_exact(rho) - expected)) <= 1e-10


def test_su2_twirl_output_is_rotation_invariant(rng):
    rho = random_density(8, rng)
    out = twirl_su2_exact(rho)
    assert np.trace(out).real == pytest.approx(1.0)
    for _ in range(5):
        u = collective_rotation(Rotation.random(rng), 3)
        assert np.max(np.abs(u @ out @ u.conj().T - out)) <= 1e-10
    assert np.max(np.abs(twirl_su2_exact(out) - out)) <= 1e-10


def test_three_qubit_twirl_keeps_multiplicity_part(rng):
    t = build_schur_transform(3)
    low = t.block(1)
    local = tensor(random_density(2, rng), random_density(2, rng))
    out = twirl_su2_exact(t.embed_operator(low, local))
    sub = (t.unitary.conj().T @ out @ t.unitary)[low.columns, low.columns]
    expected = tensor(maximally_mixed(2), partial_trace(local, (2, 2), keep=[1]))
    assert np.max(np.abs(sub - expected)) <= 1e-10


def test_perm_twirl_matches_enumeration(rng):
    for n in range(1, 6):
        rho = random_density(2**n, rng)
        assert np.max(np.abs(twirl_perm_exact(rho) - twirl_perm_enumerated(rho))) <= 1e-10


def test_sampled_twirl_converges_to_exact(rng):
    for n in (1, 2, 3):
        rho = random_density(2**n, rng)
        sampled = twirl_su2_sampled(rho, 10000, seed=7 + n)
        assert trace_distance(twirl_su2_exact(rho), sampled) <= 5e-2


def test_sampled_twirl_is_deterministic(rng):
    rho = random_density(4, rng)
    first = twirl_su2_sampled(rho, 50, seed=3)
    second = twirl_su2_sampled(rho, 50, seed=3)
    assert first.tobytes() == second.tobytes()


def test_both_twirl_is_composition(rng):
    rho = random_density(8, rng)
    composed = twirl_su2_exact(twirl_perm_exact(rho))
    assert np.max(np.abs(twirl_both_exact(rho) - composed)) <= 1e-10
    assert np.max(np.abs(twirl_exact(rho, "both") - composed)) <= 1e-10


def test_depolarize_block_sides(rng):
    a = random_density(3, rng)
    b = random_density(2, rng)
    local = tensor(a, b)
    assert np.allclose(depolarize_block(local, (3, 2), Side.R), tensor(maximally_mixed(3), b))
    assert np.allclose(depolarize_block(local, (3, 2), "P"), tensor(a, maximally_mixed(2)))
    with pytest.raises(DimensionMismatchError):
        depolarize_block(local, (2, 2), Side.R)


def test_enumeration_cap():
    original = settings.ENUMERATION_MAX_N
    settings.ENUMERATION_MAX_N = 2
    try:
        with pytest.raises(ResourceLimitError):
            twirl_perm_enumerated(np.eye(8) / 8)
    finally:
        settings.ENUMERATION_MAX_N = original


def test_kind_parsing_and_input_checks():
    assert parse_kind("sn") == SuperopKind.PERM
    assert parse_kind("SU2") == SuperopKind.SU2
    with pytest.raises(UsageError):
        parse_kind("u1")
    with pytest.raises(DimensionMismatchError):
        twirl_su2_exact(np.eye(6) / 6)
    with pytest.raises(DimensionMismatchError):
        twirl_su2_exact(np.eye(4) / 4, build_schur_transform(3))


def test_superop_descriptor_roundtrip(rng):
    op = Superop.build("perm", 3)
    again = Superop.from_descriptor(op.descriptor())
    assert again.kind == SuperopKind.PERM and again.n_qubits == 3

    t = build_schur_transform(3)
    block_op = Superop.build("block", 3, block=t.block(1), side="P")
    restored = Superop.from_descriptor(block_op.descriptor())
    assert restored.block == t.block(1) and restored.side == Side.P

    local = tensor(random_density(2, rng), random_density(2, rng))
    assert np.allclose(restored.apply(local), depolarize_block(local, (2, 2), Side.P))

    with pytest.raises(UsageError):
        Superop.build("block", 3)
    with pytest.raises(UsageError):
        Superop.from_descriptor({"kind": "su2"})


def test_three_qubit_twirl_matches_block_decomposition(rng):
    t = build_schur_transform(3)
    high, low = t.block(3), t.block(1)
    pi_high = block_projector(t, high)
    for _ in range(20):
        rho = random_density(8, rng)
        p_high = float(np.real(np.trace(pi_high @ rho)))
        low_local = to_schur(rho, t)[low.columns, low.columns]
        expected = p_high * pi_high / 4 + t.embed_operator(
            low, tensor(maximally_mixed(2), partial_trace(low_local, (2, 2), keep=[1]))
        )
        assert np.max(np.abs(twirl_su2_exact(rho) - expected)) <= 1e-10


def test_perm_twirl_is_permutation_covariant(rng):
    for n in (2, 3, 4):
        rho = random_density(2**n, rng)
        out = twirl_perm_exact(rho)
        for images in itertools.permutations(range(n)):
            op = permutation_operator(Permutation(images))
            assert np.max(np.abs(twirl_perm_exact(op @ rho @ op.conj().T) - out)) <= 1e-10
            assert np.max(np.abs(op @ out @ op.conj().T - out)) <= 1e-10


@pytest.mark.parametrize("kind", ["su2", "perm", "both"])
def test_exact_twirls_are_idempotent(rng, kind):
    for n in (1, 2, 3, 4):
        once = twirl_exact(random_density(2**n, rng), kind)
        assert np.max(np.abs(twirl_exact(once, kind) - once)) <= 1e-12
