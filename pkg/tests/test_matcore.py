import math

import numpy as np
import pytest

from rftwirl.errors import DimensionMismatchError, InvalidStateError
from rftwirl.matcore import (
    as_density,
    as_ket,
    basis_ket,
    gram_orthonormality,
    maximally_mixed,
    n_qubits_for_dim,
    partial_trace,
    projector,
    random_density,
    random_pure_state,
    tensor,
    tensor_all,
    trace_distance,
    von_neumann_entropy,
)


def test_partial_trace_of_product_keeps_requested_factors(rng):
    a = random_density(2, rng)
    b = random_density(3, rng)
    c = random_density(2, rng)
    rho = tensor_all([a, b, c])

    assert np.allclose(partial_trace(rho, (2, 3, 2), keep=[0]), a, atol=1e-12)
    assert np.allclose(partial_trace(rho, (2, 3, 2), keep=[1]), b, atol=1e-12)
    assert np.allclose(partial_trace(rho, (2, 3, 2), keep=[2, 0]), tensor(c, a), atol=1e-12)


def test_partial_trace_accepts_unnormalized_blocks(rng):
    a = random_density(3, rng) * 0.25
    b = random_density(2, rng)
    assert np.allclose(partial_trace(tensor(a, b), (3, 2), keep=[0]), a, atol=1e-12)


def test_partial_trace_rejects_bad_shapes():
    with pytest.raises(DimensionMismatchError):
        partial_trace(np.eye(4), (2, 3), keep=[0])
    with pytest.raises(DimensionMismatchError):
        partial_trace(np.eye(4), (2, 2), keep=[0, 0])


def test_trace_distance_extremes():
    zero = projector(basis_ket(2, 0))
    one = projector(basis_ket(2, 1))
    assert trace_distance(zero, one) == pytest.approx(1.0)
    assert trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-15)
    assert trace_distance(zero, maximally_mixed(2)) == pytest.approx(0.5)

    with pytest.raises(DimensionMismatchError):
        trace_distance(zero, maximally_mixed(4))


def test_von_neumann_entropy_values():
    assert von_neumann_entropy(maximally_mixed(4)) == pytest.approx(2.0)
    assert von_neumann_entropy(projector(basis_ket(3, 1))) == pytest.approx(0.0, abs=1e-12)

    with pytest.raises(InvalidStateError):
        von_neumann_entropy(np.diag([1.5, -0.5]))


def test_state_validation():
    as_ket([1 / math.sqrt(2), 1j / math.sqrt(2)])
    with pytest.raises(InvalidStateError):
        as_ket([1.0, 1.0])
    with pytest.raises(InvalidStateError):
        as_density([[0.5, 0.3], [0.1, 0.5]])
    with pytest.raises(InvalidStateError):
        as_density([[0.7, 0.0], [0.0, 0.7]])


def test_random_states_are_valid(rng):
    psi = random_pure_state(8, rng)
    assert np.linalg.norm(psi) == pytest.approx(1.0)

    rho = random_density(5, rng)
    assert as_density(rho).shape == (5, 5)
    assert np.min(np.linalg.eigvalsh(rho)) > -1e-12

    low_rank = random_density(6, rng, rank=2)
    assert np.sum(np.linalg.eigvalsh(low_rank) > 1e-10) == 2


def test_gram_orthonormality_detects_overlap():
    basis = [basis_ket(4, i) for i in range(4)]
    assert gram_orthonormality(basis) == 0.0

    skew = [basis_ket(2, 0), np.array([1, 1], dtype=np.complex128) / math.sqrt(2)]
    assert gram_orthonormality(skew) == pytest.approx(1 / math.sqrt(2))


def test_n_qubits_for_dim():
    assert n_qubits_for_dim(2) == 1
    assert n_qubits_for_dim(8) == 3
    for bad in (1, 6, 0):
        with pytest.raises(DimensionMismatchError):
            n_qubits_for_dim(bad)


def test_tensor_is_associative(rng):
    for _ in range(10):
        a, b, c = (random_density(int(d), rng) for d in rng.integers(1, 4, size=3))
        assert np.allclose(tensor(tensor(a, b), c), tensor(a, tensor(b, c)), atol=1e-14)


def test_partial_trace_inverts_tensor_on_random_inputs(rng):
    for _ in range(20):
        d_a, d_b = (int(d) for d in rng.integers(1, 5, size=2))
        rho_a = random_density(d_a, rng)
        sigma_b = random_density(d_b, rng)
        reduced = partial_trace(tensor(rho_a, sigma_b), (d_a, d_b), keep=[0])
        assert np.max(np.abs(reduced - rho_a)) <= 1e-12


def test_trace_distance_triangle_inequality(rng):
    for _ in range(50):
        dim = int(rng.integers(2, 6))
        a, b, c = (random_density(dim, rng, rank=int(rng.integers(1, dim + 1))) for _ in range(3))
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12


def test_entropy_is_additive_over_products(rng):
    assert von_neumann_entropy(maximally_mixed(8)) == pytest.approx(3.0, abs=1e-12)
    for _ in range(20):
        rho = random_density(int(rng.integers(1, 5)), rng)
        sigma = random_density(int(rng.integers(1, 5)), rng)
        joint = von_neumann_entropy(tensor(rho, sigma))
        assert joint == pytest.approx(von_neumann_entropy(rho) + von_neumann_entropy(sigma), abs=1e-10)
