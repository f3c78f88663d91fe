import numpy as np
import pytest

from rftwirl.adversary import (
    EveStrategy,
    ProtocolRun,
    TrialRecord,
    confidence_interval,
    eve_mutual_information_estimate,
    helstrom_projector,
    run_protocol,
    run_reuse_demo,
    summarize,
    summarize_reuse,
)
from rftwirl.errors import UncertifiedSchemeError, UsageError
from rftwirl.matcore import basis_ket, maximally_mixed, projector
from rftwirl.schemes import (
    ClassicalScheme,
    perm_classical_scheme,
    schur_basis_scheme,
    tetrahedron_states,
    three_qubit_octet,
)
from rftwirl.twirl import SuperopKind


def test_tetrahedron_protocol_keeps_eve_at_chance():
    run = run_protocol(tetrahedron_states(), n_trials=4000, seed=17)
    assert run.bob_success_rate == pytest.approx(1.0, abs=1e-3)
    assert abs(run.eve_guess_rate - 0.5) <= 0.05
    assert run.designated_pair == (0, 1)

    summary = summarize(run)
    assert summary["n_trials"] == 4000
    low, high = summary["eve_guess_ci95"]
    assert low <= summary["eve_guess_rate"] <= high
    assert summary["eve_mutual_information_bits"] < 0.01


def test_schur_basis_leaks_to_eve():
    run = run_protocol(schur_basis_scheme(2, "su2"), n_trials=500, seed=3, require_certified=False)
    assert run.designated_pair == (0, 3)
    assert run.eve_guess_rate >= 0.9
    assert run.bob_success_rate == pytest.approx(1.0, abs=1e-2)


def test_uncertified_scheme_is_refused():
    with pytest.raises(UncertifiedSchemeError):
        run_protocol(schur_basis_scheme(2, "su2"), n_trials=10, seed=0)


def test_runs_are_deterministic():
    scheme = perm_classical_scheme(4)
    first = run_protocol(scheme, n_trials=200, seed=9)
    second = run_protocol(scheme, n_trials=200, seed=9)
    assert first.results == second.results
    other = run_protocol(scheme, n_trials=200, seed=10)
    assert other.results != first.results


def test_fixed_basis_eve_guesses_blind():
    run = run_protocol(tetrahedron_states(), n_trials=4000, seed=5, eve_strategy="fixed")
    assert run.eve_strategy == EveStrategy.FIXED
    assert run.designated_pair is None
    assert abs(run.eve_guess_rate - 0.25) <= 0.04
    assert eve_mutual_information_estimate(run) < 0.01


def test_mutual_information_of_a_perfect_leak():
    run = ProtocolRun(
        scheme_id="leak",
        n_messages=4,
        n_trials=400,
        seed=0,
        eve_strategy=EveStrategy.FIXED,
        designated_pair=None,
        results=[TrialRecord(trial=t, sent=t % 4, bob=t % 4, eve=t % 4) for t in range(400)],
    )
    assert eve_mutual_information_estimate(run) == pytest.approx(2.0)
    assert run.eve_guess_rate == 1.0


def test_octet_private_against_rotations_and_relabelling():
    octet = three_qubit_octet()
    both = ClassicalScheme(
        n_qubits=3,
        superop_kind=SuperopKind.BOTH,
        states=octet.states,
        claimed_rho0=maximally_mixed(8),
        construction="octet",
    )
    run = run_protocol(both, n_trials=1000, seed=21)
    assert abs(run.eve_guess_rate - 0.5) <= 0.06


def test_helstrom_projector_picks_positive_part():
    a = projector(basis_ket(2, 0))
    b = maximally_mixed(2)
    assert np.allclose(helstrom_projector(a, b), a)
    assert np.allclose(helstrom_projector(a, a), np.zeros((2, 2)))


def test_reusing_one_frame_leaks():
    result = run_reuse_demo(tetrahedron_states(), n_trials=400, seed=2)
    assert result.helstrom_success >= 0.75 - 1e-9
    assert result.single_use_success == pytest.approx(0.5, abs=1e-9)
    assert result.eve_success_rate > 0.6
    assert result.advantage > 0.1

    summary = summarize_reuse(result)
    assert summary["advantage"] == pytest.approx(result.advantage)


def test_confidence_interval_is_clamped():
    assert confidence_interval(1.0, 100) == (1.0, 1.0)
    low, high = confidence_interval(0.5, 10000)
    assert low == pytest.approx(0.4902, abs=1e-4)
    assert high == pytest.approx(0.5098, abs=1e-4)


def test_trial_count_must_be_positive():
    with pytest.raises(UsageError):
        run_protocol(tetrahedron_states(), n_trials=0, seed=1)
    with pytest.raises(UsageError):
        run_reuse_demo(tetrahedron_states(), n_trials=0, seed=1)
