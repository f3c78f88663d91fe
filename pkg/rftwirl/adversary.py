"""
Monte-Carlo simulation of Alice -> public channel -> Bob with an intercepting Eve.

Bob shares Alice's frame and measures in the signal basis. Eve sees each
signal through a fresh uniformly random frame relation (rotation, qubit
relabelling, or both) and knows nothing else.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import structlog

from rftwirl.certify import certify_classical
from rftwirl.config import settings
from rftwirl.core.metrics import PROTOCOL_TRIALS
from rftwirl.errors import ResourceLimitError, UncertifiedSchemeError, UsageError
from rftwirl.matcore import Matrix, conjugate, tensor, trace_distance
from rftwirl.schemes import ClassicalScheme
from rftwirl.schurweyl import Permutation, Rotation, collective_rotation, permutation_operator
from rftwirl.twirl import (
    Superop,
    SuperopKind,
    apply_permutation,
    twirl_su2_exact,
)

logger = structlog.get_logger("rftwirl.adversary")

NO_OUTCOME = -1


class EveStrategy(str, Enum):
    HELSTROM = "helstrom"
    FIXED = "fixed"


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    sent: int
    bob: int
    eve: int

    def as_dict(self) -> dict[str, int]:
        return {"trial": self.trial, "sent": self.sent, "bob": self.bob, "eve": self.eve}


@dataclass
class ProtocolRun:
    scheme_id: str
    n_messages: int
    n_trials: int
    seed: int
    eve_strategy: EveStrategy
    designated_pair: tuple[int, int] | None
    results: list[TrialRecord] = field(default_factory=list)

    @property
    def bob_success_rate(self) -> float:
        return sum(r.bob == r.sent for r in self.results) / max(1, len(self.results))

    @property
    def eve_guess_rate(self) -> float:
        return sum(r.eve == r.sent for r in self.results) / max(1, len(self.results))


@dataclass(frozen=True)
class ReuseResult:
    scheme_id: str
    n_trials: int
    seed: int
    eve_success_rate: float
    helstrom_success: float
    single_use_success: float

    @property
    def advantage(self) -> float:
        return self.eve_success_rate - 0.5


def confidence_interval(rate: float, n: int, z: float = 1.96) -> tuple[float, float]:
    half = z * math.sqrt(max(rate * (1.0 - rate), 0.0) / max(n, 1))
    return max(0.0, rate - half), min(1.0, rate + half)


def _random_frame(kind: SuperopKind, n_qubits: int, rng: np.random.Generator) -> Matrix:
    """Unitary relating Alice's frame to Eve's for one transmission."""
    dim = 1 << n_qubits
    u = np.eye(dim, dtype=np.complex128)
    if kind in (SuperopKind.PERM, SuperopKind.BOTH):
        images = tuple(int(i) for i in rng.permutation(n_qubits))
        u = permutation_operator(Permutation(images), n_qubits)
    if kind in (SuperopKind.SU2, SuperopKind.BOTH):
        u = collective_rotation(Rotation.random(rng), n_qubits) @ u
    return u


def helstrom_projector(a: Matrix, b: Matrix, tol: float | None = None) -> Matrix:
    """Projector onto the positive part of a - b; outcome 1 means guess ``a``."""
    eps = settings.TOLERANCE if tol is None else tol
    values, vectors = np.linalg.eigh(0.5 * ((a - b) + (a - b).conj().T))
    keep = vectors[:, values > eps]
    return np.asarray(keep @ keep.conj().T, dtype=np.complex128)


def _best_pair(images: list[Matrix]) -> tuple[int, int]:
    best, pair = -1.0, (0, 1)
    for i, k in itertools.combinations(range(len(images)), 2):
        dist = trace_distance(images[i], images[k])
        if dist > best + settings.TOLERANCE:
            best, pair = dist, (i, k)
    return pair


def _measure(probs: np.ndarray, rng: np.random.Generator) -> int:
    p = np.clip(np.real(probs), 0.0, None)
    residual = max(0.0, 1.0 - float(p.sum()))
    weights = np.append(p, residual)
    weights = weights / weights.sum()
    outcome = int(rng.choice(len(weights), p=weights))
    return NO_OUTCOME if outcome == len(p) else outcome


def run_protocol(
    scheme: ClassicalScheme,
    n_trials: int,
    seed: int,
    eve_strategy: EveStrategy | str = EveStrategy.HELSTROM,
    require_certified: bool = True,
) -> ProtocolRun:
    """
    In Helstrom mode Alice picks uniformly between the two messages whose
    averaged views differ most and Eve runs the optimal binary measurement;
    in fixed mode Alice picks uniformly among all messages and Eve measures
    the computational basis with a maximum-likelihood guess.
    """
    if n_trials < 1:
        raise UsageError(f"n_trials must be >= 1, got {n_trials}")
    strategy = EveStrategy(eve_strategy)
    if require_certified:
        report = certify_classical(scheme)
        if not report.passed:
            raise UncertifiedSchemeError(
                f"Scheme {scheme.scheme_id} failed certification "
                f"(privacy defect {report.privacy_defect:.3e})"
            )

    superop = Superop.build(scheme.superop_kind, scheme.n_qubits)
    signals = scheme.density_matrices()
    views = [superop.apply(rho) for rho in signals]
    basis = np.column_stack(scheme.states)

    pair: tuple[int, int] | None = None
    guess_a = np.zeros((1, 1), dtype=np.complex128)
    likelihood = np.zeros((1, 1))
    if strategy == EveStrategy.HELSTROM:
        pair = _best_pair(views)
        guess_a = helstrom_projector(views[pair[0]], views[pair[1]])
    else:
        likelihood = np.stack([np.real(np.diag(v)) for v in views])

    run = ProtocolRun(
        scheme_id=scheme.scheme_id,
        n_messages=scheme.size,
        n_trials=n_trials,
        seed=seed,
        eve_strategy=strategy,
        designated_pair=pair,
    )
    for trial in range(n_trials):
        rng = np.random.default_rng([seed, trial])
        if pair is not None:
            sent = pair[int(rng.integers(2))]
        else:
            sent = int(rng.integers(scheme.size))
        psi = scheme.states[sent]

        bob = _measure(np.abs(basis.conj().T @ psi) ** 2, rng)

        eve_view = conjugate(_random_frame(scheme.superop_kind, scheme.n_qubits, rng), signals[sent])
        if pair is not None:
            p_a = float(np.real(np.trace(guess_a @ eve_view)))
            eve = pair[0] if rng.random() < p_a else pair[1]
        else:
            outcome = _measure(np.diag(eve_view), rng)
            eve = int(np.argmax(likelihood[:, outcome])) if outcome >= 0 else 0

        run.results.append(TrialRecord(trial=trial, sent=sent, bob=bob, eve=eve))

    PROTOCOL_TRIALS.labels(role="bob").inc(n_trials)
    PROTOCOL_TRIALS.labels(role="eve").inc(n_trials)
    logger.info(
        "protocol_finished",
        scheme=scheme.scheme_id,
        trials=n_trials,
        bob_rate=run.bob_success_rate,
        eve_rate=run.eve_guess_rate,
        eve=strategy.value,
    )
    return run


def eve_mutual_information_estimate(run: ProtocolRun) -> float:
    """Plug-in I(sent; eve) in bits from the trial counts."""
    total = len(run.results)
    if total == 0:
        return 0.0
    joint = Counter((r.sent, r.eve) for r in run.results)
    sent = Counter(r.sent for r in run.results)
    guessed = Counter(r.eve for r in run.results)
    info = 0.0
    for (s, e), count in joint.items():
        p = count / total
        info += p * math.log2(p / ((sent[s] / total) * (guessed[e] / total)))
    return max(0.0, info)


def summarize(run: ProtocolRun) -> dict[str, Any]:
    n = len(run.results)
    eve_rate = run.eve_guess_rate
    return {
        "scheme": run.scheme_id,
        "n_trials": n,
        "seed": run.seed,
        "eve_strategy": run.eve_strategy.value,
        "designated_pair": list(run.designated_pair) if run.designated_pair else None,
        "bob_success_rate": run.bob_success_rate,
        "eve_guess_rate": eve_rate,
        "eve_guess_ci95": list(confidence_interval(eve_rate, n)),
        "eve_sigma": 0.5 / math.sqrt(max(n, 1)),
        "eve_mutual_information_bits": eve_mutual_information_estimate(run),
    }


def _shared_frame_twirl(rho: Matrix, kind: SuperopKind, n_qubits: int) -> Matrix:
    """Average over one frame relation applied to both halves of a 2N-qubit state."""
    out = rho
    if kind in (SuperopKind.PERM, SuperopKind.BOTH):
        if n_qubits > settings.ENUMERATION_MAX_N:
            raise ResourceLimitError(
                f"Shared-permutation average over S_{n_qubits} exceeds the enumeration cap"
            )
        acc = np.zeros_like(out)
        perms = list(itertools.permutations(range(n_qubits)))
        for images in perms:
            doubled = Permutation(images + tuple(n_qubits + i for i in images))
            acc += apply_permutation(out, doubled)
        out = acc / len(perms)
    if kind in (SuperopKind.SU2, SuperopKind.BOTH):
        out = twirl_su2_exact(out)
    return out


def run_reuse_demo(scheme: ClassicalScheme, n_trials: int, seed: int) -> ReuseResult:
    """
    Two messages sent through one shared misalignment. Eve guesses whether the
    two messages are equal with the optimal binary measurement on the
    jointly averaged views.
    """
    if n_trials < 1:
        raise UsageError(f"n_trials must be >= 1, got {n_trials}")
    n, kind, m = scheme.n_qubits, scheme.superop_kind, scheme.size
    if 2 * n > settings.MAX_QUBITS:
        raise ResourceLimitError(f"Reuse demo needs {2 * n} qubits, cap is {settings.MAX_QUBITS}")

    signals = scheme.density_matrices()
    total = sum(signals)
    diagonal = sum(tensor(rho, rho) for rho in signals)
    same = diagonal / m
    different = (tensor(total, total) - diagonal) / (m * (m - 1))
    same_view = _shared_frame_twirl(same, kind, n)
    different_view = _shared_frame_twirl(different, kind, n)
    guess_same = helstrom_projector(same_view, different_view)

    superop = Superop.build(kind, n)
    images = [superop.apply(rho) for rho in signals]
    avg = sum(images) / m
    single_same = sum(tensor(img, img) for img in images) / m
    single_diff = (tensor(avg * m, avg * m) - single_same * m) / (m * (m - 1))

    hits = 0
    for trial in range(n_trials):
        rng = np.random.default_rng([seed, trial])
        is_same = bool(rng.integers(2))
        first = int(rng.integers(m))
        second = first if is_same else (first + 1 + int(rng.integers(m - 1))) % m
        frame = _random_frame(kind, n, rng)
        view = conjugate(tensor(frame, frame), tensor(signals[first], signals[second]))
        p_same = float(np.real(np.trace(guess_same @ view)))
        hits += int((rng.random() < p_same) == is_same)

    PROTOCOL_TRIALS.labels(role="eve_reuse").inc(n_trials)
    result = ReuseResult(
        scheme_id=scheme.scheme_id,
        n_trials=n_trials,
        seed=seed,
        eve_success_rate=hits / n_trials,
        helstrom_success=0.5 + 0.5 * trace_distance(same_view, different_view),
        single_use_success=0.5 + 0.5 * trace_distance(single_same, single_diff),
    )
    logger.info(
        "reuse_demo_finished",
        scheme=scheme.scheme_id,
        eve_rate=result.eve_success_rate,
        helstrom=result.helstrom_success,
    )
    return result


def summarize_reuse(result: ReuseResult) -> dict[str, Any]:
    return {
        "scheme": result.scheme_id,
        "n_trials": result.n_trials,
        "seed": result.seed,
        "eve_success_rate": result.eve_success_rate,
        "eve_success_ci95": list(confidence_interval(result.eve_success_rate, result.n_trials)),
        "helstrom_success": result.helstrom_success,
        "single_use_success": result.single_use_success,
        "advantage": result.advantage,
    }
