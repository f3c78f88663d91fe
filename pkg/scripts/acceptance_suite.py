import argparse
import itertools
import sys
import time
from collections.abc import Callable
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from rftwirl.adversary import run_protocol  # noqa: E402
from rftwirl.certify import certify_classical, certify_quantum  # noqa: E402
from rftwirl.core.logging_config import setup_logging  # noqa: E402
from rftwirl.matcore import (  # noqa: E402
    maximally_mixed,
    partial_trace,
    projector,
    random_density,
    tensor,
    trace_distance,
)
from rftwirl.schemes import (  # noqa: E402
    both_private_classical_scheme,
    classical_bound,
    perm_classical_scheme,
    quantum_logical_dim,
    quantum_scheme,
    sabotaged_quantum_scheme,
    schur_basis_scheme,
    su2_classical_scheme,
    su2_scheme_size,
    tetrahedron_states,
    three_qubit_octet,
)
from rftwirl.schurweyl import (  # noqa: E402
    Permutation,
    Rotation,
    block_projector,
    bratteli_path_count,
    build_schur_transform,
    collective_rotation,
    dim_P,
    dim_R,
    irrep_labels,
    permutation_operator,
    to_schur,
)
from rftwirl.twirl import (  # noqa: E402
    twirl_perm_enumerated,
    twirl_perm_exact,
    twirl_su2_exact,
    twirl_su2_sampled,
)

SEED = 20050101


def three_qubit_decomposition(rho: np.ndarray) -> np.ndarray:
    t = build_schur_transform(3)
    high, low = t.block(3), t.block(1)
    pi_high = block_projector(t, high)
    p_high = float(np.real(np.trace(pi_high @ rho)))
    low_local = to_schur(rho, t)[low.columns, low.columns]
    depolarized = tensor(maximally_mixed(2), partial_trace(low_local, (2, 2), keep=[1]))
    return p_high * pi_high / 4 + t.embed_operator(low, depolarized)


def worked_examples() -> bool:
    rng = np.random.default_rng(SEED)
    singlet = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)
    pi0 = projector(singlet)
    pi1 = np.eye(4) - pi0
    worst = 0.0
    for _ in range(20):
        rho = random_density(2, rng)
        worst = max(worst, float(np.max(np.abs(twirl_su2_exact(rho) - maximally_mixed(2)))))
        rho2 = random_density(4, rng)
        p0 = float(np.real(np.trace(pi0 @ rho2)))
        werner = (1 - p0) * pi1 / 3 + p0 * pi0
        worst = max(worst, float(np.max(np.abs(twirl_su2_exact(rho2) - werner))))
        rho3 = random_density(8, rng)
        worst = max(worst, float(np.max(np.abs(twirl_su2_exact(rho3) - three_qubit_decomposition(rho3)))))
    return worst <= 1e-10


def scheme_certifications() -> bool:
    reports = [certify_classical(tetrahedron_states()), certify_classical(three_qubit_octet())]
    reports += [certify_quantum(quantum_scheme(2, "su2")), certify_quantum(quantum_scheme(3, "su2"))]
    return all(
        r.passed and r.orthogonality_defect <= 1e-10 and r.privacy_defect <= 1e-10 and r.holevo_bits <= 1e-9
        for r in reports
    )


def counting_identities() -> bool:
    for n in range(1, 13):
        labels = irrep_labels(n)
        if sum(dim_R(label) * dim_P(label) for label in labels) != 2**n:
            return False
        for label in labels:
            if dim_P(label) != bratteli_path_count(n, label.two_j):
                return False
            if label.two_j < n and dim_P(label) < dim_R(label):
                return False
    return True


def capacity_ceilings() -> bool:
    if tetrahedron_states().size != classical_bound(2, "su2"):
        return False
    if three_qubit_octet().size != classical_bound(3, "su2"):
        return False
    for n in (4, 6, 8):
        for two_j_min in range(0, n, 2):
            if su2_classical_scheme(n, two_j_min // 2).size != su2_scheme_size(n, two_j_min):
                return False
    for n in range(1, 9):
        labels = irrep_labels(n)
        expected = {
            "su2": n + 1,
            "perm": max(dim_P(label) for label in labels),
            "both": max(dim_R(label) * dim_P(label) for label in labels),
        }
        for srf, dim in expected.items():
            if quantum_logical_dim(n, srf) != dim or quantum_scheme(n, srf).logical_dim != dim:
                return False
    return True


def oracle_equivalence() -> bool:
    rng = np.random.default_rng(SEED)
    for n in range(1, 5):
        rho = random_density(2**n, rng)
        if trace_distance(twirl_su2_exact(rho), twirl_su2_sampled(rho, 10000, SEED + n)) > 5e-2:
            return False
    for n in range(1, 6):
        rho = random_density(2**n, rng)
        if float(np.max(np.abs(twirl_perm_exact(rho) - twirl_perm_enumerated(rho)))) > 1e-10:
            return False
    return True


def block_diagonalization() -> bool:
    rng = np.random.default_rng(SEED)
    t = build_schur_transform(4)
    u = t.unitary
    ops = [collective_rotation(Rotation.random(rng), 4) for _ in range(100)]
    perms = [permutation_operator(Permutation(p)) for p in itertools.permutations(range(4))]
    for op, factor_side in [(o, 0) for o in ops] + [(p, 1) for p in perms]:
        schur = u.conj().T @ op @ u
        mask = np.zeros(schur.shape, dtype=bool)
        for blk in t.blocks:
            mask[blk.columns, blk.columns] = True
            sub = schur[blk.columns, blk.columns]
            if factor_side == 0:
                local = partial_trace(sub, (blk.d_R, blk.d_P), keep=[0]) / blk.d_P
                expected = tensor(local, np.eye(blk.d_P))
            else:
                local = partial_trace(sub, (blk.d_R, blk.d_P), keep=[1]) / blk.d_R
                expected = tensor(np.eye(blk.d_R), local)
            if float(np.max(np.abs(sub - expected))) > 1e-10:
                return False
        if float(np.max(np.abs(schur[~mask]))) > 1e-10:
            return False
    return True


def end_to_end() -> bool:
    shipped = [tetrahedron_states(), three_qubit_octet(), perm_classical_scheme(4), both_private_classical_scheme(3)]
    for scheme in shipped:
        run = run_protocol(scheme, 10000, SEED)
        if run.bob_success_rate != 1.0 or not 0.48 <= run.eve_guess_rate <= 0.52:
            return False
    broken = run_protocol(schur_basis_scheme(2, "su2"), 10000, SEED, require_certified=False)
    return broken.eve_guess_rate >= 0.6


def negative_controls() -> bool:
    for srf in ("su2", "perm", "both"):
        if certify_classical(schur_basis_scheme(3, srf)).passed:
            return False
        if certify_quantum(sabotaged_quantum_scheme(3, srf)).passed:
            return False
    return True


CHECKS: list[tuple[str, Callable[[], bool], float]] = [
    ("worked examples", worked_examples, 1.0),
    ("scheme certifications", scheme_certifications, 1.0),
    ("counting identities", counting_identities, 1.0),
    ("capacity ceilings", capacity_ceilings, 10.0),
    ("oracle equivalence", oracle_equivalence, 60.0),
    ("block diagonalization", block_diagonalization, 30.0),
    ("end-to-end simulation", end_to_end, 60.0),
    ("negative controls", negative_controls, 60.0),
]


def run_check(name: str, check: Callable[[], bool], budget: float, strict_time: bool) -> bool:
    start = time.perf_counter()
    ok = check()
    elapsed = time.perf_counter() - start
    if not ok:
        print(f"[FAIL] {name} ({elapsed:.2f}s)")
        return False
    if strict_time and elapsed > budget:
        print(f"[FAIL] {name}: {elapsed:.2f}s exceeds {budget:.0f}s")
        return False
    print(f"[PASS] {name} ({elapsed:.2f}s)")
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the rftwirl acceptance checks")
    parser.add_argument("--strict-time", action="store_true", help="Fail checks over their time budget")
    parser.add_argument("--only", default="", help="Substring filter on check names")
    args = parser.parse_args()
    setup_logging()

    ok = True
    for name, check, budget in CHECKS:
        if args.only and args.only not in name:
            continue
        ok = run_check(name, check, budget, args.strict_time) and ok
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
