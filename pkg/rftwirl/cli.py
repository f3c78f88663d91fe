"""
Command-line entry point.

Exit codes: 0 success or certification pass, 2 certification failure or an
uncertified scheme, 3 malformed input or usage error.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

import structlog
from pydantic import ValidationError

from rftwirl import __version__
from rftwirl.adversary import (
    EveStrategy,
    run_protocol,
    run_reuse_demo,
    summarize,
    summarize_reuse,
)
from rftwirl.artifacts import (
    capacity_row_model,
    dumps,
    load_scheme,
    model_dict,
    scheme_to_model,
    timestamp,
    write_json,
)
from rftwirl.certify import certify_classical, certify_scheme
from rftwirl.codec import write_matrix
from rftwirl.config import settings
from rftwirl.core.logging_config import setup_logging
from rftwirl.core.metrics import write_metrics
from rftwirl.errors import RftwirlError, UncertifiedSchemeError, UsageError
from rftwirl.schemas import (
    CertReportModel,
    ProtocolSummary,
    ReuseSummary,
    RunConfig,
    SchurHeader,
    TrialRecordModel,
)
from rftwirl.schemes import (
    ClassicalScheme,
    QuantumScheme,
    both_private_classical_scheme,
    capacity_table,
    fourier_classical_scheme,
    perm_classical_scheme,
    product_subsystem_scheme,
    quantum_scheme,
    sabotaged_quantum_scheme,
    schur_basis_scheme,
    su2_classical_scheme,
    symmetric_subspace_scheme,
    tetrahedron_states,
    three_qubit_octet,
)
from rftwirl.schurweyl import build_schur_transform, format_spin, parse_spin, schur_header

logger = structlog.get_logger("rftwirl.cli")

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_INPUT = 3

CONSTRUCTIONS = (
    "tetrahedron",
    "octet",
    "su2-classical",
    "perm-classical",
    "both-classical",
    "fourier-classical",
    "symmetric-subspace",
    "product-subsystem",
    "schur-basis",
    "quantum",
    "sabotaged-quantum",
)


class UsageParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["json", "text"], default="json")
    common.add_argument("--no-timestamp", action="store_true", help="Omit generated_at fields")
    common.add_argument("--log-level", default=None, help="Overrides RFTWIRL_LOG_LEVEL")
    return common


def build_parser() -> UsageParser:
    common = _common_options()
    parser = UsageParser(
        prog="rftwirl",
        description="Private communication with a private shared reference frame",
    )
    parser.add_argument("--version", action="version", version=f"rftwirl {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=UsageParser)

    schur = commands.add_parser("schur", parents=[common], help="Build a Schur transform")
    schur.add_argument("--n", type=int, required=True)
    schur.add_argument("--out", default="", help="Directory for header, unitary and table")
    schur.set_defaults(handler=cmd_schur)

    scheme = commands.add_parser("scheme", help="Generate or certify schemes")
    scheme_cmds = scheme.add_subparsers(dest="action", required=True, parser_class=UsageParser)

    generate = scheme_cmds.add_parser("generate", parents=[common])
    generate.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    generate.add_argument("--n", type=int, default=None)
    generate.add_argument("--srf", choices=["su2", "perm", "sn", "both"], default=None)
    generate.add_argument("--jmin", default=None, help="Smallest irrep, e.g. 1 or 1/2")
    generate.add_argument("--j", default=None, help="Target irrep for single-block schemes")
    generate.add_argument("--irreps", default=None, help="Comma-separated spins, e.g. 1,0")
    generate.add_argument("--out", default="")
    generate.set_defaults(handler=cmd_generate)

    certify = scheme_cmds.add_parser("certify", parents=[common])
    certify.add_argument("--in", dest="input", required=True)
    certify.add_argument("--tol", type=float, default=None)
    certify.add_argument("--seed", type=int, default=None)
    certify.add_argument("--n-random", type=int, default=None)
    certify.add_argument("--out", default="")
    certify.set_defaults(handler=cmd_certify)

    capacity = commands.add_parser("capacity", parents=[common], help="Finite-N capacity table")
    capacity.add_argument("--n-min", type=int, default=1)
    capacity.add_argument("--n-max", type=int, default=8)
    capacity.add_argument("--out", default="")
    capacity.set_defaults(handler=cmd_capacity)

    simulate = commands.add_parser("simulate", parents=[common], help="Run the protocol")
    simulate.add_argument("--in", dest="input", required=True)
    simulate.add_argument("--trials", type=int, default=10000)
    simulate.add_argument("--seed", type=int, default=None)
    simulate.add_argument("--eve", choices=[s.value for s in EveStrategy], default="helstrom")
    simulate.add_argument("--reuse-frame", type=int, choices=[1, 2], default=1)
    simulate.add_argument("--out", default="", help="Summary JSON path")
    simulate.add_argument("--transcript", default="", help="JSON-lines transcript path")
    simulate.set_defaults(handler=cmd_simulate)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    irreps = getattr(args, "irreps", None)
    seed = getattr(args, "seed", None)
    return RunConfig(
        command=args.command,
        output_format=args.output_format,
        n=getattr(args, "n", None),
        srf=getattr(args, "srf", None),
        construction=getattr(args, "construction", None),
        jmin=getattr(args, "jmin", None),
        j=getattr(args, "j", None),
        irreps=None if irreps is None else [s.strip() for s in irreps.split(",") if s.strip()],
        seed=settings.DEFAULT_SEED if seed is None else seed,
        tol=getattr(args, "tol", None),
        n_random=getattr(args, "n_random", None),
        trials=getattr(args, "trials", None),
        n_min=getattr(args, "n_min", None),
        n_max=getattr(args, "n_max", None),
    )


def _stamp(args: argparse.Namespace) -> str | None:
    return None if args.no_timestamp else timestamp()


def _emit(args: argparse.Namespace, payload: dict[str, Any] | list[Any], text: str) -> None:
    out = getattr(args, "out", "")
    if out and args.command != "schur":
        write_json(out, payload)
    print(text if args.output_format == "text" else dumps(payload))


def block_table(n_qubits: int) -> str:
    transform = build_schur_transform(n_qubits)
    lines = [f"N={n_qubits}", f"{'j':>5} {'d_R':>5} {'d_P':>5} {'offset':>7}"]
    for blk in transform.blocks:
        lines.append(f"{format_spin(blk.two_j):>5} {blk.d_R:>5} {blk.d_P:>5} {blk.offset:>7}")
    return "\n".join(lines)


def cmd_schur(args: argparse.Namespace, config: RunConfig) -> int:
    assert config.n is not None
    transform = build_schur_transform(config.n)
    header = SchurHeader(**schur_header(transform), generated_at=_stamp(args))
    table = block_table(config.n)
    if args.out:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        unitary_path = target / f"schur_n{config.n}.bin"
        write_matrix(unitary_path, transform.unitary)
        header.unitary_file = unitary_path.name
        write_json(target / f"schur_n{config.n}.json", model_dict(header))
        (target / f"schur_n{config.n}.txt").write_text(table + "\n", encoding="utf-8")
    _emit(args, model_dict(header), table)
    return EXIT_OK


def _require_n(config: RunConfig) -> int:
    if config.n is None:
        raise UsageError(f"--n is required for construction {config.construction}")
    return config.n


def _require(value: str | None, flag: str, config: RunConfig) -> str:
    if value is None:
        raise UsageError(f"{flag} is required for construction {config.construction}")
    return value


def _srf(config: RunConfig, default: str = "su2") -> str:
    return config.srf or default


def _irreps(config: RunConfig) -> list[int] | None:
    if config.irreps is None:
        return None
    return [parse_spin(s) for s in config.irreps]


BUILDERS: dict[str, Callable[[RunConfig], ClassicalScheme | QuantumScheme]] = {
    "tetrahedron": lambda c: tetrahedron_states(),
    "octet": lambda c: three_qubit_octet(),
    "su2-classical": lambda c: su2_classical_scheme(_require_n(c), _require(c.jmin, "--jmin", c)),
    "perm-classical": lambda c: perm_classical_scheme(_require_n(c), _irreps(c)),
    "both-classical": lambda c: both_private_classical_scheme(_require_n(c), _irreps(c)),
    "fourier-classical": lambda c: fourier_classical_scheme(_require_n(c), _srf(c), _irreps(c)),
    "symmetric-subspace": lambda c: symmetric_subspace_scheme(_require_n(c)),
    "product-subsystem": lambda c: product_subsystem_scheme(
        _require_n(c), _srf(c), _require(c.j, "--j", c)
    ),
    "schur-basis": lambda c: schur_basis_scheme(_require_n(c), _srf(c)),
    "quantum": lambda c: quantum_scheme(_require_n(c), _srf(c), c.j),
    "sabotaged-quantum": lambda c: sabotaged_quantum_scheme(_require_n(c), _srf(c)),
}


def cmd_generate(args: argparse.Namespace, config: RunConfig) -> int:
    assert config.construction is not None
    scheme = BUILDERS[config.construction](config)
    payload = model_dict(scheme_to_model(scheme, _stamp(args)))
    if isinstance(scheme, QuantumScheme):
        text = (
            f"{scheme.scheme_id}: logical_dim={scheme.logical_dim} "
            f"j={format_spin(scheme.target_block.two_j)}"
        )
    else:
        text = f"{scheme.scheme_id}: {scheme.size} states"
    _emit(args, payload, text)
    return EXIT_OK


def _report_text(report: CertReportModel) -> str:
    lines = [f"[{'PASS' if report.passed else 'FAIL'}] {report.scheme_id}"]
    for key in (
        "n_states",
        "orthogonality_defect",
        "privacy_defect",
        "rho0_residual",
        "holevo_bits",
        "bound_used",
        "min_fidelity",
    ):
        value = getattr(report, key)
        if value is not None:
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def cmd_certify(args: argparse.Namespace, config: RunConfig) -> int:
    scheme = load_scheme(args.input)
    report = certify_scheme(scheme, n_random=config.n_random, seed=config.seed, tol=config.tol)
    model = CertReportModel(**report.as_dict(), generated_at=_stamp(args))
    _emit(args, model_dict(model), _report_text(model))
    return EXIT_OK if report.passed else EXIT_FAILED


def _capacity_text(rows: list[dict[str, Any]]) -> str:
    """One line per N: (quantum, classical) for each SRF kind, then the classical bounds."""
    kinds = ("su2", "perm", "both")
    by_n: dict[int, dict[str, dict[str, Any]]] = {}
    for row in rows:
        by_n.setdefault(row["n_qubits"], {})[row["srf"]] = row
    header = f"{'N':>3}" + "".join(f" {k + ' q':>8} {k + ' c':>8}" for k in kinds)
    header += "".join(f" {k + ' bound':>10}" for k in kinds)
    lines = [header]
    for n_qubits, per_kind in sorted(by_n.items()):
        cells = [f"{n_qubits:>3}"]
        for k in kinds:
            cells.append(f"{per_kind[k]['quantum_qubits']:>8.4f} {per_kind[k]['classical_cbits']:>8.4f}")
        for k in kinds:
            cells.append(f"{per_kind[k]['classical_bound']:>10}")
        lines.append(" ".join(cells))
    return "\n".join(lines)


def cmd_capacity(args: argparse.Namespace, config: RunConfig) -> int:
    assert config.n_min is not None and config.n_max is not None
    rows = [model_dict(capacity_row_model(r)) for r in capacity_table(range(config.n_min, config.n_max + 1))]
    _emit(args, rows, _capacity_text(rows))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: RunConfig) -> int:
    scheme = load_scheme(args.input)
    if not isinstance(scheme, ClassicalScheme):
        raise UsageError("simulate needs a classical scheme file")
    assert config.trials is not None
    trials = config.trials

    if args.reuse_frame == 2:
        if not certify_classical(scheme).passed:
            raise UncertifiedSchemeError(f"Scheme {scheme.scheme_id} failed certification")
        result = run_reuse_demo(scheme, trials, config.seed)
        reuse = ReuseSummary(**summarize_reuse(result), generated_at=_stamp(args))
        text = (
            f"{reuse.scheme} reuse x2: eve={reuse.eve_success_rate:.4f} "
            f"helstrom={reuse.helstrom_success:.4f} single-use={reuse.single_use_success:.4f}"
        )
        _emit(args, model_dict(reuse), text)
        return EXIT_OK

    run = run_protocol(scheme, trials, config.seed, EveStrategy(args.eve))
    if args.transcript:
        lines = [json.dumps(TrialRecordModel(**r.as_dict()).dict()) for r in run.results]
        Path(args.transcript).write_text("\n".join(lines) + "\n", encoding="utf-8")
    summary = ProtocolSummary(**summarize(run), generated_at=_stamp(args))
    text = (
        f"{summary.scheme}: bob={summary.bob_success_rate:.4f} "
        f"eve={summary.eve_guess_rate:.4f} (sigma {summary.eve_sigma:.4f})"
    )
    _emit(args, model_dict(summary), text)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"rftwirl: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    setup_logging(args.log_level)
    command = args.command if args.command != "scheme" else f"scheme {args.action}"
    structlog.contextvars.bind_contextvars(command=command)
    try:
        config = _config(args)
        structlog.contextvars.bind_contextvars(seed=config.seed)
        code = int(args.handler(args, config))
    except UncertifiedSchemeError as exc:
        print(f"rftwirl: uncertified: {exc}", file=sys.stderr)
        code = EXIT_FAILED
    except (RftwirlError, ValidationError, json.JSONDecodeError, OSError) as exc:
        print(f"rftwirl: error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    finally:
        structlog.contextvars.clear_contextvars()

    if settings.METRICS_TEXTFILE:
        write_metrics(settings.METRICS_TEXTFILE)
    logger.debug("command_finished", command=command, exit_code=code)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
