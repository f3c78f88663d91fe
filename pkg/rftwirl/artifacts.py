"""JSON artifacts: scheme files, reports and tables."""

import json
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from rftwirl.codec import ket_from_json, ket_to_json, matrix_from_json, matrix_to_json
from rftwirl.errors import CodecError
from rftwirl.schemas import (
    BlockInfo,
    CapacityRowModel,
    ClassicalSchemeFile,
    KetPayload,
    MatrixPayload,
    QuantumSchemeFile,
)
from rftwirl.schemes import CapacityRow, ClassicalScheme, QuantumScheme
from rftwirl.schurweyl import build_schur_transform
from rftwirl.twirl import parse_kind


def timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def dumps(payload: dict[str, Any] | list[Any]) -> str:
    # float repr is the shortest string that round-trips exactly
    return json.dumps(payload, indent=2, sort_keys=False, allow_nan=False)


def write_json(path: str | Path, payload: dict[str, Any] | list[Any]) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps(payload) + "\n", encoding="utf-8")


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def model_dict(model: BaseModel) -> dict[str, Any]:
    return model.dict(exclude_none=True)


def scheme_to_model(
    scheme: ClassicalScheme | QuantumScheme, generated_at: str | None = None
) -> ClassicalSchemeFile | QuantumSchemeFile:
    if isinstance(scheme, QuantumScheme):
        return QuantumSchemeFile(
            n=scheme.n_qubits,
            superop=scheme.superop_kind.value,
            construction=scheme.construction,
            params=dict(scheme.params),
            logical_dim=scheme.logical_dim,
            block=BlockInfo(**scheme.target_block.as_dict()),
            isometry=MatrixPayload(**matrix_to_json(scheme.encode_isometry)),
            ancilla=None if scheme.ancilla_state is None else KetPayload(**ket_to_json(scheme.ancilla_state)),
            rho0=MatrixPayload(**matrix_to_json(scheme.claimed_rho0)),
            generated_at=generated_at,
        )
    return ClassicalSchemeFile(
        n=scheme.n_qubits,
        superop=scheme.superop_kind.value,
        construction=scheme.construction,
        params=dict(scheme.params),
        states=[KetPayload(**ket_to_json(s)) for s in scheme.states],
        rho0=MatrixPayload(**matrix_to_json(scheme.claimed_rho0)),
        generated_at=generated_at,
    )


def parse_scheme_payload(payload: Any) -> ClassicalSchemeFile | QuantumSchemeFile:
    if not isinstance(payload, dict):
        raise CodecError("Scheme file must hold a JSON object")
    if payload.get("type", "classical") == "quantum":
        return QuantumSchemeFile.parse_obj(payload)
    return ClassicalSchemeFile.parse_obj(payload)


def scheme_from_model(model: ClassicalSchemeFile | QuantumSchemeFile) -> ClassicalScheme | QuantumScheme:
    kind = parse_kind(model.superop)
    rho0 = matrix_from_json(model.rho0.dict())
    if isinstance(model, QuantumSchemeFile):
        transform = build_schur_transform(model.n)
        block = transform.block(model.block.two_j)
        if block.as_dict() != model.block.dict():
            raise CodecError(f"Block {model.block.dict()} does not match the N={model.n} transform")
        return QuantumScheme(
            n_qubits=model.n,
            superop_kind=kind,
            logical_dim=model.logical_dim,
            encode_isometry=matrix_from_json(model.isometry.dict()),
            target_block=block,
            ancilla_state=None if model.ancilla is None else ket_from_json(model.ancilla.dict()),
            claimed_rho0=rho0,
            construction=model.construction,
            params=dict(model.params),
        )
    return ClassicalScheme(
        n_qubits=model.n,
        superop_kind=kind,
        states=tuple(ket_from_json(s.dict()) for s in model.states),
        claimed_rho0=rho0,
        construction=model.construction,
        params=dict(model.params),
    )


def load_scheme(path: str | Path) -> ClassicalScheme | QuantumScheme:
    return scheme_from_model(parse_scheme_payload(read_json(path)))


def capacity_row_model(row: CapacityRow) -> CapacityRowModel:
    payload = asdict(row)
    payload["srf"] = row.srf_kind.value
    payload.pop("srf_kind")
    return CapacityRowModel(
        **payload,
        below_asymptotic_quantum=row.below_asymptotic_quantum,
        below_asymptotic_classical=row.below_asymptotic_classical,
    )
