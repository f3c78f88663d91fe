import math
from typing import Any, Literal

from pydantic import BaseModel, Field, validator


class MatrixPayload(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    re: list[float]
    im: list[float]

    @validator("im")
    @classmethod
    def validate_lengths(cls, value: list[float], values: dict[str, Any]) -> list[float]:
        expected = values.get("rows", 0) * values.get("cols", 0)
        if len(value) != expected or len(values.get("re", [])) != expected:
            raise ValueError(f"re/im must both hold rows*cols = {expected} entries")
        if not all(math.isfinite(x) for x in value + values.get("re", [])):
            raise ValueError("matrix entries must be finite")
        return value


class KetPayload(BaseModel):
    re: list[float] = Field(min_items=1)
    im: list[float] = Field(min_items=1)

    @validator("im")
    @classmethod
    def validate_same_length(cls, value: list[float], values: dict[str, Any]) -> list[float]:
        if len(value) != len(values.get("re", [])):
            raise ValueError("re and im must have equal length")
        if not all(math.isfinite(x) for x in value + values.get("re", [])):
            raise ValueError("ket amplitudes must be finite")
        return value


class BlockInfo(BaseModel):
    two_j: int = Field(ge=0)
    d_R: int = Field(ge=1)
    d_P: int = Field(ge=1)
    offset: int = Field(ge=0)


class SchurHeader(BaseModel):
    n_qubits: int = Field(ge=1)
    blocks: list[BlockInfo]
    path_labels: list[list[list[int]]]
    unitary_file: str | None = None
    generated_at: str | None = None


class ClassicalSchemeFile(BaseModel):
    type: Literal["classical"] = "classical"
    n: int = Field(ge=1)
    superop: Literal["su2", "perm", "both"]
    construction: str = Field(min_length=1)
    params: dict[str, Any] = Field(default_factory=dict)
    states: list[KetPayload] = Field(min_items=2)
    rho0: MatrixPayload
    generated_at: str | None = None

    @validator("states")
    @classmethod
    def validate_state_dims(cls, value: list[KetPayload], values: dict[str, Any]) -> list[KetPayload]:
        n = values.get("n")
        if n is not None and any(len(s.re) != 2**n for s in value):
            raise ValueError(f"every state must have dimension 2^{n}")
        return value


class QuantumSchemeFile(BaseModel):
    type: Literal["quantum"] = "quantum"
    n: int = Field(ge=1)
    superop: Literal["su2", "perm", "both"]
    construction: str = Field(min_length=1)
    params: dict[str, Any] = Field(default_factory=dict)
    logical_dim: int = Field(ge=1)
    block: BlockInfo
    isometry: MatrixPayload
    ancilla: KetPayload | None = None
    rho0: MatrixPayload
    generated_at: str | None = None

    @validator("isometry")
    @classmethod
    def validate_isometry_shape(cls, value: MatrixPayload, values: dict[str, Any]) -> MatrixPayload:
        n, logical = values.get("n"), values.get("logical_dim")
        if n is not None and logical is not None and (value.rows, value.cols) != (2**n, logical):
            raise ValueError(f"isometry must be 2^{n} x {logical}")
        return value


class CertReportModel(BaseModel):
    scheme_id: str
    kind: Literal["classical", "quantum"]
    srf: str
    n_states: int
    orthogonality_defect: float
    privacy_defect: float
    privacy_metric: Literal["pairwise", "centroid"]
    rho0_residual: float
    holevo_bits: float
    bound_used: int
    passed: bool
    tolerance: float
    holevo_tolerance: float
    min_fidelity: float | None = None
    generated_at: str | None = None


class CapacityRowModel(BaseModel):
    n_qubits: int
    srf: str
    quantum_qubits: float
    classical_cbits: float
    scheme_sizes: dict[str, int]
    best_construction: str
    classical_bound: int
    asymptotic_quantum: float
    asymptotic_classical: float
    below_asymptotic_quantum: bool
    below_asymptotic_classical: bool
    details: dict[str, str] = Field(default_factory=dict)


class TrialRecordModel(BaseModel):
    trial: int = Field(ge=0)
    sent: int
    bob: int
    eve: int


class ProtocolSummary(BaseModel):
    scheme: str
    n_trials: int
    seed: int
    eve_strategy: Literal["helstrom", "fixed"]
    designated_pair: list[int] | None = None
    bob_success_rate: float
    eve_guess_rate: float
    eve_guess_ci95: list[float]
    eve_sigma: float
    eve_mutual_information_bits: float
    generated_at: str | None = None


class ReuseSummary(BaseModel):
    scheme: str
    n_trials: int
    seed: int
    eve_success_rate: float
    eve_success_ci95: list[float]
    helstrom_success: float
    single_use_success: float
    advantage: float
    generated_at: str | None = None


class RunConfig(BaseModel):
    command: str
    output_format: Literal["json", "text"] = "json"
    n: int | None = Field(default=None, ge=1)
    srf: Literal["su2", "perm", "sn", "both"] | None = None
    construction: str | None = None
    jmin: str | None = None
    j: str | None = None
    irreps: list[str] | None = None
    seed: int = Field(ge=0)
    tol: float | None = Field(default=None, gt=0)
    n_random: int | None = Field(default=None, ge=1)
    trials: int | None = Field(default=None, ge=1)
    n_min: int | None = Field(default=None, ge=1)
    n_max: int | None = Field(default=None, ge=1)

    @validator("n_max")
    @classmethod
    def validate_range(cls, value: int | None, values: dict[str, Any]) -> int | None:
        low = values.get("n_min")
        if value is not None and low is not None and value < low:
            raise ValueError("n_max must be >= n_min")
        return value
