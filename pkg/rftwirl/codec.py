"""
Matrix wire formats.

Binary: b"RFTW", version byte 1, little-endian uint32 rows and cols, then
rows*cols (re, im) pairs of little-endian float64 in row-major order.
JSON mirror: {"rows": r, "cols": c, "re": [...], "im": [...]}.
"""

import struct
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from rftwirl.errors import CodecError
from rftwirl.matcore import Matrix, as_matrix

MAGIC = b"RFTW"
VERSION = 1
_HEADER = struct.Struct("<4sBII")


def encode_matrix(mat: npt.ArrayLike) -> bytes:
    data = as_matrix(mat)
    rows, cols = data.shape
    body = np.ascontiguousarray(data, dtype="<c16").tobytes()
    return _HEADER.pack(MAGIC, VERSION, rows, cols) + body


def decode_matrix(blob: bytes) -> Matrix:
    if len(blob) < _HEADER.size:
        raise CodecError("Matrix blob is shorter than its header")
    magic, version, rows, cols = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise CodecError(f"Bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise CodecError(f"Unsupported matrix format version {version}")
    if rows < 1 or cols < 1:
        raise CodecError(f"Invalid matrix shape {rows}x{cols}")
    expected = _HEADER.size + rows * cols * 16
    if len(blob) != expected:
        raise CodecError(f"Matrix blob has {len(blob)} bytes, expected {expected}")
    values = np.frombuffer(blob, dtype="<c16", offset=_HEADER.size)
    mat = values.astype(np.complex128).reshape(rows, cols)
    if not np.all(np.isfinite(mat)):
        raise CodecError("Matrix blob contains non-finite entries")
    return mat


def write_matrix(path: str | Path, mat: npt.ArrayLike) -> None:
    Path(path).write_bytes(encode_matrix(mat))


def read_matrix(path: str | Path) -> Matrix:
    return decode_matrix(Path(path).read_bytes())


def _combine(re: npt.NDArray[np.float64], im: npt.NDArray[np.float64]) -> Matrix:
    # assigning parts keeps signed zeros bit-exact
    out = np.empty(re.shape, dtype=np.complex128)
    out.real = re
    out.imag = im
    return out


def matrix_to_json(mat: npt.ArrayLike) -> dict[str, Any]:
    data = as_matrix(mat)
    rows, cols = data.shape
    flat = data.reshape(-1)
    return {
        "rows": int(rows),
        "cols": int(cols),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def matrix_from_json(payload: dict[str, Any]) -> Matrix:
    try:
        rows = int(payload["rows"])
        cols = int(payload["cols"])
        re = np.asarray(payload["re"], dtype=np.float64)
        im = np.asarray(payload["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise CodecError(f"Malformed matrix payload: {exc}") from exc
    if rows < 1 or cols < 1 or re.shape != (rows * cols,) or im.shape != re.shape:
        raise CodecError(f"Matrix payload does not describe a {rows}x{cols} matrix")
    mat = _combine(re, im).reshape(rows, cols)
    if not np.all(np.isfinite(mat)):
        raise CodecError("Matrix payload contains non-finite entries")
    return np.asarray(mat, dtype=np.complex128)


def ket_to_json(ket: npt.ArrayLike) -> dict[str, list[float]]:
    vec = np.asarray(ket, dtype=np.complex128).reshape(-1)
    return {"re": [float(x) for x in vec.real], "im": [float(x) for x in vec.imag]}


def ket_from_json(payload: dict[str, Any]) -> npt.NDArray[np.complex128]:
    try:
        re = np.asarray(payload["re"], dtype=np.float64)
        im = np.asarray(payload["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise CodecError(f"Malformed ket payload: {exc}") from exc
    if re.ndim != 1 or re.shape != im.shape or re.size == 0:
        raise CodecError("Ket payload re/im arrays must be equal-length and non-empty")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise CodecError("Ket payload contains non-finite amplitudes")
    return _combine(re, im)
