"""
JSON files for states and bases.

State file:  {"dim": d, "entries": [[[re, im], ...], ...], "physical": bool}
Basis file:  {"dim": d, "label": "...", "kets": [[[re, im], ...], ...]}

Floats are written with Python's shortest round-trip repr, so reading back a
written file gives identical doubles.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, TextIO, Union

import numpy as np

from .errors import InputError, MubCoherenceError
from .linalg import DensityMatrix, HermitianOperator, StateLike, hermitian_operator, validate_density
from .mub import OrthonormalBasis
from .mubcoh_config import MAX_DIM, VALIDATION_TOL

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _encode(values: np.ndarray) -> List:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(values)]


def _decode(rows, what: str) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as e:
        raise ValueError(f"{what} must be nested [re, im] pairs: {e}")
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise ValueError(f"{what} must have shape (d, d, 2), got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_dict(state: StateLike) -> Dict[str, Any]:
    physical = state.physical if isinstance(state, HermitianOperator) else True
    return {"dim": state.dim, "entries": _encode(state.mat), "physical": physical}


def basis_to_dict(basis: OrthonormalBasis) -> Dict[str, Any]:
    return {"dim": basis.dim, "label": basis.label, "kets": _encode(np.stack(basis.kets))}


def write_json(data: Dict[str, Any], out: TextIO) -> None:
    json.dump(data, out, indent=2)
    out.write("\n")


def write_state(state: StateLike, out: TextIO) -> None:
    write_json(state_to_dict(state), out)


def write_basis(basis: OrthonormalBasis, out: TextIO) -> None:
    write_json(basis_to_dict(basis), out)


def _load(path: PathLike) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise InputError(path, "file not found")
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(path, f"cannot parse JSON: {e}")
    if not isinstance(data, dict):
        raise InputError(path, "top level must be a JSON object")
    return data


def _check_dim(path: PathLike, data: Dict[str, Any], shape) -> None:
    dim = data.get("dim")
    if dim is not None and dim != shape[0]:
        raise InputError(path, f"declared dim {dim} does not match entries of size {shape[0]}")
    if shape[0] > MAX_DIM:
        raise InputError(path, f"dimension {shape[0]} exceeds the supported maximum {MAX_DIM}")


def read_state(path: PathLike, require_physical: bool = True,
               tol: float = VALIDATION_TOL) -> Union[DensityMatrix, HermitianOperator]:
    """
    Load and validate a state file.

    Raises:
        InputError: unreadable file, malformed JSON, or a failed state check
            (the message names the failing invariant)
    """
    data = _load(path)
    try:
        entries = _decode(data.get("entries"), "entries")
        _check_dim(path, data, entries.shape)
        if require_physical:
            state = validate_density(entries, tol)
        else:
            state = hermitian_operator(entries, tol)
    except InputError:
        raise
    except (MubCoherenceError, ValueError) as e:
        raise InputError(path, str(e))
    logger.debug(f"Loaded {state.dim}x{state.dim} state from {path}")
    return state


def read_basis(path: PathLike, renormalize: bool = False, tol: float = VALIDATION_TOL) -> OrthonormalBasis:
    """
    Load and validate a basis file.

    Raises:
        InputError: unreadable file, malformed JSON, or kets that are not orthonormal
    """
    data = _load(path)
    label = str(data.get("label", Path(path).stem))
    try:
        kets = _decode(data.get("kets"), "kets")
        _check_dim(path, data, kets.shape)
        basis = OrthonormalBasis.from_kets(label, kets, tol=tol, renormalize=renormalize)
    except InputError:
        raise
    except (MubCoherenceError, ValueError) as e:
        raise InputError(path, str(e))
    logger.debug(f"Loaded basis '{label}' of dimension {basis.dim} from {path}")
    return basis
