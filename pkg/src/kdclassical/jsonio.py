"""JSON schemas for matrices, states, and vector families.

Complex numbers travel as two-element [re, im] arrays.  Serialization is
deterministic: keys sorted, floats rendered by Python's shortest
roundtrip-exact repr, fixed separators.
"""

from __future__ import annotations

import json
import math

import numpy as np


def dumps(payload) -> str:
    """Deterministic JSON encoding (sorted keys, fixed separators)."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def matrix_payload(U: np.ndarray) -> dict:
    return {
        "d": int(U.shape[0]),
        "entries": [[complex_pair(z) for z in row] for row in np.asarray(U)],
    }


def state_payload(psi: np.ndarray) -> dict:
    return {"d": int(len(psi)), "coeffs": [complex_pair(z) for z in np.asarray(psi)]}


def _as_pair(value, what: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ValueError(f"{what} must be a two-element [re, im] array, got {value!r}")
    z = complex(float(value[0]), float(value[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return z


def parse_matrix(obj) -> np.ndarray:
    """Parse a {"d": ..., "entries": ...} object into a complex matrix."""
    if not isinstance(obj, dict):
        raise ValueError("matrix file must hold a JSON object")
    d = obj.get("d")
    entries = obj.get("entries")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f'matrix field "d" must be a positive integer, got {d!r}')
    if not isinstance(entries, list) or len(entries) != d:
        raise ValueError(f'matrix field "entries" must be an array of {d} rows')
    out = np.zeros((d, d), dtype=np.complex128)
    for j, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != d:
            raise ValueError(f"matrix row {j} must be an array of {d} entries")
        for k, cell in enumerate(row):
            out[j, k] = _as_pair(cell, f"matrix entry ({j}, {k})")
    return out


def parse_state(obj, renormalize: bool = True) -> np.ndarray:
    """Parse a {"d": ..., "coeffs": ...} object into a state vector.

    The parsed vector must have unit norm within 1e-8; it is then rescaled
    to exact unit norm so downstream exact-tolerance identities hold.
    """
    if not isinstance(obj, dict):
        raise ValueError("state file must hold a JSON object")
    d = obj.get("d")
    coeffs = obj.get("coeffs")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f'state field "d" must be a positive integer, got {d!r}')
    if not isinstance(coeffs, list) or len(coeffs) != d:
        raise ValueError(f'state field "coeffs" must be an array of {d} entries')
    out = np.array([_as_pair(c, f"state coefficient {i}") for i, c in enumerate(coeffs)])
    norm = float(np.linalg.norm(out))
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state is not normalized: ||psi|| = {norm!r}")
    return out / norm if renormalize else out


def parse_vectors(obj) -> np.ndarray:
    """Parse a {"vectors": [[[re, im], ...], ...]} object into a family."""
    if not isinstance(obj, dict):
        raise ValueError("vector file must hold a JSON object")
    vectors = obj.get("vectors")
    if not isinstance(vectors, list) or not vectors:
        raise ValueError('vector field "vectors" must be a nonempty array')
    width = None
    rows = []
    for i, vec in enumerate(vectors):
        if not isinstance(vec, list) or not vec:
            raise ValueError(f"vector {i} must be a nonempty array")
        if width is None:
            width = len(vec)
        elif len(vec) != width:
            raise ValueError(f"vector {i} has length {len(vec)}, expected {width}")
        rows.append([_as_pair(c, f"vector {i} entry {j}") for j, c in enumerate(vec)])
    return np.array(rows, dtype=np.complex128)


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON: {exc}") from exc
