"""Canonical JSON for systems, graded algebras, triples, and reports.

Conventions: complex scalars as two-element arrays [re, im]; matrices
row-major; object keys sorted; floats rendered with 17 significant digits
(round-trip exact); NaN/Inf rejected.  Identical values always serialize to
byte-identical text.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .classify import Triple
from .graded import GradedAlgebra
from .systems import SubproductSystem, SystemLabel
from .tensorlinalg import Subspace


class SerializationError(ValueError):
    pass


# -- canonical text emission -------------------------------------------------


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise SerializationError("NaN/Inf are not admitted in canonical JSON")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return repr(float(f"{x:.17g}"))


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed float formatting."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, parts: list) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(_format_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _emit([float(obj.real), float(obj.imag)], parts)
    elif isinstance(obj, dict):
        keys = sorted(str(k) for k in obj)
        lookup = {str(k): v for k, v in obj.items()}
        parts.append("{")
        for i, k in enumerate(keys):
            if i:
                parts.append(",")
            parts.append(json.dumps(k))
            parts.append(":")
            _emit(lookup[k], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _emit(item, parts)
        parts.append("]")
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), parts)
    else:
        raise SerializationError(f"cannot serialize {type(obj).__name__}")


# -- complex matrices --------------------------------------------------------


def complex_to_json(z) -> list:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SerializationError("NaN/Inf are not admitted")
    return [z.real, z.imag]


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[complex_to_json(m[i, j]) for j in range(m.shape[1])]
            for i in range(m.shape[0])]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise SerializationError(f"not a complex scalar: {v!r}")


def matrix_from_json(rows, shape=None) -> np.ndarray:
    try:
        m = np.array([[complex_from_json(x) for x in row] for row in rows],
                     dtype=complex)
    except (TypeError, SerializationError) as exc:
        raise SerializationError(f"malformed matrix: {exc}") from exc
    if shape is not None and m.shape != shape:
        raise SerializationError(f"expected shape {shape}, got {m.shape}")
    return m


# -- domain objects ----------------------------------------------------------


def system_to_json(sys: SubproductSystem) -> dict:
    return {
        "kind": "subproduct_system",
        "horizon": sys.horizon,
        "beta": {f"{s},{t}": matrix_to_json(b) for (s, t), b in sys.beta.items()},
    }


def graded_to_json(g: GradedAlgebra) -> dict:
    return {
        "kind": "graded_algebra",
        "horizon": g.horizon,
        "M": {f"{s},{t}": matrix_to_json(m) for (s, t), m in g.M.items()},
    }


def triple_to_json(t: Triple) -> dict:
    return {
        "kind": "triple",
        "E2": [
            [complex_to_json(z) for z in t.E2.basis[:, i]]
            for i in range(t.E2.basis.shape[1])
        ],
        "E3": [
            [complex_to_json(z) for z in t.E3.basis[:, i]]
            for i in range(t.E3.basis.shape[1])
        ],
    }


def _parse_index_key(key: str) -> tuple:
    try:
        s, t = key.split(",")
        return int(s), int(t)
    except ValueError as exc:
        raise SerializationError(f"bad index key {key!r}") from exc


def system_from_json(data: dict) -> SubproductSystem:
    try:
        horizon = int(data["horizon"])
        beta = {
            _parse_index_key(k): matrix_from_json(v, (4, 2))
            for k, v in data["beta"].items()
        }
        return SubproductSystem(horizon=horizon, beta=beta)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed subproduct system: {exc}") from exc


def graded_from_json(data: dict) -> GradedAlgebra:
    try:
        horizon = int(data["horizon"])
        maps = {
            _parse_index_key(k): matrix_from_json(v, (2, 4))
            for k, v in data["M"].items()
        }
        return GradedAlgebra(horizon=horizon, M=maps)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed graded algebra: {exc}") from exc


def triple_from_json(data: dict) -> Triple:
    try:
        e2 = matrix_from_json(data["E2"]).T  # stored as a list of vectors
        e3 = matrix_from_json(data["E3"]).T
        if e2.shape[0] != 4 or e3.shape[0] != 8:
            raise SerializationError("E2 vectors must be 4-dim, E3 vectors 8-dim")
        return Triple(
            E2=Subspace.from_spanning(e2, ambient_dim=4),
            E3=Subspace.from_spanning(e3, ambient_dim=8),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed triple: {exc}") from exc


def to_json(obj) -> dict:
    if isinstance(obj, SubproductSystem):
        return system_to_json(obj)
    if isinstance(obj, GradedAlgebra):
        return graded_to_json(obj)
    if isinstance(obj, Triple):
        return triple_to_json(obj)
    raise SerializationError(f"cannot serialize {type(obj).__name__}")


def from_json(data):
    """Kind-dispatched parse of any top-level payload."""
    if not isinstance(data, dict):
        raise SerializationError("top-level JSON payload must be an object")
    kind = data.get("kind")
    if kind == "subproduct_system":
        return system_from_json(data)
    if kind == "graded_algebra":
        return graded_from_json(data)
    if kind == "triple" or (kind is None and "E2" in data and "E3" in data):
        return triple_from_json(data)
    raise SerializationError(f"unknown payload kind {kind!r}")


def label_to_json(label: SystemLabel) -> dict:
    out: dict = {"label": label.label}
    if label.lam is not None:
        out["lambda"] = complex_to_json(label.lam)
    return out
