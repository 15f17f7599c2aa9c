"""JSON wire format shared by the CLI and any external cross-checker.

Complex numbers travel as two-element arrays [re, im]; matrices as
row-major nested arrays of those pairs; vectors as arrays of pairs; the
4x4 real system as plain rows of floats.  Null-space vectors keep the
component ordering (sigma11, sigma22, Re s, Im s).  Serialization uses
native double repr, so parse/serialize round-trips are lossless.
"""

from __future__ import annotations

import json
import math

import numpy as np


class DocumentError(ValueError):
    """Malformed input document; carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"field '{field}': {message}")


def complex_to_wire(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def ket2_to_wire(v) -> list[list[float]]:
    return [complex_to_wire(z) for z in np.asarray(v).ravel()]


def mat2_to_wire(m) -> list[list[list[float]]]:
    m = np.asarray(m)
    return [[complex_to_wire(m[i, j]) for j in range(2)] for i in range(2)]


def mat4r_to_wire(x) -> list[list[float]]:
    x = np.asarray(x, dtype=float)
    return [[float(v) for v in row] for row in x]


def vec4_to_wire(v) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=float).ravel()]


def eigenpairs_to_wire(pairs) -> list[dict]:
    return [
        {
            "value": complex_to_wire(p.value),
            "vector": ket2_to_wire(p.vector),
            "defective": bool(p.defective),
        }
        for p in pairs
    ]


def _as_finite_float(node, field: str) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise DocumentError(field, f"expected a number, got {type(node).__name__}")
    value = float(node)
    if not math.isfinite(value):
        raise DocumentError(field, "value must be finite")
    return value


def parse_complex(node, field: str) -> complex:
    """Accept [re, im] or a bare real number."""
    if isinstance(node, (int, float)) and not isinstance(node, bool):
        return complex(_as_finite_float(node, field), 0.0)
    if not isinstance(node, list) or len(node) != 2:
        raise DocumentError(field, "expected [re, im]")
    return complex(_as_finite_float(node[0], field), _as_finite_float(node[1], field))


def parse_mat2(doc: dict, field: str) -> np.ndarray:
    if field not in doc:
        raise DocumentError(field, "missing")
    node = doc[field]
    if not isinstance(node, list) or len(node) != 2:
        raise DocumentError(field, "expected a 2x2 matrix as two rows")
    out = np.empty((2, 2), dtype=complex)
    for i, row in enumerate(node):
        if not isinstance(row, list) or len(row) != 2:
            raise DocumentError(field, f"row {i} must hold two entries")
        for j, entry in enumerate(row):
            out[i, j] = parse_complex(entry, f"{field}[{i}][{j}]")
    return out


def load_document(text: str) -> dict:
    """Parse a JSON document, rejecting non-finite constants."""

    def _reject(token: str):
        raise DocumentError("document", f"non-finite constant {token!r} is not allowed")

    try:
        doc = json.loads(text, parse_constant=_reject)
    except json.JSONDecodeError as exc:
        raise DocumentError("document", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document", "top level must be a JSON object")
    return doc


def canonical_json(doc) -> str:
    """Field-order-normalized rendering used for round-trip comparisons."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
