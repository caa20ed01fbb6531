"""Reading and writing complexes as canonical JSON.

The format is documented in ``docs/formats.md``.  Emission is canonical:
sorted keys, fixed separators, ``\\n`` line ending — so emitting, parsing and
emitting again reproduces the bytes exactly.
"""

from __future__ import annotations

import json
from typing import Any

from .core import PolygonalComplex, Truncation, build_complex
from .errors import ComplexError

__all__ = ["emit", "parse", "save", "load", "FORMAT_VERSION"]

FORMAT_VERSION = 1


def _complex_payload(X: PolygonalComplex) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "vertices": X.vertex_count,
        "edges": [list(e) for e in X.edges],
        "faces": [list(f) for f in X.faces],
        "apartments": [sorted(ap.faces) for ap in X.apartments],
    }
    t = X.truncation
    if t is not None:
        payload["truncation"] = {
            "trusted_faces": sorted(t.trusted_faces),
            "true_degrees": {
                "vertex": {str(k): v for k, v in sorted(t.true_vertex_degree.items())},
                "edge": {str(k): v for k, v in sorted(t.true_edge_degree.items())},
                "face": {str(k): v for k, v in sorted(t.true_face_degree.items())},
            },
        }
    if X.meta:
        payload["meta"] = X.meta
    return payload


def emit(X: PolygonalComplex) -> str:
    """Serialize a complex to its canonical JSON text."""
    return json.dumps(_complex_payload(X), sort_keys=True, separators=(",", ":")) + "\n"


def parse(text: str) -> PolygonalComplex:
    """Parse canonical JSON text back into a validated complex."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ComplexError("top-level JSON value must be an object")
    version = payload.get("version")
    if version != FORMAT_VERSION:
        raise ComplexError(f"unsupported format version {version!r}")
    for key in ("vertices", "edges", "faces"):
        if key not in payload:
            raise ComplexError(f"missing required key {key!r}")

    truncation = None
    if "truncation" in payload:
        t = payload["truncation"]
        if not isinstance(t, dict) or "trusted_faces" not in t:
            raise ComplexError("truncation block must carry trusted_faces")
        degrees = t.get("true_degrees", {})
        truncation = Truncation(
            trusted_faces=frozenset(t["trusted_faces"]),
            true_vertex_degree={int(k): v for k, v in degrees.get("vertex", {}).items()},
            true_edge_degree={int(k): v for k, v in degrees.get("edge", {}).items()},
            true_face_degree={int(k): v for k, v in degrees.get("face", {}).items()},
        )

    # Faces re-intern their edges in order; listing the edges explicitly and
    # first preserves edge ids across a round trip.
    X = build_complex(
        vertex_count=payload["vertices"],
        faces=[tuple(f) for f in payload["faces"]],
        edges=[tuple(e) for e in payload["edges"]],
        apartments=payload.get("apartments", []),
        truncation=truncation,
        meta=payload.get("meta"),
    )
    return X


def save(X: PolygonalComplex, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(emit(X))


def load(path: str) -> PolygonalComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())
