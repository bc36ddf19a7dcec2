"""Polytope input files: a minimal JSON document, hand-authorable and exact.

Top-level fields: ``name`` (string), ``dim`` (integer), ``vertices`` (array
of arrays).  Coordinates are integers or strings "p/q" with q > 0; float
literals are rejected outright so no inexact value can enter the pipeline.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .linalg import Vector
from .polytope import Polytope, validate

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


@dataclass(frozen=True)
class PolytopeFile:
    name: str
    dim: int
    vertices: tuple[Vector, ...]


def _reject_float(token: str) -> None:
    raise InputError(f"floating-point literal {token!r} not accepted; use integers or \"p/q\"")


def _parse_coordinate(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: boolean is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise InputError(f"{where}: malformed rational {value!r}")
        if "/" in value:
            p, q = value.split("/")
            if int(q) == 0:
                raise InputError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(p), int(q))
        return Fraction(int(value))
    raise InputError(f"{where}: coordinate must be an integer or \"p/q\" string, "
                     f"got {type(value).__name__}")


def parse_polytope_text(text: str, source: str = "<string>") -> PolytopeFile:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("name", "dim", "vertices"):
        if key not in doc:
            raise InputError(f"{source}: missing field {key!r}")
    name = doc["name"]
    if not isinstance(name, str):
        raise InputError(f"{source}: name must be a string")
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise InputError(f"{source}: dim must be a non-negative integer")
    raw_vertices = doc["vertices"]
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise InputError(f"{source}: vertices must be a non-empty array")
    vertices = []
    for vi, row in enumerate(raw_vertices):
        if not isinstance(row, list):
            raise InputError(f"{source}: vertex {vi} must be an array")
        if len(row) != dim:
            raise InputError(f"{source}: vertex {vi} has {len(row)} coordinates, expected {dim}")
        vertices.append(tuple(
            _parse_coordinate(value, f"{source}: vertex {vi}, coordinate {ci}")
            for ci, value in enumerate(row)))
    return PolytopeFile(name=name, dim=dim, vertices=tuple(vertices))


def parse_polytope_file(path: str | Path) -> PolytopeFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_polytope_text(text, source=str(path))


def load_polytope(path: str | Path) -> Polytope:
    """Parse and validate in one step."""
    pf = parse_polytope_file(path)
    return validate(pf.vertices, name=pf.name)


def coordinate_string(x: Fraction) -> str:
    return str(x)  # Fraction renders as "p/q" or "n", matching the input grammar


def polytope_to_json(P: Polytope) -> dict:
    return {
        "name": P.name or "(unnamed)",
        "dim": P.ambient_dim,
        "vertices": [[coordinate_string(x) for x in v] for v in P.vertices],
    }
