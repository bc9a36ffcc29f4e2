"""Loading JSON problem files.

Schema (stable)::

    {
      "ring": {"vars": ["x", "y"], "relations": [], "order": "grevlex"},
      "W": "x^3 + y^3",
      "cover": ["x + 1", "x - 1"],                  # optional
      "objects": {
        "k":   {"koszul_stab": true},
        "d":   {"diagonal": true},
        "mf":  {"p1": [["x"]], "p0": [["x^2"]]}
      },
      "task_args": {...}                             # per command
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .cech import CechCover
from .curved import MatrixFactorization
from .groebner import FreeModuleMap
from .poly import ParseError, Polynomial, Ring
from .stabilization import diagonal_mf, koszul_stab

_entry = {"type": ["string", "integer"]}
_matrix = {"type": "array", "items": {"type": "array", "items": _entry}}

RING_SCHEMA = {
    "type": "object",
    "required": ["vars"],
    "properties": {
        "vars": {"type": "array", "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*'*$"}, "minItems": 1},
        "relations": {"type": "array", "items": {"type": "string"}},
        "order": {"enum": ["grevlex", "lex"]},
    },
    "additionalProperties": False,
}

OBJECT_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "required": ["p1", "p0"],
            "properties": {"p1": _matrix, "p0": _matrix},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["koszul_stab"],
            "properties": {"koszul_stab": {"const": True}},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["diagonal"],
            "properties": {"diagonal": {"const": True}},
            "additionalProperties": False,
        },
    ]
}

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["ring", "W"],
    "properties": {
        "ring": RING_SCHEMA,
        "W": {"type": ["string", "integer"]},
        "cover": {"type": "array", "items": _entry, "minItems": 1},
        "objects": {"type": "object", "additionalProperties": OBJECT_SCHEMA},
        "task_args": {"type": "object"},
    },
    "additionalProperties": False,
}


class ProblemError(ValueError):
    """Input error with the JSON path of the offending location."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class Problem:
    ring: Ring
    W: Polynomial
    cover: CechCover | None
    objects: dict[str, MatrixFactorization] = field(default_factory=dict)
    task_args: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    def object(self, name: str | None, path: str = "$.task_args") -> MatrixFactorization:
        if name is None:
            if not self.objects:
                raise ProblemError("$.objects", "no objects defined")
            return next(iter(self.objects.values()))
        if name not in self.objects:
            raise ProblemError(path, f"unknown object {name!r} (have {sorted(self.objects)})")
        return self.objects[name]


def _poly(ring: Ring, value, path: str) -> Polynomial:
    try:
        return ring(str(value))
    except ParseError as exc:
        raise ProblemError(path, str(exc)) from None


def parse_matrix(ring: Ring, rows, path: str) -> list[list[Polynomial]]:
    out = []
    for i, row in enumerate(rows):
        out.append([_poly(ring, a, f"{path}[{i}][{j}]") for j, a in enumerate(row)])
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ProblemError(path, "rows have different lengths")
    return out


def parse_ring(data: dict, path: str = "$.ring") -> Ring:
    jsonschema_validate(data, RING_SCHEMA, path)
    try:
        base = Ring(tuple(data["vars"]), (), data.get("order", "grevlex"))
    except ValueError as exc:
        raise ProblemError(path + ".vars", str(exc)) from None
    rels = [_poly(base, r, f"{path}.relations[{k}]") for k, r in enumerate(data.get("relations", []))]
    return Ring(base.variables, tuple(p.terms for p in rels), base.order)


def build_object(ring: Ring, W: Polynomial, desc: dict, path: str) -> MatrixFactorization:
    if desc.get("koszul_stab"):
        try:
            return koszul_stab(W)
        except ValueError as exc:
            raise ProblemError(path, str(exc)) from None
    if desc.get("diagonal"):
        try:
            return diagonal_mf(W)
        except ValueError as exc:
            raise ProblemError(path, str(exc)) from None
    p1 = parse_matrix(ring, desc["p1"], path + ".p1")
    p0 = parse_matrix(ring, desc["p0"], path + ".p0")
    rows1, cols1 = len(p1), len(p1[0]) if p1 else 0
    rows0, cols0 = len(p0), len(p0[0]) if p0 else 0
    if p1 and p0 and (rows1 != cols0 or cols1 != rows0):
        raise ProblemError(path, f"p1 is {rows1}x{cols1} but p0 is {rows0}x{cols0}")
    if not p1:
        cols1 = rows0
    if not p0:
        cols0 = rows1
    return MatrixFactorization(
        FreeModuleMap(ring, rows1, cols1, p1), FreeModuleMap(ring, cols1, rows1, p0), W, check=False)


def jsonschema_validate(data, schema, base: str = "$") -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        loc = base + err.json_path[1:]
        raise ProblemError(loc, err.message)


def load_problem(source: str | Path | dict) -> Problem:
    """Parse and validate a problem; objects are built but not verified."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ProblemError("$", f"invalid JSON: {exc}") from None
    jsonschema_validate(data, PROBLEM_SCHEMA)
    ring = parse_ring(data["ring"])
    W = _poly(ring, data["W"], "$.W")
    cover = None
    if "cover" in data:
        cover = CechCover(ring, tuple(_poly(ring, f, f"$.cover[{k}]") for k, f in enumerate(data["cover"])))
    objects = {name: build_object(ring, W, desc, f"$.objects.{name}")
               for name, desc in data.get("objects", {}).items()}
    return Problem(ring, W, cover, objects, dict(data.get("task_args", {})), data)
