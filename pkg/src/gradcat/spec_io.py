"""Loading JSON spec files: functors, category instances, chains, squares
and suite configurations."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import jsonschema

from gradcat.cats import IDEMPOTENT, Z2, BoolCat, MSetCat, PointedSetCat, PosCat, RelCat, SetCat, VecCat
from gradcat.errors import (
    ContractViolation,
    SpecParseError,
    SpecSchemaError,
    UnknownBuiltin,
    UnsupportedVersion,
)
from gradcat.functors.presentation import Presentation, builtin

SUPPORTED_VERSIONS = (1,)
SUITES = ("grades", "limits", "functor-classify", "adjoint", "absolute", "counterexamples", "all")

_scalar = {"type": ["integer", "string"]}
_term = {
    "type": "object",
    "required": ["op", "args"],
    "properties": {"op": {"type": "string"}, "args": {"type": "array", "items": {"type": "string"}}},
    "additionalProperties": False,
}
_functor_ref = {
    "oneOf": [
        {"type": "string"},
        {"type": "object", "required": ["hom"],
         "properties": {"hom": {}, "base": _scalar}, "additionalProperties": False},
    ]
}

SCHEMA = {
    "type": "object",
    "required": ["version", "kind"],
    "properties": {
        "version": {"type": "integer"},
        "kind": {"enum": ["functor", "category", "chain", "square", "suite"]},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "functor"}}},
         "then": {"oneOf": [
             {"required": ["builtin"], "properties": {"builtin": {"type": "string"}}},
             {"required": ["name", "ops"], "properties": {
                 "name": {"type": "string"},
                 "ops": {"type": "array", "items": {
                     "type": "object", "required": ["sym", "arity"],
                     "properties": {"sym": {"type": "string"},
                                    "arity": {"type": "integer", "minimum": 0}},
                     "additionalProperties": False}},
                 "eqs": {"type": "array", "items": {
                     "type": "object", "required": ["lhs", "rhs"],
                     "properties": {"lhs": _term, "rhs": _term}, "additionalProperties": False}},
             }},
         ]}},
        {"if": {"properties": {"kind": {"const": "category"}}},
         "then": {"required": ["instance"], "properties": {
             "instance": {"type": "string"}, "size": {"type": "integer", "minimum": 0}}}},
        {"if": {"properties": {"kind": {"const": "chain"}}},
         "then": {"required": ["chain", "depth"], "properties": {
             "chain": {"enum": ["ab-mod2k", "un-cycles"]},
             "depth": {"type": "integer", "minimum": 1}}}},
        {"if": {"properties": {"kind": {"const": "square"}}},
         "then": {"required": ["instance", "B", "Bp"], "properties": {
             "instance": {"enum": ["Set", "SetP", "Vec"]},
             "A": {"type": "array", "items": _scalar},
             "base": _scalar,
             "dim": {"type": "integer", "minimum": 0},
             "p": {"type": "integer", "minimum": 2},
             "B": {"type": "array"},
             "Bp": {"type": "array"},
             "functors": {"type": "array", "items": _functor_ref},
         }}},
        {"if": {"properties": {"kind": {"const": "suite"}}},
         "then": {"required": ["suite"], "properties": {
             "suite": {"enum": list(SUITES)},
             "size": {"type": "integer", "minimum": 0},
             "depth": {"type": "integer", "minimum": 1},
             "bound": {"type": "integer", "minimum": 2},
             "guard": {"type": "integer", "minimum": 1},
         }}},
    ],
}


@dataclass(frozen=True)
class SpecFile:
    version: int
    kind: str
    payload: dict
    source: str = "<inline>"


def _json_path(parts) -> str:
    return "/" + "/".join(str(p) for p in parts)


def parse_spec(source: str | Path) -> SpecFile:
    """Read a spec from a path, or from inline JSON text."""
    text, origin = _read(source)
    if not text.strip():
        raise SpecParseError("empty input", origin)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc}", origin) from None
    if not isinstance(doc, dict):
        raise SpecSchemaError("top level must be an object at /", origin)
    if isinstance(doc.get("version"), int) and doc["version"] not in SUPPORTED_VERSIONS:
        raise UnsupportedVersion(f"unsupported version {doc['version']}", origin)
    error = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(SCHEMA).iter_errors(doc))
    if error is not None:
        raise SpecSchemaError(f"schema violation at {_json_path(error.absolute_path)}: {error.message}",
                              origin)
    spec = SpecFile(doc["version"], doc["kind"], doc, origin)
    if spec.kind == "functor":
        resolve_functor(spec)  # surfaces arity mismatches and unknown built-ins now
    elif spec.kind == "category":
        resolve_category(doc["instance"], origin)
    return spec


def _read(source) -> tuple[str, str]:
    if isinstance(source, Path):
        return source.read_text(), str(source)
    stripped = source.lstrip()
    if stripped.startswith("{") or stripped.startswith("[") or not stripped:
        return source, "<inline>"
    path = Path(source)
    if not path.exists():
        raise SpecParseError("no such file", source)
    return path.read_text(), source


def resolve_functor(spec: SpecFile):
    doc = spec.payload
    if "builtin" in doc:
        return functor_by_name(doc["builtin"], spec.source)
    try:
        return Presentation.from_json(doc)
    except ContractViolation as exc:
        where = re.search(r"equation (\d+)", str(exc))
        path = f"/eqs/{where.group(1)}" if where else "/ops"
        raise SpecSchemaError(f"schema violation at {path}: {exc}", spec.source) from None


def functor_by_name(name: str, origin: str = ""):
    try:
        return builtin(name)
    except KeyError:
        raise UnknownBuiltin(f"unknown builtin functor {name!r}", origin) from None


_MONOIDS = {"Z2": Z2, "idempotent": IDEMPOTENT}


def resolve_category(name: str, origin: str = ""):
    """Category instance from its tag, e.g. ``VecGF(3)`` or ``MSet(Z2)``."""
    simple = {"Set": SetCat, "SetP": PointedSetCat, "Pos": PosCat, "Bool": BoolCat}
    if name in simple:
        return simple[name]()
    m = re.fullmatch(r"(VecGF|MSet|OmegaRel)\((.*)\)", name)
    try:
        if m and m.group(1) == "VecGF":
            return VecCat(int(m.group(2)))
        if m and m.group(1) == "MSet" and m.group(2) in _MONOIDS:
            return MSetCat(_MONOIDS[m.group(2)])
        if m and m.group(1) == "OmegaRel":
            return RelCat(tuple(int(a) for a in m.group(2).split(",") if a.strip()))
    except (ValueError, ContractViolation) as exc:
        raise SpecSchemaError(f"bad instance {name!r}: {exc}", origin) from None
    raise UnknownBuiltin(f"unknown category instance {name!r}", origin)


def to_jsonable(value: Any):
    """Witness values as plain JSON (tuples become lists, other objects
    their repr)."""
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)) and not hasattr(value, "_fields"):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "elements") and not callable(value.elements):
        return [to_jsonable(v) for v in value.elements]
    return repr(value)
