"""JSON encoding of surfaces, branch divisors, bundles and reports.

Rationals are written as ``{"num": p, "den": q}``; plain integers are
accepted wherever a rational is expected.  Report objects (any dataclass or
enum of this package) are written with a ``"type"`` tag so that
:func:`loads` rebuilds them exactly.

Input documents are checked against :data:`INPUT_SCHEMA` with ``jsonschema``.
An input names its surface either through ``"catalog"`` or as a full
``"surface"`` record, and lists branch curves either as catalog references
``{"curve": "cubic", "m": 5}`` or as full records.  Optional ``"bundle"``
fixes the classifying data ``B`` and ``b``.
"""
from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from typing import Any

import jsonschema

from .abgroup import AbGroup, IntMatrix
from .catalog import catalog
from .errors import ValidationError
from .orbsurface import BranchCurve, OrbSurface, SingularPoint, Violation
from .seifert import SeifertData

__all__ = [
    "INPUT_SCHEMA",
    "ParsedInput",
    "encode",
    "decode",
    "dumps",
    "loads",
    "parse_input",
    "surface_to_json",
    "branch_to_json",
    "input_document",
]

_RATIONAL = {
    "anyOf": [
        {"type": "integer"},
        {
            "type": "object",
            "properties": {"num": {"type": "integer"}, "den": {"type": "integer", "not": {"const": 0}}},
            "required": ["num", "den"],
            "additionalProperties": False,
        },
    ]
}
_INT_VEC = {"type": "array", "items": {"type": "integer"}}
_PROVENANCE = {"type": "object", "additionalProperties": {"type": "string"}}

INPUT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "surface and branch divisor",
    "type": "object",
    "properties": {
        "catalog": {"type": "string"},
        "surface": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "weil_rank": {"type": "integer", "minimum": 0},
                "pairing": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
                "canonical": _INT_VEC,
                "pic_basis": {"type": "array", "items": _INT_VEC},
                "singular_points": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "id": {"type": "string"},
                            "local_order": {"type": "integer", "minimum": 2},
                            "restriction": _INT_VEC,
                        },
                        "required": ["id", "local_order", "restriction"],
                        "additionalProperties": False,
                    },
                },
                "ample_cone_tests": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
                "flags": _PROVENANCE,
            },
            "required": ["name", "weil_rank", "pairing", "canonical", "pic_basis"],
            "additionalProperties": False,
        },
        "branch": {
            "type": "array",
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "properties": {
                            "curve": {"type": "string"},
                            "m": {"type": "integer", "minimum": 2},
                            "id": {"type": "string"},
                        },
                        "required": ["curve", "m"],
                        "additionalProperties": False,
                    },
                    {
                        "type": "object",
                        "properties": {
                            "id": {"type": "string"},
                            "degree": _INT_VEC,
                            "genus": {"type": "integer", "minimum": 0},
                            "multiplicity": {"type": "integer", "minimum": 2},
                            "through_points": {"type": "array", "items": {"type": "string"}},
                            "attestations": _PROVENANCE,
                        },
                        "required": ["id", "degree", "genus", "multiplicity"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "bundle": {
            "type": "object",
            "properties": {"B": _INT_VEC, "b": {"type": "object", "additionalProperties": {"type": "integer"}}},
            "required": ["B", "b"],
            "additionalProperties": False,
        },
    },
    "oneOf": [{"required": ["catalog"]}, {"required": ["surface"]}],
    "additionalProperties": False,
}


def _rational(x) -> Fraction:
    if isinstance(x, dict):
        return Fraction(x["num"], x["den"])
    return Fraction(x)


def _rat_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def surface_to_json(s: OrbSurface) -> dict:
    return {
        "name": s.name,
        "weil_rank": s.weil_rank,
        "pairing": [[_rat_json(x) for x in row] for row in s.pairing],
        "canonical": list(s.canonical),
        "pic_basis": [list(v) for v in s.pic_basis],
        "singular_points": [
            {"id": p.id, "local_order": p.local_order, "restriction": list(p.restriction)} for p in s.singular_points
        ],
        "ample_cone_tests": [[_rat_json(x) for x in v] for v in s.ample_cone_tests],
        "flags": dict(s.flags),
    }


def _surface_from_json(d: dict) -> OrbSurface:
    return OrbSurface(
        name=d["name"],
        weil_rank=d["weil_rank"],
        pairing=[[_rational(x) for x in row] for row in d["pairing"]],
        canonical=d["canonical"],
        pic_basis=d["pic_basis"],
        singular_points=tuple(SingularPoint(p["id"], p["local_order"], p["restriction"])
                              for p in d.get("singular_points", [])),
        ample_cone_tests=[[_rational(x) for x in v] for v in d.get("ample_cone_tests", [])],
        flags=d.get("flags", {}),
    )


def branch_to_json(c: BranchCurve) -> dict:
    return {
        "id": c.id,
        "degree": list(c.degree),
        "genus": c.genus,
        "multiplicity": c.multiplicity,
        "through_points": sorted(c.through_points),
        "attestations": dict(c.attestations),
    }


@dataclasses.dataclass(frozen=True)
class ParsedInput:
    surface: OrbSurface
    delta: tuple[BranchCurve, ...]
    bundle: SeifertData | None
    catalog_name: str | None = None


def _schema_violations(doc) -> list[Violation]:
    v = jsonschema.Draft202012Validator(INPUT_SCHEMA)
    out = []
    for err in sorted(v.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path))):
        path = "/".join(str(p) for p in err.absolute_path) or "<root>"
        out.append(Violation("schema", f"{path}: {err.message}"))
    return out


def parse_input(doc: dict) -> ParsedInput:
    """Validate an input document and expand catalog references."""
    bad = _schema_violations(doc)
    if bad:
        raise ValidationError(bad)
    entry = None
    if "catalog" in doc:
        try:
            entry = catalog(doc["catalog"])
        except KeyError as e:
            raise ValidationError([Violation("catalog", str(e.args[0]))]) from None
        s = entry.surface
    else:
        s = _surface_from_json(doc["surface"])
    delta = []
    for i, item in enumerate(doc.get("branch", [])):
        if "curve" in item:
            if entry is None:
                raise ValidationError([Violation("schema", f"branch/{i}: curve references need a catalog surface")])
            try:
                delta.append(entry.curve(item["curve"]).branch(item["m"], item.get("id")))
            except KeyError as e:
                raise ValidationError([Violation("catalog", f"branch/{i}: {e.args[0]}")]) from None
        else:
            delta.append(BranchCurve(item["id"], item["degree"], item["genus"], item["multiplicity"],
                                     frozenset(item.get("through_points", [])), item.get("attestations", {})))
    ids = [c.id for c in delta]
    if len(set(ids)) != len(ids):
        raise ValidationError([Violation("branch-ids", f"duplicate branch curve ids {ids}; give an explicit id")])
    bundle = None
    if "bundle" in doc:
        try:
            bundle = SeifertData(s, tuple(delta), doc["bundle"]["B"], doc["bundle"]["b"])
        except ValueError as e:
            raise ValidationError([Violation("bundle", str(e))]) from None
    return ParsedInput(s, tuple(delta), bundle, entry.surface.name if entry else None)


def input_document(s: OrbSurface, delta, bundle: SeifertData | None = None) -> dict:
    """The full (catalog-free) input document describing ``(s, delta)`` and optionally a bundle."""
    doc = {"surface": surface_to_json(s), "branch": [branch_to_json(c) for c in delta]}
    if bundle is not None:
        doc["bundle"] = {"B": list(bundle.B), "b": dict(bundle.b)}
    return doc


# tagged encoding of report objects

def _registry() -> dict[str, type]:
    from . import classify, ke, orbsurface, rhs, seifert, topology

    out = {}
    for mod in (orbsurface, seifert, topology, rhs, classify, ke):
        for name in dir(mod):
            obj = getattr(mod, name)
            if isinstance(obj, type) and (dataclasses.is_dataclass(obj) or issubclass(obj, enum.Enum)):
                out[obj.__name__] = obj
    out["AbGroup"] = AbGroup
    out["IntMatrix"] = IntMatrix
    return out


def encode(obj) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return _rat_json(obj)
    if isinstance(obj, enum.Enum):
        return {"type": type(obj).__name__, "value": obj.value}
    if dataclasses.is_dataclass(obj):
        d = {"type": type(obj).__name__}
        for f in dataclasses.fields(obj):
            d[f.name] = encode(getattr(obj, f.name))
        return d
    if isinstance(obj, (frozenset, set)):
        return sorted(encode(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(data, registry: dict[str, type] | None = None) -> Any:
    registry = registry or _registry()
    if isinstance(data, list):
        return tuple(decode(x, registry) for x in data)
    if not isinstance(data, dict):
        return data
    if set(data) == {"num", "den"}:
        return Fraction(data["num"], data["den"])
    if "type" in data and data["type"] in registry:
        cls = registry[data["type"]]
        if issubclass(cls, enum.Enum):
            return cls(data["value"])
        kwargs = {k: decode(v, registry) for k, v in data.items() if k != "type"}
        init = {f.name for f in dataclasses.fields(cls) if f.init}
        return cls(**{k: v for k, v in kwargs.items() if k in init})
    return {k: decode(v, registry) for k, v in data.items()}


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent."""
    return json.dumps(encode(obj), sort_keys=True, indent=2)


def loads(text: str) -> Any:
    return decode(json.loads(text))
