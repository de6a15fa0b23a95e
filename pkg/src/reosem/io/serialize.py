"""Canonical ``.reoml`` model files.

A file is the header line ``reoml 1`` followed by a JSON document with sorted
keys.  Every set is written as a list sorted by the total orders of the core
modules: nodes lexicographically, indexes and constraints by pre-order
traversal.  One model therefore has exactly one byte form.

Indexes are nested arrays: an atom ``FIFO-E[1]`` is ``["FIFO-E", "1"]`` and a
pair is ``[left, right]``.  Colorings are stored by their flow set (the node
set is the structure's), constraints in surface syntax.

The optional ``universe`` field records the data universe the model was built
over.  It is checked on load but is not part of the model value.
"""

from __future__ import annotations

import json
from typing import Union

import jsonschema

from ..automata import AlphaConnector, ConstraintAutomaton, Transition, transition_key, validate_ca
from ..coloring import (
    Atom,
    ConstraintColoring,
    ConstraintCTM,
    EpsilonConnector,
    Index,
    InitializedConstraintNextFunction,
    Pair,
    coloring_from_flow_set,
    coloring_key,
    index_key,
    validate_epsilon,
)
from ..constraints import (
    ConstraintSyntaxError,
    DataUniverse,
    data_items,
    format_constraint,
    parse_constraint,
)
from ..core import ConnectorStructure
from ..errors import MalformedDocument, ModelViolation, SchemaViolation, UnknownVersion

HEADER = "reoml"
VERSION = 1

Model = Union[EpsilonConnector, AlphaConnector]

_NAME = {"type": "string", "minLength": 1}
_NAMES = {"type": "array", "items": _NAME}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "index": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            # atom [name, instance] when the head is a string, else a pair
            "if": {"prefixItems": [{"type": "string"}]},
            "then": {"prefixItems": [{"type": "string"}, _NAME]},
            "else": {"items": {"$ref": "#/$defs/index"}},
        },
    },
    "type": "object",
    "required": ["kind", "nodes", "flow", "initial"],
    "properties": {
        "kind": {"enum": ["epsilon", "alpha"]},
        "universe": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "nodes": _NAMES,
        "flow": {
            "type": "array",
            "items": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2},
        },
        "initial": {"$ref": "#/$defs/index"},
        "indexes": {"type": "array", "items": {"$ref": "#/$defs/index"}},
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "colorings"],
                "additionalProperties": False,
                "properties": {
                    "index": {"$ref": "#/$defs/index"},
                    "colorings": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["flow", "constraint"],
                            "additionalProperties": False,
                            "properties": {"flow": _NAMES, "constraint": {"type": "string"}},
                        },
                    },
                },
            },
        },
        "next": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "flow", "constraint", "target"],
                "additionalProperties": False,
                "properties": {
                    "index": {"$ref": "#/$defs/index"},
                    "flow": _NAMES,
                    "constraint": {"type": "string"},
                    "target": {"$ref": "#/$defs/index"},
                },
            },
        },
        "states": {"type": "array", "items": {"$ref": "#/$defs/index"}},
        "transitions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["source", "firing", "constraint", "target"],
                "additionalProperties": False,
                "properties": {
                    "source": {"$ref": "#/$defs/index"},
                    "firing": _NAMES,
                    "constraint": {"type": "string"},
                    "target": {"$ref": "#/$defs/index"},
                },
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "epsilon"}}},
            "then": {
                "required": ["indexes", "table", "next"],
                "not": {"anyOf": [{"required": ["states"]}, {"required": ["transitions"]}]},
            },
        },
        {
            "if": {"properties": {"kind": {"const": "alpha"}}},
            "then": {
                "required": ["states", "transitions"],
                "not": {
                    "anyOf": [{"required": ["indexes"]}, {"required": ["table"]}, {"required": ["next"]}]
                },
            },
        },
    ],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


# --- encoding ------------------------------------------------------------------


def index_to_json(i: Index):
    if isinstance(i, Atom):
        return [i.name, i.instance]
    return [index_to_json(i.left), index_to_json(i.right)]


def index_from_json(v) -> Index:
    a, b = v
    if isinstance(a, str):
        return Atom(a, b)
    return Pair(index_from_json(a), index_from_json(b))


def _structure_doc(s: ConnectorStructure) -> dict:
    return {"nodes": sorted(s.nodes), "flow": [list(p) for p in sorted(s.flow)]}


def to_document(model: Model, u: DataUniverse | None = None) -> dict:
    doc = _structure_doc(model.structure)
    if u is not None:
        doc["universe"] = list(u.items)
    if isinstance(model, EpsilonConnector):
        beh = model.behavior
        doc["kind"] = "epsilon"
        doc["indexes"] = [index_to_json(i) for i in sorted(beh.ctm.indexes, key=index_key)]
        doc["initial"] = index_to_json(beh.initial)
        doc["table"] = [
            {
                "index": index_to_json(lam),
                "colorings": [
                    {"flow": sorted(x.flow), "constraint": format_constraint(x.constraint)}
                    for x in sorted(beh.ctm.table[lam], key=coloring_key)
                ],
            }
            for lam in sorted(beh.ctm.table, key=index_key)
        ]
        doc["next"] = [
            {
                "index": index_to_json(lam),
                "flow": sorted(x.flow),
                "constraint": format_constraint(x.constraint),
                "target": index_to_json(succ),
            }
            for (lam, x), succ in sorted(
                beh.next.items(), key=lambda kv: (index_key(kv[0][0]), coloring_key(kv[0][1]))
            )
        ]
        return doc
    if isinstance(model, AlphaConnector):
        a = model.automaton
        doc["kind"] = "alpha"
        doc["states"] = [index_to_json(q) for q in sorted(a.states, key=index_key)]
        doc["initial"] = index_to_json(a.initial)
        doc["transitions"] = [
            {
                "source": index_to_json(t.source),
                "firing": sorted(t.firing),
                "constraint": format_constraint(t.constraint),
                "target": index_to_json(t.target),
            }
            for t in sorted(a.transitions, key=transition_key)
        ]
        return doc
    raise TypeError(f"cannot serialize {type(model).__name__}")


def canonical_json(v, depth: int = 0) -> str:
    """Key-sorted JSON; arrays free of objects stay on one line."""
    pad = " " * (depth + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {canonical_json(v[k], depth + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + " " * depth + "}"
    if isinstance(v, list) and any(isinstance(x, dict) for x in v):
        items = [pad + canonical_json(x, depth + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + " " * depth + "]"
    return json.dumps(v, ensure_ascii=False, separators=(", ", ": "))


def serialize(model: Model, u: DataUniverse | None = None) -> str:
    return f"{HEADER} {VERSION}\n{canonical_json(to_document(model, u))}\n"


# --- decoding ------------------------------------------------------------------


def _parse_header(text: str) -> str:
    head, sep, body = text.partition("\n")
    parts = head.split()
    if not parts or parts[0] != HEADER or len(parts) != 2:
        raise MalformedDocument(f"missing '{HEADER} <version>' header line")
    if parts[1] != str(VERSION):
        raise UnknownVersion(f"unsupported {HEADER} version {parts[1]!r}; this reader knows {VERSION}")
    return body


def _constraint(text: str, where: str):
    try:
        return parse_constraint(text)
    except (ConstraintSyntaxError, ValueError) as exc:
        raise SchemaViolation(f"{where}: bad constraint {text!r}: {exc}") from None


def from_document(doc: dict) -> tuple[Model, DataUniverse | None]:
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        path = "/".join(str(p) for p in first.absolute_path) or "<root>"
        raise SchemaViolation(f"{path}: {first.message}")
    u = DataUniverse(doc["universe"]) if "universe" in doc else None
    structure = ConnectorStructure(frozenset(doc["nodes"]), frozenset(tuple(p) for p in doc["flow"]))
    violations = []
    if len(set(doc["nodes"])) != len(doc["nodes"]):
        violations.append("duplicate node names")
    initial = index_from_json(doc["initial"])
    constraints = []

    if doc["kind"] == "epsilon":
        indexes = [index_from_json(v) for v in doc["indexes"]]
        table = {}
        for row in doc["table"]:
            lam = index_from_json(row["index"])
            if lam in table:
                violations.append(f"index {lam} has two coloring tables")
            cells = table.setdefault(lam, set())
            for cell in row["colorings"]:
                if not set(cell["flow"]) <= structure.nodes:
                    violations.append(f"coloring at {lam} flows through unknown nodes {cell['flow']}")
                    continue
                g = _constraint(cell["constraint"], f"table of {lam}")
                constraints.append(g)
                cells.add(ConstraintColoring(coloring_from_flow_set(structure.nodes, cell["flow"]), g))
        nxt = {}
        for row in doc["next"]:
            lam = index_from_json(row["index"])
            if not set(row["flow"]) <= structure.nodes:
                violations.append(f"next entry at {lam} flows through unknown nodes {row['flow']}")
                continue
            g = _constraint(row["constraint"], f"next entry at {lam}")
            constraints.append(g)
            x = ConstraintColoring(coloring_from_flow_set(structure.nodes, row["flow"]), g)
            if (lam, x) in nxt:
                violations.append(f"next function has two entries for ({lam}, {row['flow']}, {row['constraint']})")
            nxt[(lam, x)] = index_from_json(row["target"])
        ctm = ConstraintCTM(structure.nodes, frozenset(indexes), table)
        model = EpsilonConnector(structure, InitializedConstraintNextFunction(ctm, nxt, initial))
        if len(set(indexes)) != len(indexes):
            violations.append("duplicate indexes")
        if not violations:
            violations.extend(validate_epsilon(model).violations)
    else:
        states = [index_from_json(v) for v in doc["states"]]
        transitions = []
        for row in doc["transitions"]:
            g = _constraint(row["constraint"], "transition")
            constraints.append(g)
            transitions.append(
                Transition(
                    index_from_json(row["source"]),
                    frozenset(row["firing"]),
                    g,
                    index_from_json(row["target"]),
                )
            )
        if len(set(states)) != len(states):
            violations.append("duplicate states")
        if len(set(transitions)) != len(transitions):
            violations.append("duplicate transitions")
        model = AlphaConnector(structure, ConstraintAutomaton(frozenset(states), frozenset(transitions), initial))
        if not violations:
            violations.extend(validate_ca(model).violations)

    if u is not None:
        stray = set().union(*(data_items(g) for g in constraints)) - set(u)
        if stray:
            violations.append(f"data items outside the declared universe: {sorted(stray)}")
    if violations:
        raise ModelViolation(violations, what=f"{doc['kind']} model")
    return model, u


def loads(text: str) -> tuple[Model, DataUniverse | None]:
    """Decode a model file into ``(model, universe or None)``."""
    body = _parse_header(text)
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("document body must be a JSON object")
    return from_document(doc)


def deserialize(text: str) -> Model:
    return loads(text)[0]


def load(path) -> tuple[Model, DataUniverse | None]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(model: Model, path, u: DataUniverse | None = None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(model, u))
