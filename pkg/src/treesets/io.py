"""JSON load/save for systems, trees and presentations, plus DOT export.

Every file carries ``"schema": 1``.  The object kind is recognised from
its keys: ``elements`` (separation system), ``vertices`` (tree) or
``skeleton`` (chain-tree presentation).
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .errors import InvariantViolation, ParseError, SchemaError, TreeSetError
from .presented import FINITE, ChainTreePresentation, OrderTypeLabel, presentation
from .separations import SeparationSystem, build_system
from .trees import Tree

SCHEMA_VERSION = 1

_ID = {"type": "string", "minLength": 1}
_PAIR = {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}

SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["schema", "elements"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "elements": {"type": "array", "items": _PAIR},
        "order": {"type": "array", "items": _PAIR},
    },
    "additionalProperties": False,
}

_TREE_BODY = {
    "type": "object",
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {"type": "array", "items": _ID, "minItems": 1},
        "edges": {"type": "array", "items": _PAIR},
    },
}

TREE_SCHEMA = {
    "type": "object",
    "required": ["schema", "vertices", "edges"],
    "properties": {"schema": {"const": SCHEMA_VERSION}, **_TREE_BODY["properties"]},
    "additionalProperties": False,
}

_LABEL = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["finite", "omega", "omega_plus_one"]},
        "k": {"type": "integer", "minimum": 1},
        "start": _ID,
    },
    "additionalProperties": False,
    "if": {"properties": {"kind": {"const": "finite"}}},
    "then": {"required": ["kind", "k"]},
    "else": {"not": {"required": ["k"]}},
}

PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["schema", "skeleton", "labels"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "skeleton": {
            "type": "object",
            "required": ["vertices", "edges"],
            "properties": {
                "vertices": {"type": "array", "items": _ID, "minItems": 1},
                "edges": {
                    "type": "array",
                    "items": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 3},
                },
            },
            "additionalProperties": False,
        },
        "labels": {"type": "object", "additionalProperties": _LABEL},
    },
    "additionalProperties": False,
}

SCHEMAS = {"system": SYSTEM_SCHEMA, "tree": TREE_SCHEMA, "presentation": PRESENTATION_SCHEMA}


def detect_kind(data) -> str:
    if isinstance(data, dict):
        if "skeleton" in data:
            return "presentation"
        if "elements" in data:
            return "system"
        if "vertices" in data:
            return "tree"
    raise SchemaError("cannot tell the object kind: expected 'elements', 'vertices' or 'skeleton'")


def _validate(data, kind):
    try:
        jsonschema.validate(data, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{kind} schema violation at {where}: {exc.message}") from None


def from_data(data, kind=None):
    """Build a validated object from parsed JSON."""
    kind = kind or detect_kind(data)
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown object kind {kind!r}")
    _validate(data, kind)
    try:
        if kind == "system":
            return build_system(data["elements"], data.get("order", []))
        if kind == "tree":
            return Tree(data["vertices"], data["edges"])
        labels = {}
        for eid, lab in data["labels"].items():
            labels[eid] = OrderTypeLabel(lab["kind"], lab.get("k"), lab.get("start"))
        edges = [tuple(e) for e in data["skeleton"]["edges"]]
        return presentation(data["skeleton"]["vertices"], edges, labels)
    except TreeSetError as exc:
        raise InvariantViolation(f"{type(exc).__name__}: {exc}") from exc


def loads(text, kind=None, path=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path or '<string>'}:{exc.lineno}:{exc.colno}: {exc.msg}", path, exc.lineno, exc.colno) from None
    return from_data(data, kind)


def load(path, kind=None):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", str(path)) from None
    return loads(text, kind, str(path))


def to_data(obj) -> dict:
    if isinstance(obj, SeparationSystem):
        return {
            "schema": SCHEMA_VERSION,
            "elements": [list(p) for p in obj.pairs],
            "order": sorted([list(r) for r in obj.cover_relations()]),
        }
    if isinstance(obj, Tree):
        return {
            "schema": SCHEMA_VERSION,
            "vertices": list(obj.vertices),
            "edges": [list(e) for e in obj.edges],
        }
    if isinstance(obj, ChainTreePresentation):
        labels = {}
        for e in obj.edge_ids:
            lab = obj.labels[e]
            entry = {"kind": lab.kind, "start": lab.start}
            if lab.kind == FINITE:
                entry["k"] = lab.k
            labels[e] = entry
        return {
            "schema": SCHEMA_VERSION,
            "skeleton": {
                "vertices": list(obj.vertices),
                "edges": [[*obj.ends[e], e] for e in obj.edge_ids],
            },
            "labels": labels,
        }
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_data(obj), indent=2)


def save(obj, path):
    Path(path).write_text(dumps(obj) + "\n")


# -- DOT ---------------------------------------------------------------------


def _abbrev(text, width):
    text = str(text)
    if width and len(text) > width:
        return text[: max(width - 3, 1)] + "..."
    return text


def _q(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def tree_to_dot(T: Tree, labels=None, width=24, name="tree") -> str:
    """Undirected DOT graph; ``labels`` optionally maps vertices to display text."""
    lines = [f"graph {name} {{"]
    for v in T.vertices:
        text = labels.get(v, v) if labels else v
        lines.append(f"  {_q(v)} [label={_q(_abbrev(text, width))}];")
    for u, v in T.edges:
        lines.append(f"  {_q(u)} -- {_q(v)};")
    lines.append("}")
    return "\n".join(lines)


def presentation_to_dot(pres: ChainTreePresentation, limit_edges=(), width=24) -> str:
    """Skeleton as a digraph, each edge drawn from its start with its order type."""
    limit = {x.edge for x in limit_edges}
    lines = ["digraph presentation {"]
    for v in pres.vertices:
        lines.append(f"  {_q(v)} [label={_q(_abbrev(v, width))}];")
    for e in pres.edge_ids:
        a, b = pres.ends[e]
        style = ", style=bold" if e in limit else ""
        text = _abbrev(f"{e}: {pres.labels[e].describe()}", width)
        lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(text)}{style}];")
    lines.append("}")
    return "\n".join(lines)
