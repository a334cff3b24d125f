"""JSON forms of scalars, subspaces, relations and workspace files.

Scalars: rationals as strings ``"a/b"`` (``"a"`` when ``b == 1``), prime-field
residues as integers.  Subspaces: ``{"ambient": n, "generators": [[...], ...]}``.
Relations: ``{"dom_dim": n, "codom_dim": m, "generators": [{"x": [...], "y": [...]}, ...]}``.
Serialized generators are always the canonical basis, so output is stable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from . import subspace as sub
from .field import FieldSpec
from .linalg import Matrix
from .relation import LinearRelation
from .subspace import Subspace


class WorkspaceError(ValueError):
    """A workspace file could not be parsed or is inconsistent."""


def subspace_to_json(S: Subspace) -> dict:
    enc = S.field.encode
    return {"ambient": S.ambient, "generators": [[enc(a) for a in v] for v in S.basis]}


def subspace_from_json(obj, field: FieldSpec) -> Subspace:
    try:
        n = obj["ambient"]
        gens = [[field.decode(a) for a in v] for v in obj.get("generators", [])]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise WorkspaceError(f"bad subspace: {exc}") from exc
    if not isinstance(n, int) or n < 0:
        raise WorkspaceError(f"bad ambient dimension {n!r}")
    try:
        return sub.span(gens, n, field)
    except ValueError as exc:
        raise WorkspaceError(str(exc)) from exc


def relation_to_json(T: LinearRelation) -> dict:
    enc = T.field.encode
    xs, ys = T._blocks
    return {
        "dom_dim": T.n,
        "codom_dim": T.m,
        "generators": [{"x": [enc(a) for a in x], "y": [enc(b) for b in y]} for x, y in zip(xs, ys)],
    }


def relation_from_json(obj, field: FieldSpec) -> LinearRelation:
    try:
        n, m = obj["dom_dim"], obj["codom_dim"]
        pairs = [
            ([field.decode(a) for a in g.get("x", [0] * n)], [field.decode(b) for b in g.get("y", [0] * m)])
            for g in obj.get("generators", [])
        ]
    except (KeyError, TypeError, AttributeError, ValueError, ZeroDivisionError) as exc:
        raise WorkspaceError(f"bad relation: {exc}") from exc
    if not (isinstance(n, int) and isinstance(m, int) and n >= 0 and m >= 0):
        raise WorkspaceError(f"bad relation dimensions {n!r}, {m!r}")
    flat = []
    for x, y in pairs:
        if len(x) != n or len(y) != m:
            raise WorkspaceError(f"generator of shape ({len(x)}, {len(y)}) in a {n}->{m} relation")
        flat.append(tuple(x) + tuple(y))
    return LinearRelation(n, m, sub.span(flat, n + m, field))


def matrix_to_json(A: Matrix) -> dict:
    return {"matrix": [[A.field.encode(a) for a in row] for row in A.rows]}


def to_json(obj):
    """Serialize any package value that has a JSON form."""
    if isinstance(obj, LinearRelation):
        return relation_to_json(obj)
    if isinstance(obj, Subspace):
        return subspace_to_json(obj)
    if isinstance(obj, Matrix):
        return matrix_to_json(obj)
    if isinstance(obj, (list, tuple)):
        return [to_json(o) for o in obj]
    return obj


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Workspace:
    """Named relations and subspaces over one field."""

    field: FieldSpec
    relations: dict = dc_field(default_factory=dict)
    subspaces: dict = dc_field(default_factory=dict)

    def relation(self, name: str) -> LinearRelation:
        try:
            return self.relations[name]
        except KeyError:
            raise KeyError(f"no relation named {name!r}") from None

    def subspace(self, name: str) -> Subspace:
        try:
            return self.subspaces[name]
        except KeyError:
            raise KeyError(f"no subspace named {name!r}") from None

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "relations": {k: relation_to_json(v) for k, v in self.relations.items()},
            "subspaces": {k: subspace_to_json(v) for k, v in self.subspaces.items()},
        }


def load_workspace(text: str) -> Workspace:
    """Parse a workspace document; raises WorkspaceError with position info on bad JSON."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise WorkspaceError("workspace must be a JSON object")
    try:
        field = FieldSpec.from_name(str(doc.get("field", "q")))
    except ValueError as exc:
        raise WorkspaceError(str(exc)) from exc
    ws = Workspace(field)
    for name, obj in (doc.get("relations") or {}).items():
        ws.relations[name] = relation_from_json(obj, field)
    for name, obj in (doc.get("subspaces") or {}).items():
        ws.subspaces[name] = subspace_from_json(obj, field)
    return ws
