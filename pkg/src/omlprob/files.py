"""JSON file schemas for lattices, states, s-maps and observables.

All rationals in files are strings ("3/25", "0.12") or integers; decimals
are parsed exactly as fractions over powers of ten.  Every document may
carry a "type" field ("lattice", "state", "conditional_state", "smap",
"observable"); table documents may name their lattice via a "lattice" field
holding either an inline lattice object or a path relative to the document.
Unknown fields are rejected.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Mapping

from .errors import ParseError, SchemaError
from .lattice import OrthomodularLattice, build_lattice
from .observables import Observable, make_observable
from .rationals import format_rational, parse_rational
from .smap import SMap, complete_smap_table, validate_smap
from .states import ConditionalState, State, validate_conditional_state, validate_state

_FIELDS = {
    "lattice": {"type", "labels", "leq", "ortho", "zero", "one"},
    "state": {"type", "lattice", "values"},
    "conditional_state": {"type", "lattice", "conditions", "table"},
    "smap": {"type", "lattice", "table"},
    "observable": {"type", "lattice", "assignment"},
}


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh, parse_float=Fraction)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top-level value must be an object")
    doc["__path__"] = path
    return doc


def document_type(doc: Mapping) -> str:
    """The declared or inferred document type."""
    if "type" in doc:
        kind = doc["type"]
        if kind not in _FIELDS:
            raise SchemaError(f"unknown document type {kind!r}")
        return kind
    if "labels" in doc:
        return "lattice"
    if "values" in doc:
        return "state"
    if "conditions" in doc:
        return "conditional_state"
    if "assignment" in doc:
        return "observable"
    if "table" in doc:
        return "smap"
    raise SchemaError("cannot infer document type")


def _check_fields(doc: Mapping, kind: str) -> None:
    unknown = set(doc) - _FIELDS[kind] - {"__path__"}
    if unknown:
        raise SchemaError(f"unknown fields for {kind}: {sorted(unknown)}")


def _pairs(doc, field):
    raw = doc.get(field)
    if not isinstance(raw, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)
        for p in raw
    ):
        raise SchemaError(f"{field!r} must be a list of [label, label] pairs")
    return [tuple(p) for p in raw]


def load_lattice(doc: Mapping) -> OrthomodularLattice:
    _check_fields(doc, "lattice")
    labels = doc.get("labels")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SchemaError("'labels' must be a list of strings")
    L = build_lattice(labels, _pairs(doc, "leq"), _pairs(doc, "ortho"))
    for key, want in (("zero", L.zero), ("one", L.one)):
        if key in doc and doc[key] != L.label(want):
            raise SchemaError(
                f"declared {key} = {doc[key]!r} but the order has {L.label(want)!r}"
            )
    return L


def resolve_lattice(doc: Mapping, L: OrthomodularLattice | None) -> OrthomodularLattice:
    """Use the given lattice, or load the one the document references."""
    if L is not None:
        return L
    ref = doc.get("lattice")
    if isinstance(ref, dict):
        return load_lattice(ref)
    if isinstance(ref, str):
        base = os.path.dirname(doc.get("__path__", "."))
        return load_lattice(load_document(os.path.join(base, ref)))
    raise SchemaError("no lattice given and the document does not reference one")


def load_state(doc: Mapping, L: OrthomodularLattice | None = None) -> State:
    _check_fields(doc, "state")
    L = resolve_lattice(doc, L)
    raw = doc.get("values")
    if not isinstance(raw, dict):
        raise SchemaError("'values' must be an object keyed by element label")
    values = {L.id_of(lab): parse_rational(v) for lab, v in raw.items()}
    if set(values) != set(L.elements):
        raise SchemaError("'values' must cover every element exactly once")
    return validate_state(L, values)


def load_conditional_state(
    doc: Mapping, L: OrthomodularLattice | None = None
) -> ConditionalState:
    _check_fields(doc, "conditional_state")
    L = resolve_lattice(doc, L)
    conds = doc.get("conditions")
    if not isinstance(conds, list):
        raise SchemaError("'conditions' must be a list of element labels")
    cs = frozenset(L.id_of(lab) for lab in conds)
    raw = doc.get("table")
    if not isinstance(raw, list) or not all(
        isinstance(t, list) and len(t) == 3 for t in raw
    ):
        raise SchemaError("'table' must be a list of [element, condition, value] triples")
    table = {}
    for b, a, v in raw:
        table[(L.id_of(b), L.id_of(a))] = parse_rational(v)
    # Rows the state axioms force may be omitted: f(0, a) = 0, f(1, a) = 1.
    for a in cs:
        table.setdefault((L.zero, a), Fraction(0))
        table.setdefault((L.one, a), Fraction(1))
    return validate_conditional_state(L, cs, table)


def load_smap(doc: Mapping, L: OrthomodularLattice | None = None) -> SMap:
    _check_fields(doc, "smap")
    L = resolve_lattice(doc, L)
    raw = doc.get("table")
    if not isinstance(raw, dict) or not all(isinstance(r, dict) for r in raw.values()):
        raise SchemaError("'table' must be an object of row objects keyed by label")
    partial = {}
    for rlab, row in raw.items():
        for clab, v in row.items():
            partial[(L.id_of(rlab), L.id_of(clab))] = parse_rational(v)
    return validate_smap(L, complete_smap_table(L, partial))


def load_observable(doc: Mapping, L: OrthomodularLattice | None = None) -> Observable:
    _check_fields(doc, "observable")
    L = resolve_lattice(doc, L)
    raw = doc.get("assignment")
    if not isinstance(raw, list) or not all(
        isinstance(e, dict) and set(e) == {"value", "element"} for e in raw
    ):
        raise SchemaError("'assignment' must be a list of {value, element} objects")
    return make_observable(
        L, [(parse_rational(e["value"]), L.id_of(e["element"])) for e in raw]
    )


def load_typed(doc: Mapping, L: OrthomodularLattice | None = None):
    """Dispatch on the document type; returns the validated object."""
    kind = document_type(doc)
    if kind == "lattice":
        return load_lattice(doc)
    loader = {
        "state": load_state,
        "conditional_state": load_conditional_state,
        "smap": load_smap,
        "observable": load_observable,
    }[kind]
    return loader(doc, L)


# --- writers -----------------------------------------------------------------

def lattice_document(L: OrthomodularLattice) -> dict:
    leq = [
        [L.label(a), L.label(b)]
        for a in L.elements
        for b in L.elements
        if a != b and L.leq(a, b)
    ]
    ortho = [
        [L.label(a), L.label(L.ortho(a))] for a in L.elements if a <= L.ortho(a)
    ]
    return {
        "type": "lattice",
        "labels": list(L.labels),
        "leq": leq,
        "ortho": ortho,
        "zero": L.label(L.zero),
        "one": L.label(L.one),
    }


def state_document(m: State, lattice_ref: str | None = None) -> dict:
    doc = {"type": "state"}
    if lattice_ref:
        doc["lattice"] = lattice_ref
    L = m.lattice
    doc["values"] = {L.label(a): format_rational(m(a)) for a in L.elements}
    return doc


def conditional_state_document(f: ConditionalState, lattice_ref: str | None = None) -> dict:
    doc = {"type": "conditional_state"}
    if lattice_ref:
        doc["lattice"] = lattice_ref
    L = f.lattice
    doc["conditions"] = [L.label(a) for a in sorted(f.conditions)]
    doc["table"] = [
        [L.label(b), L.label(a), format_rational(f(b, a))]
        for a in sorted(f.conditions)
        for b in L.elements
    ]
    return doc


def smap_document(p: SMap, lattice_ref: str | None = None) -> dict:
    doc = {"type": "smap"}
    if lattice_ref:
        doc["lattice"] = lattice_ref
    L = p.lattice
    doc["table"] = {
        L.label(a): {L.label(b): format_rational(p(a, b)) for b in L.elements}
        for a in L.elements
    }
    return doc


def observable_document(x: Observable, lattice_ref: str | None = None) -> dict:
    doc = {"type": "observable"}
    if lattice_ref:
        doc["lattice"] = lattice_ref
    L = x.lattice
    doc["assignment"] = [
        {"value": format_rational(v), "element": L.label(x.assignment[v])}
        for v in x.spectrum
    ]
    return doc


def write_document(path: str, doc: dict) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
