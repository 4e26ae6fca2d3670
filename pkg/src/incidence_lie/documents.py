"""JSON documents read and written by the command-line front end.

Vertices are addressed by name in every document and mapped to dense indices
in declaration order.  Edge classes are addressed by their representative
(least) edge and components by their integer id.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .algebra import FiElement, SupportError
from .decompose import DecompositionReport
from .maps import (
    AdditiveInduced,
    CentralTrace,
    Inner,
    MapSpec,
    MapSpecError,
    ProperPart,
    Transitive,
    Witness,
)
from .preorder import EdgeClassification, Preorder, PreorderError
from .properness import PropernessVerdict
from .ring import AdditiveDerivation, DerivationRingError, Ring, RingPayloadError, ring_from_name
from .verify import Verdict

__all__ = [
    "DocumentError",
    "Poset",
    "load_json",
    "dump_json",
    "parse_poset",
    "poset_document",
    "parse_derivation",
    "derivation_document",
    "element_document",
    "verdict_document",
    "report_document",
    "classes_document",
    "components_document",
    "properness_document",
]


class DocumentError(ValueError):
    """Malformed input document; the message names the offending field."""


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _flat(obj: Any) -> bool:
    # lists of scalars (or of lists of scalars) stay on one line
    if not isinstance(obj, list):
        return not isinstance(obj, dict)
    return all(not isinstance(v, (list, dict)) or (isinstance(v, list) and _flat(v)) for v in obj)


def _render(obj: Any, depth: int) -> str:
    if _flat(obj):
        return json.dumps(obj, ensure_ascii=False)
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(
            f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in obj.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    body = ",\n".join(inner + _render(v, depth + 1) for v in obj)
    return "[\n" + body + "\n" + pad + "]"


def dump_json(obj: Any) -> str:
    """Deterministic, indented JSON with short leaf lists kept inline."""
    return _render(obj, 0) + "\n"


def _field(obj: Any, key: str, kind: type, where: str, default: Any = ...) -> Any:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    if key not in obj:
        if default is ...:
            raise DocumentError(f"{where}: missing field {key!r}")
        return default
    val = obj[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise DocumentError(f"{where}.{key}: expected {kind.__name__}")
    return val


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class Poset:
    names: tuple[str, ...]
    preorder: Preorder

    def index(self, name: Any, where: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DocumentError(f"{where}: unknown vertex {name!r}") from None

    def edge(self, obj: Any, where: str) -> tuple[int, int]:
        if not isinstance(obj, list) or len(obj) != 2:
            raise DocumentError(f"{where}: expected [x, y]")
        return self.index(obj[0], f"{where}[0]"), self.index(obj[1], f"{where}[1]")

    def name_edge(self, e: tuple[int, int]) -> list[str]:
        return [self.names[e[0]], self.names[e[1]]]

    def name_set(self, vs) -> list[str]:
        return [self.names[v] for v in sorted(vs)]


def parse_poset(obj: Any, close: bool | None = None) -> Poset:
    """``{"vertices": [...], "leq": [[x, y], ...], "close": bool}``.

    ``close`` overrides the document's flag when given.
    """
    names = _field(obj, "vertices", list, "poset")
    for k, v in enumerate(names):
        if not isinstance(v, str):
            raise DocumentError(f"poset.vertices[{k}]: vertex names must be strings")
    if len(set(names)) != len(names):
        dup = next(v for v in names if names.count(v) > 1)
        raise DocumentError(f"poset.vertices: duplicate vertex {dup!r}")
    leq = _field(obj, "leq", list, "poset", [])
    doc_close = _field(obj, "close", bool, "poset", True)
    close = doc_close if close is None else close
    shell = Poset(tuple(names), Preorder.from_generators(len(names), []))
    pairs = [shell.edge(p, f"poset.leq[{k}]") for k, p in enumerate(leq)]
    try:
        if close:
            P = Preorder.from_generators(len(names), pairs)
        else:
            P = Preorder.from_relation(len(names), pairs)
    except PreorderError as exc:
        raise DocumentError(f"poset.leq: {exc} (vertex indices follow declaration order)") from None
    return Poset(tuple(names), P)


def poset_document(poset: Poset) -> dict:
    P = poset.preorder
    return {
        "vertices": list(poset.names),
        "leq": [poset.name_edge(e) for e in P.strict_edges],
        "close": False,
    }


# ---------------------------------------------------------------------------
# derivation documents


def _parse_value(R: Ring, obj: Any, where: str):
    try:
        return R.parse(obj)
    except RingPayloadError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _parse_table(poset: Poset, R: Ring, obj: Any, where: str) -> dict:
    if not isinstance(obj, list):
        raise DocumentError(f"{where}: expected a list of [x, y, value]")
    table: dict = {}
    for k, item in enumerate(obj):
        w = f"{where}[{k}]"
        if not isinstance(item, list) or len(item) != 3:
            raise DocumentError(f"{w}: expected [x, y, value]")
        x, y = poset.edge(item[:2], w)
        if not poset.preorder.le(x, y):
            raise DocumentError(f"{w}: {item[0]!r} is not <= {item[1]!r}")
        v = _parse_value(R, item[2], f"{w}[2]")
        table[(x, y)] = R.add(table[(x, y)], v) if (x, y) in table else v
    return {k: v for k, v in table.items() if not R.is_zero(v)}


def _parse_deriv(obj: Any, where: str) -> AdditiveDerivation:
    try:
        return AdditiveDerivation.from_json(obj)
    except (ValueError, RingPayloadError) as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _class_id(poset: Poset, C: EdgeClassification, obj: Any, where: str) -> int:
    x, y = poset.edge(obj, where)
    if (x, y) not in C.edge_class:
        raise DocumentError(f"{where}: [{obj[0]!r}, {obj[1]!r}] is not a strict edge")
    return C.edge_class[(x, y)]


def _component_id(poset: Poset, obj: Any, where: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int) or not 0 <= obj < len(poset.preorder.components):
        raise DocumentError(f"{where}: unknown component {obj!r}")
    return obj


def _pairs(obj: Any, where: str) -> list:
    if not isinstance(obj, list) or any(not isinstance(p, list) or len(p) != 2 for p in obj):
        raise DocumentError(f"{where}: expected a list of [key, value] pairs")
    return obj


def _parse_term(poset: Poset, R: Ring, obj: Any, where: str):
    P, C = poset.preorder, poset.preorder.classification
    kind = _field(obj, "kind", str, where)
    if kind == "inner":
        table = _parse_table(poset, R, _field(obj, "alpha", list, where), f"{where}.alpha")
        return Inner(FiElement(P, R, table))
    if kind == "transitive":
        return Transitive(_parse_table(poset, R, _field(obj, "f", list, where), f"{where}.f"))
    if kind == "additive_induced":
        w = f"{where}.assign"
        assign = {}
        for k, (edge, d) in enumerate(_pairs(_field(obj, "assign", list, where), w)):
            assign[_class_id(poset, C, edge, f"{w}[{k}][0]")] = _parse_deriv(d, f"{w}[{k}][1]")
        return AdditiveInduced(assign)
    if kind == "central_trace":
        w = f"{where}.h"
        h = {}
        for k, (comp, coeffs) in enumerate(_pairs(_field(obj, "h", list, where), w)):
            j = _component_id(poset, comp, f"{w}[{k}][0]")
            if not isinstance(coeffs, list) or any(
                isinstance(c, bool) or not isinstance(c, int) for c in coeffs
            ):
                raise DocumentError(f"{w}[{k}][1]: expected a list of integer coefficients")
            h[j] = tuple(coeffs)
        return CentralTrace(h)
    if kind == "witness":
        i = _class_id(poset, C, _field(obj, "class_edge", list, where), f"{where}.class_edge")
        t = poset.index(_field(obj, "t", str, where), f"{where}.t")
        if t not in C.class_vertices[i]:
            raise DocumentError(f"{where}.t: vertex {poset.names[t]!r} is not on the class")
        return Witness(i, t, _parse_deriv(_field(obj, "f", list, where), f"{where}.f"))
    if kind == "proper_part":
        w = f"{where}.assign"
        assign = {}
        for k, (comp, d) in enumerate(_pairs(_field(obj, "assign", list, where), w)):
            assign[_component_id(poset, comp, f"{w}[{k}][0]")] = _parse_deriv(d, f"{w}[{k}][1]")
        return ProperPart(assign)
    raise DocumentError(f"{where}.kind: unknown term kind {kind!r}")


def parse_derivation(obj: Any, poset: Poset, ring: Ring | None = None, n: int | None = None):
    """Returns ``(ring, n, MapSpec)``; ``ring``/``n`` override the document."""
    if ring is None:
        name = _field(obj, "ring", str, "derivation")
        try:
            ring = ring_from_name(name)
        except ValueError as exc:
            raise DocumentError(f"derivation.ring: {exc}") from None
    if n is None:
        n = _field(obj, "n", int, "derivation", 2)
    if n < 2:
        raise DocumentError("derivation.n: must be at least 2")
    raw = _field(obj, "terms", list, "derivation")
    terms = tuple(_parse_term(poset, ring, t, f"derivation.terms[{k}]") for k, t in enumerate(raw))
    try:
        spec = MapSpec(poset.preorder, ring, terms)
    except (MapSpecError, DerivationRingError, SupportError) as exc:
        raise DocumentError(f"derivation.terms: {exc}") from None
    return ring, n, spec


def _table_document(poset: Poset, R: Ring, table: dict) -> list:
    return [
        [poset.names[x], poset.names[y], R.format(v)]
        for (x, y), v in sorted(table.items())
    ]


def element_document(poset: Poset, beta: FiElement) -> list:
    return _table_document(poset, beta.ring, beta.entries)


def _term_document(poset: Poset, R: Ring, term) -> dict:
    C = poset.preorder.classification
    if isinstance(term, Inner):
        return {"kind": "inner", "alpha": element_document(poset, term.alpha)}
    if isinstance(term, Transitive):
        return {"kind": "transitive", "f": _table_document(poset, R, dict(term.f))}
    if isinstance(term, AdditiveInduced):
        return {
            "kind": "additive_induced",
            "assign": [
                [poset.name_edge(C.representative(i)), d.to_json()]
                for i, d in sorted(term.assign.items())
            ],
        }
    if isinstance(term, CentralTrace):
        return {"kind": "central_trace", "h": [[j, list(c)] for j, c in sorted(term.h.items())]}
    if isinstance(term, Witness):
        return {
            "kind": "witness",
            "class_edge": poset.name_edge(C.representative(term.class_id)),
            "t": poset.names[term.t],
            "f": term.f.to_json(),
        }
    if isinstance(term, ProperPart):
        return {"kind": "proper_part", "assign": [[j, d.to_json()] for j, d in sorted(term.assign.items())]}
    raise TypeError(f"cannot serialise {term!r}")


def derivation_document(poset: Poset, spec: MapSpec, n: int) -> dict:
    return {
        "ring": spec.ring.name,
        "n": n,
        "terms": [_term_document(poset, spec.ring, t) for t in spec.terms],
    }


# ---------------------------------------------------------------------------
# reports


def _payload_document(poset: Poset, R: Ring, v: Any) -> Any:
    if isinstance(v, FiElement):
        return element_document(poset, v)
    if v is None:
        return None
    return R.format(v)


def verdict_document(poset: Poset, R: Ring, verdict: Verdict) -> dict:
    doc: dict = {
        "law": verdict.law,
        "passed": verdict.passed,
        "probes": verdict.probes,
        "summary": verdict.summary(),
    }
    if not verdict.passed:
        args = verdict.args
        if args is not None and all(isinstance(a, FiElement) for a in args):
            args = [element_document(poset, a) for a in args]
        else:
            args = None
        doc["counterexample"] = {
            "args": args,
            "lhs": _payload_document(poset, R, verdict.lhs),
            "rhs": _payload_document(poset, R, verdict.rhs),
        }
    return doc


def report_document(poset: Poset, report: DecompositionReport) -> dict:
    R = report.L.ring
    C = poset.preorder.classification
    doc: dict = {
        "ring": R.name,
        "n": report.n,
        "decomposable": report.decomposable,
        "checks": [verdict_document(poset, R, v) for v in report.checks],
        "e_L": None if report.e_L is None else element_document(poset, report.e_L),
        "f": None if report.f is None else _table_document(poset, R, report.f),
        "classes": None,
    }
    if report.class_probes is not None:
        doc["classes"] = [
            {
                "class_edge": poset.name_edge(C.representative(i)),
                "probes": [[R.format(r), R.format(v)] for r, v in table.items()],
                "fitted": None if report.fitted_derivs[i] is None else report.fitted_derivs[i].to_json(),
            }
            for i, table in sorted(report.class_probes.items())
        ]
    return doc


def components_document(poset: Poset) -> dict:
    P = poset.preorder
    return {
        "components": [
            {"id": j, "vertices": poset.name_set(members), "full": P.is_full_component(j)}
            for j, members in enumerate(P.components)
        ]
    }


def classes_document(poset: Poset) -> dict:
    C = poset.preorder.classification
    return {
        "classes": [
            {
                "id": i,
                "class_edge": poset.name_edge(edges[0]),
                "component": C.class_component[i],
                "edges": [poset.name_edge(e) for e in edges],
                "vertices": poset.name_set(C.class_vertices[i]),
            }
            for i, edges in enumerate(C.classes)
        ]
    }


def properness_document(poset: Poset, verdict: PropernessVerdict) -> dict:
    C = poset.preorder.classification
    cert = None
    if verdict.certificate is not None:
        comp, i, j = verdict.certificate
        cert = {
            "component": comp,
            "class_edges": [poset.name_edge(C.representative(i)), poset.name_edge(C.representative(j))],
        }
    return {
        "proper_capable": verdict.proper_capable,
        "summary": verdict.summary(),
        "groups": [
            {"component": j, "class_edges": [poset.name_edge(C.representative(i)) for i in ids]}
            for j, ids in enumerate(verdict.groups)
        ],
        "certificate": cert,
    }
