"""Batch front end.

Exit codes: 0 pass / proper / decomposable, 1 refuted / not proper, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .decompose import decompose
from .documents import (
    DocumentError,
    Poset,
    classes_document,
    components_document,
    derivation_document,
    dump_json,
    load_json,
    parse_derivation,
    parse_poset,
    properness_document,
    report_document,
    verdict_document,
)
from .properness import (
    CannotProperizeError,
    NoNonzeroDerivationError,
    ProperizeFailure,
    emit_witness,
    properize,
    properness_criterion,
)
from .ring import ring_from_name, validate_torsionfree
from .verify import (
    ProbeBudget,
    check_central_annihilating,
    check_derivation,
    check_lie_n_derivation,
)

EXIT_OK, EXIT_REFUTED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_poset(args) -> Poset:
    return parse_poset(load_json(args.poset), close=False if args.no_close else None)


def _load_map(args, poset: Poset):
    ring = None
    if args.ring is not None:
        try:
            ring = ring_from_name(args.ring)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    ring, n, spec = parse_derivation(load_json(args.derivation), poset, ring, args.n)
    if not validate_torsionfree(ring, n):
        raise InputError(f"ring {ring.name} has 2- or {n - 1}-torsion; n={n} is not admissible")
    return ring, n, spec


def _budget(args) -> ProbeBudget:
    return ProbeBudget(seed=args.seed, tuples=args.probes)


def cmd_validate(args) -> tuple[dict, int]:
    poset = _load_poset(args)
    P = poset.preorder
    doc = {
        "valid": True,
        "vertices": P.size,
        "relations": len(P.pairs),
        "strict_edges": len(P.strict_edges),
        "components": len(P.components),
        "classes": len(P.classification.classes),
    }
    if args.derivation is not None:
        ring, n, spec = _load_map(args, poset)
        doc["derivation"] = {"ring": ring.name, "n": n, "terms": len(spec.terms)}
    return doc, EXIT_OK


def cmd_components(args) -> tuple[dict, int]:
    return components_document(_load_poset(args)), EXIT_OK


def cmd_classes(args) -> tuple[dict, int]:
    return classes_document(_load_poset(args)), EXIT_OK


def cmd_properness(args) -> tuple[dict, int]:
    poset = _load_poset(args)
    verdict = properness_criterion(poset.preorder.classification)
    return properness_document(poset, verdict), EXIT_OK if verdict.proper_capable else EXIT_REFUTED


def cmd_check(args) -> tuple[dict, int]:
    poset = _load_poset(args)
    ring, n, spec = _load_map(args, poset)
    budget = _budget(args)
    if args.law == "lie":
        verdict = check_lie_n_derivation(spec, n, budget)
    elif args.law == "derivation":
        verdict = check_derivation(spec, budget)
    else:
        verdict = check_central_annihilating(spec, n, budget)
    doc = {"ring": ring.name, "n": n, "seed": args.seed, **verdict_document(poset, ring, verdict)}
    return doc, EXIT_OK if verdict.passed else EXIT_REFUTED


def cmd_decompose(args) -> tuple[dict, int]:
    poset = _load_poset(args)
    _, n, spec = _load_map(args, poset)
    report = decompose(spec, n, _budget(args))
    return report_document(poset, report), EXIT_OK if report.decomposable else EXIT_REFUTED


def cmd_witness(args) -> tuple[dict, int]:
    poset = _load_poset(args)
    try:
        ring = ring_from_name(args.ring or "intpoly")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    n = args.n or 2
    try:
        spec = emit_witness(poset.preorder.classification, ring)
    except NoNonzeroDerivationError as exc:
        raise InputError(str(exc)) from None
    if spec is None:
        verdict = properness_criterion(poset.preorder.classification)
        return {"witness": None, "summary": verdict.summary()}, EXIT_OK
    return derivation_document(poset, spec, n), EXIT_REFUTED


def cmd_properize(args) -> tuple[dict, int]:
    poset = _load_poset(args)
    ring, n, spec = _load_map(args, poset)
    budget = _budget(args)
    report = decompose(spec, n, budget)
    if not report.decomposable:
        return {"proper": False, "reason": "not decomposable", "decomposition": report_document(poset, report)}, EXIT_REFUTED
    C = poset.preorder.classification
    try:
        result = properize(report, C, budget)
    except CannotProperizeError as exc:
        return {"proper": False, "reason": str(exc)}, EXIT_REFUTED
    if isinstance(result, ProperizeFailure):
        comp, i, j = result.certificate
        return {
            "proper": False,
            "reason": "class derivations differ inside a component",
            "certificate": {
                "component": comp,
                "class_edges": [poset.name_edge(C.representative(i)), poset.name_edge(C.representative(j))],
            },
            "check": verdict_document(poset, ring, result.verdict),
        }, EXIT_REFUTED
    doc = {
        "proper": result.ok,
        "D": derivation_document(poset, result.D, n),
        "kappa_check": verdict_document(poset, ring, result.verdict),
    }
    return doc, EXIT_OK if result.ok else EXIT_REFUTED


COMMANDS = {
    "validate": (cmd_validate, "parse a poset (and optionally a derivation) document"),
    "components": (cmd_components, "list connected components"),
    "classes": (cmd_classes, "list edge classes with member edges and vertex sets"),
    "properness": (cmd_properness, "decide whether every Lie n-derivation is proper"),
    "check": (cmd_check, "falsify a law on a derivation document"),
    "decompose": (cmd_decompose, "split a derivation into its structural parts"),
    "witness": (cmd_witness, "emit a non-proper Lie derivation when one exists"),
    "properize": (cmd_properize, "rewrite a derivation as derivation plus central map"),
}

_NEEDS_MAP = {"check", "decompose", "properize"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="int | rat | mod:m | intpoly (overrides the document)")
    common.add_argument("--n", type=int, help="commutator length (overrides the document)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--probes", type=int, default=500)
    common.add_argument("--no-close", action="store_true", help="do not close the relation")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="incidence-lie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("poset")
        if name in _NEEDS_MAP:
            p.add_argument("derivation")
        elif name == "validate":
            p.add_argument("derivation", nargs="?")
        if name == "check":
            p.add_argument("--law", choices=("lie", "derivation", "central"), default="lie")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.probes < 1:
        parser.error("--probes must be positive")
    if args.n is not None and args.n < 2:
        parser.error("--n must be at least 2")
    handler = COMMANDS[args.command][0]
    try:
        doc, code = handler(args)
    except (DocumentError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dump_json(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
