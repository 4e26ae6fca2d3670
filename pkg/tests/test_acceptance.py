"""Acceptance suite.

Each criterion is one test that records a single PASS/FAIL line; the lines
are printed in the terminal summary (and immediately with ``-s``).
"""
import json
import random
import time

import pytest

from conftest import ALL_PREORDERS, FIXTURES, GOLDEN, PREORDERS, load_fixture
from incidence_lie.algebra import basis
from incidence_lie.cli import main
from incidence_lie.decompose import decompose
from incidence_lie.documents import parse_derivation, parse_poset
from incidence_lie.maps import AdditiveInduced, MapSpec, make_witness, witness_base_points
from incidence_lie.preorder import edge_classes, random_preorder
from incidence_lie.properness import (
    ProperForm,
    check_quasi_additive_proper,
    emit_witness,
    properize,
    properness_criterion,
)
from incidence_lie.ring import INTPOLY, AdditiveDerivation
from incidence_lie.verify import (
    ProbeBudget,
    check_central_annihilating,
    check_derivation,
    check_lie_n_derivation,
    probe_elements,
)
from oracles import brute_edge_classes
from test_maps import random_structured
from test_preorder import _check_vertex_sets
from test_properness import criterion_passing_map

RESULTS: dict[int, str] = {}
FIVE = ["chain3", "vee", "twochain", "loop2", "isolated"]
STRUCTURED_DOCS = [
    ("chain3.json", "chain3_structured.json"),
    ("chain3.json", "chain3_inner_int.json"),
    ("twochain.json", "twochain_structured.json"),
    ("vee.json", "vee_witness.json"),
]


def record(k: int, title: str, passed: bool, start: float, note: str = "") -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {k}: {title} ({time.perf_counter() - start:.1f}s{', ' + note if note else ''})"
    RESULTS[k] = line
    print(line)
    assert passed, line


def test_criterion_1_edge_classes_match_cycle_oracle():
    start = time.perf_counter()
    rng = random.Random(1)
    cases = [PREORDERS[name] for name in FIVE]
    cases += [random_preorder(rng.randint(1, 7), rng, density=rng.uniform(0.1, 0.6), backward=0.08) for _ in range(200)]
    bad = [P for P in cases if edge_classes(P).classes != brute_edge_classes(P)]
    record(1, "block edge classes equal the cycle oracle", not bad, start, f"{len(cases)} preorders, {len(bad)} mismatches")


def random_induced(P, rng):
    return MapSpec(P, INTPOLY, (AdditiveInduced({
        i: AdditiveDerivation.poly_times_ddt([rng.randint(-2, 2) for _ in range(2)])
        for i in range(len(P.classification.classes))
    }),))


def test_criterion_2_induced_and_witness_maps_are_lie_n_derivations():
    start = time.perf_counter()
    rng = random.Random(2)
    budget = ProbeBudget(seed=2, tuples=1000)
    failures, runs = [], 0
    for name in FIVE:
        P = PREORDERS[name]
        maps = [("induced", random_induced(P, rng))]
        W = emit_witness(P.classification, INTPOLY)
        if W is not None:
            maps.append(("witness", W))
        for label, L in maps:
            for n in (2, 3, 4):
                runs += 1
                v = check_lie_n_derivation(L, n, budget)
                if not v.passed:
                    failures.append((name, label, n, v.summary()))
    record(2, "induced and witness maps pass the Lie n-law", not failures, start, f"{runs} runs x 1000 probes")


def test_criterion_3_round_trip_decomposition():
    start = time.perf_counter()
    rng = random.Random(3)
    budget = ProbeBudget(seed=3, tuples=500)
    failures = []
    for k in range(50):
        P = random_preorder(rng.randint(2, 6), rng, density=0.4, backward=0.08)
        L = random_structured(P, rng, with_witness=False)
        inner, _, induced, _ = L.terms
        rep = decompose(L, rng.choice((2, 3)), budget)
        if not rep.decomposable:
            failures.append((k, rep.failure.summary()))
            continue
        if rep.e_L != inner.alpha.strict_part:
            failures.append((k, "e_L"))
        if rep.fitted_derivs != dict(induced.assign):
            failures.append((k, "fits"))
        recomposed = rep.recomposition()
        if any(recomposed(b) != L(b) for b in probe_elements(P, INTPOLY, budget)):
            failures.append((k, "recomposition"))
        if not check_central_annihilating(rep.residual, rep.n, budget).passed:
            failures.append((k, "residual"))
    record(3, "decomposition round trip", not failures, start, f"50 maps, {len(failures)} failures")


def test_criterion_4_properness_biconditional():
    start = time.perf_counter()
    rng = random.Random(4)
    budget = ProbeBudget(seed=4, tuples=500)
    problems = []
    for name, P in ALL_PREORDERS.items():
        capable = properness_criterion(P.classification).proper_capable
        if capable != (emit_witness(P.classification, INTPOLY) is None):
            problems.append(name)

    vee = PREORDERS["vee"]
    W = emit_witness(vee.classification, INTPOLY)
    if not check_lie_n_derivation(W, 2, budget).passed:
        problems.append("vee witness law")
    if check_quasi_additive_proper(decompose(W, 2, budget), vee.classification).passed:
        problems.append("vee witness is quasi-additive proper")

    for name in ("chain3", "twochain"):
        P = PREORDERS[name]
        L = criterion_passing_map(P, rng)
        out = properize(decompose(L, 2, budget), P.classification, budget)
        if not isinstance(out, ProperForm) or not out.ok:
            problems.append(f"{name} properize")
        elif not check_derivation(out.D, budget).passed:
            problems.append(f"{name} D")
    record(4, "properness criterion iff no witness", not problems, start, ", ".join(problems) or f"{len(ALL_PREORDERS)} preorders")


def test_criterion_5_corner_antisymmetry():
    start = time.perf_counter()
    rng = random.Random(5)
    cases = []
    for poset_file, doc_file in STRUCTURED_DOCS:
        poset = parse_poset(load_fixture(poset_file))
        _, _, spec = parse_derivation(load_fixture(doc_file), poset)
        cases.append(spec)
    cases += [random_structured(P, rng) for P in ALL_PREORDERS.values()]
    pairs, bad = 0, []
    for L in cases:
        P, R = L.preorder, L.ring
        for x, y in P.strict_edges:
            pairs += 1
            lhs = L(basis(P, R, x, x))[x, y]
            rhs = R.neg(L(basis(P, R, y, y))[x, y])
            if lhs != rhs:
                bad.append((x, y))
    record(5, "L(e_xx)(x,y) = -L(e_yy)(x,y)", not bad, start, f"{len(cases)} maps, {pairs} strict pairs")


def test_criterion_6_vertex_set_laws():
    start = time.perf_counter()
    rng = random.Random(6)
    cases = list(ALL_PREORDERS.values())
    cases += [random_preorder(rng.randint(1, 6), rng, density=rng.uniform(0.1, 0.6), backward=0.1) for _ in range(100)]
    failures = []
    for P in cases:
        try:
            _check_vertex_sets(P)
        except AssertionError:
            failures.append(P)
    record(6, "V(x,i) and V_x laws", not failures, start, f"{len(cases)} preorders")


def test_criterion_7_cli_golden_files(capsys):
    start = time.perf_counter()
    manifest = json.loads((GOLDEN / "manifest.json").read_text())
    mismatches = []
    for entry in manifest:
        code = main([a.replace("{fixtures}", str(FIXTURES)) for a in entry["args"]])
        out = capsys.readouterr().out
        if code != entry["exit"] or out != (GOLDEN / entry["golden"]).read_text(encoding="utf-8"):
            mismatches.append(entry["golden"])
    kinds = {e["args"][0] for e in manifest}
    complete = {"witness", "decompose"} <= kinds
    record(7, "CLI reports are byte-identical to golden files", complete and not mismatches, start,
           f"{len(manifest)} files, {len(mismatches)} mismatches")
