import json
import subprocess
import sys

import pytest

from conftest import FIXTURES, GOLDEN, load_fixture
from incidence_lie.cli import main
from incidence_lie.documents import (
    DocumentError,
    derivation_document,
    dump_json,
    parse_derivation,
    parse_poset,
    poset_document,
)
from incidence_lie.properness import emit_witness
from incidence_lie.ring import INTPOLY
from incidence_lie.verify import ProbeBudget, probe_elements

MANIFEST = json.loads((GOLDEN / "manifest.json").read_text())


def run(capsys, args):
    code = main([a.replace("{fixtures}", str(FIXTURES)) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("entry", MANIFEST, ids=[e["golden"] for e in MANIFEST])
def test_golden(capsys, entry):
    code, out, _ = run(capsys, entry["args"])
    assert code == entry["exit"]
    assert out == (GOLDEN / entry["golden"]).read_text(encoding="utf-8")


def test_reports_are_repeatable(capsys):
    args = ["decompose", "{fixtures}/vee.json", "{fixtures}/vee_witness.json", "--seed", "4", "--probes", "50"]
    first = run(capsys, args)
    assert run(capsys, args) == first


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, ["classes", "{fixtures}/vee.json", "--out", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "classes_vee.json").read_text()


def test_witness_document_round_trips():
    poset = parse_poset(load_fixture("vee.json"))
    W = emit_witness(poset.preorder.classification, INTPOLY)
    doc = json.loads(dump_json(derivation_document(poset, W, 3)))
    ring, n, again = parse_derivation(doc, poset)
    assert ring == INTPOLY and n == 3 and again.terms == W.terms
    for beta in probe_elements(poset.preorder, INTPOLY, ProbeBudget(tuples=200)):
        assert again(beta) == W(beta)


@pytest.mark.parametrize("name", ["chain3_structured.json", "twochain_structured.json", "vee_witness.json"])
def test_derivation_documents_round_trip(name):
    poset_name = name.split("_")[0] + ".json"
    poset = parse_poset(load_fixture(poset_name))
    ring, n, spec = parse_derivation(load_fixture(name), poset)
    ring2, n2, spec2 = parse_derivation(json.loads(dump_json(derivation_document(poset, spec, n))), poset)
    assert (ring2, n2) == (ring, n)
    for beta in probe_elements(poset.preorder, ring, ProbeBudget(tuples=200)):
        assert spec2(beta) == spec(beta)


def test_poset_document_round_trip():
    poset = parse_poset(load_fixture("chain3.json"))
    again = parse_poset(poset_document(poset))
    assert again == poset


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_malformed_json_reports_line(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{\n  "vertices": ["a",\n}')
    code, out, err = run(capsys, ["validate", path])
    assert code == 2 and out == ""
    assert "line 3" in err


@pytest.mark.parametrize(
    "poset,needle",
    [
        ({"vertices": ["a", "a"]}, "duplicate vertex"),
        ({"vertices": ["a"], "leq": [["a", "z"]]}, "poset.leq[0][1]: unknown vertex 'z'"),
        ({"vertices": [1, 2]}, "vertex names must be strings"),
        ({"leq": []}, "missing field 'vertices'"),
        ({"vertices": ["a", "b", "c"], "leq": [["a", "b"], ["b", "c"]], "close": False}, "not transitive"),
    ],
)
def test_poset_errors(tmp_path, capsys, poset, needle):
    code, _, err = run(capsys, ["validate", write(tmp_path, "p.json", poset)])
    assert code == 2 and needle in err


def test_no_close_flag(tmp_path, capsys):
    path = write(tmp_path, "p.json", {"vertices": ["a", "b", "c"], "leq": [["a", "b"], ["b", "c"]]})
    assert run(capsys, ["validate", path])[0] == 0
    code, _, err = run(capsys, ["validate", path, "--no-close"])
    assert code == 2 and "not transitive" in err


@pytest.mark.parametrize(
    "doc,needle",
    [
        ({"ring": "gf:4", "n": 2, "terms": []}, "unknown ring"),
        ({"ring": "int", "n": 2, "terms": [{"kind": "shear"}]}, "unknown term kind 'shear'"),
        ({"ring": "int", "n": 2, "terms": [{"kind": "inner", "alpha": [["b", "a", "1"]]}]}, "'b' is not <= 'a'"),
        ({"ring": "int", "n": 2, "terms": [{"kind": "transitive", "f": [["a", "b", "1"]]}]}, "f(a"[:1]),
        ({"ring": "int", "n": 2, "terms": [{"kind": "inner", "alpha": [["a", "b", "x"]]}]}, "terms[0].alpha[0][2]"),
        ({"ring": "int", "n": 1, "terms": []}, "at least 2"),
        ({"ring": "int", "terms": [{"kind": "additive_induced", "assign": [[["a", "c"], ["poly_times_ddt", [1]]]]}]},
         "only defined on intpoly"),
        ({"ring": "intpoly", "terms": [{"kind": "central_trace", "h": [[0, [1]]]}]}, "constant term"),
        ({"ring": "intpoly", "terms": [{"kind": "proper_part", "assign": [[0, ["zero", None]], [3, ["zero", None]]]}]},
         "unknown component 3"),
        ({"ring": "intpoly", "terms": [{"kind": "witness", "class_edge": ["c", "b"], "t": "a", "f": ["poly_times_ddt", [1]]}]},
         "is not a strict edge"),
    ],
)
def test_derivation_errors(tmp_path, capsys, doc, needle):
    code, _, err = run(capsys, ["validate", str(FIXTURES / "chain3.json"), write(tmp_path, "d.json", doc)])
    assert code == 2
    assert needle in err


def test_witness_vertex_must_lie_on_the_class(tmp_path, capsys):
    doc = {"ring": "intpoly", "terms": [{"kind": "witness", "class_edge": ["a", "b"], "t": "c", "f": ["poly_times_ddt", [1]]}]}
    code, _, err = run(capsys, ["validate", str(FIXTURES / "twochain.json"), write(tmp_path, "d.json", doc)])
    assert code == 2 and "'c' is not on the class" in err


def test_raw_witness_with_equivalent_base_is_refuted_not_rejected(tmp_path, capsys):
    poset = write(tmp_path, "p.json", {"vertices": ["a", "b", "c", "d"], "leq": [["a", "b"], ["b", "a"], ["b", "c"], ["d", "c"]]})
    doc = write(tmp_path, "d.json", {"ring": "intpoly", "n": 2, "terms": [
        {"kind": "witness", "class_edge": ["a", "b"], "t": "a", "f": ["poly_times_ddt", [1]]}]})
    assert run(capsys, ["validate", poset, doc])[0] == 0
    code, out, _ = run(capsys, ["check", poset, doc])
    assert code == 1 and json.loads(out)["passed"] is False


def test_inadmissible_ring_is_an_input_error(tmp_path, capsys):
    doc = write(tmp_path, "d.json", {"ring": "mod:9", "n": 4, "terms": []})
    code, _, err = run(capsys, ["check", str(FIXTURES / "chain3.json"), doc])
    assert code == 2 and "not admissible" in err
    code, _, _ = run(capsys, ["check", str(FIXTURES / "chain3.json"), doc, "--n", "2"])
    assert code == 0


def test_witness_on_ring_without_derivations(capsys):
    code, _, err = run(capsys, ["witness", "{fixtures}/vee.json", "--ring", "int"])
    assert code == 2 and "no nonzero additive derivation" in err


def test_bad_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", str(FIXTURES / "chain3.json"), str(FIXTURES / "chain3_structured.json"), "--probes", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_missing_file(capsys):
    code, _, err = run(capsys, ["classes", "/nonexistent/poset.json"])
    assert code == 2 and "poset.json" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "incidence_lie", "properness", str(FIXTURES / "vee.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert proc.stdout == (GOLDEN / "properness_vee.json").read_text()


def test_document_error_type():
    with pytest.raises(DocumentError):
        parse_poset([])
