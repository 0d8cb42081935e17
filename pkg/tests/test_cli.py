import io
import json

import pytest

from prelie_smatrix.cli import load_phase_space, main, phase_space_document, dump_document
from prelie_smatrix.phasespace import build_phase_space

A2_DOC = {"kind": "pre-lie", "dim": 2, "basis": ["e1", "e2"],
          "product": [{"i": 2, "j": 2, "out": [{"k": 1, "c": "1"}]}]}
RC_DOC = {"dim": 2, "entries": [{"i": 1, "j": 1, "c": "1"}, {"i": 2, "j": 2, "c": "1"}]}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)

    return write


def test_verify_algebra_file(files):
    code, out, _ = run("verify", "--algebra", files("a2.json", A2_DOC))
    assert code == 0
    assert "pass" in out


def test_verify_rc_reports_residual(files):
    code, out, _ = run("verify", "--algebra", files("a2.json", A2_DOC), "--r", files("rc.json", RC_DOC))
    assert code == 1
    assert "-(e1^e2)(x)e2" in out


def test_verify_structured(files):
    code, out, _ = run("verify", "--algebra", "builtin:A2", "--r", "builtin:rC", "--format", "structured")
    assert code == 1
    doc = json.loads(out)
    assert doc["exit_code"] == 1 and doc["ok"] is False


@pytest.mark.parametrize("doc", [
    {"dim": 2, "product": [{"i": 3, "j": 1, "out": [{"k": 1, "c": "1"}]}]},
    {"dim": 2, "product": [{"i": 1, "j": 1, "out": [{"k": 1, "c": 0.5}]}]},
    {"dim": 2, "product": [{"i": 1, "j": 1, "out": []}, {"i": 1, "j": 1, "out": []}]},
    {"dim": "two"},
    "{not json",
])
def test_verify_input_errors(files, doc):
    code, _, err = run("verify", "--algebra", files("bad.json", doc))
    assert code == 2
    assert err


def test_non_pre_lie_is_math_failure(files):
    doc = {"dim": 2, "product": [{"i": 1, "j": 2, "out": [{"k": 1, "c": "1"}]},
                                 {"i": 2, "j": 1, "out": [{"k": 2, "c": "1"}]}]}
    code, out, _ = run("verify", "--algebra", files("x.json", doc))
    assert code == 1
    assert "(1, 2, 1)" in out


def test_missing_file_and_bad_flags():
    assert run("verify", "--algebra", "/nonexistent/a.json")[0] == 2
    assert run("cohomology", "--algebra", "builtin:A2")[0] == 2
    assert run("verify", "--algebra", "builtin:nope")[0] == 2
    assert run()[0] == 2


def test_cohomology_command():
    code, out, _ = run("cohomology", "--algebra", "builtin:A2", "--r", "builtin:rB",
                       "--max-degree", "1", "--complex", "subcomplex")
    assert code == 0 and "H̃¹: 1" in out
    code, out, _ = run("cohomology", "--algebra", "builtin:Z2", "--r", "builtin:id2", "--max-degree", "1")
    assert code == 0 and "H̃¹: 2" in out
    assert run("cohomology", "--algebra", "builtin:A2", "--r", "builtin:rC")[0] == 1


def test_phase_space_export(tmp_path):
    path = tmp_path / "ps.json"
    code, _, _ = run("phase-space", "--algebra", "builtin:A2", "--r", "builtin:rA", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    entries = {(p["i"], p["j"]): p["out"] for p in doc["product"]}
    assert entries == {(2, 3): [{"k": 4, "c": "-1"}], (3, 2): [{"k": 4, "c": "1"}]}
    assert doc["splitting"] == {"g": [1, 2], "g*": [3, 4]}


def test_phase_space_zero(tmp_path):
    path = tmp_path / "z.json"
    assert run("phase-space", "--algebra", "builtin:Z2", "--r", "builtin:id2", "--out", str(path))[0] == 0
    assert json.loads(path.read_text())["product"] == []


def test_phase_space_failures(tmp_path):
    assert run("phase-space", "--algebra", "builtin:A2", "--r", "builtin:rC")[0] == 1
    bad = tmp_path / "missing" / "ps.json"
    assert run("phase-space", "--algebra", "builtin:A2", "--r", "builtin:rA", "--out", str(bad))[0] == 2


def test_round_trip_bit_identical(a2, r_a, r_b):
    for r in (r_a, r_b):
        text = dump_document(phase_space_document(build_phase_space(a2, r)))
        again = dump_document(phase_space_document(load_phase_space(json.loads(text))))
        assert text == again


def test_verify_phase_and_corruption(tmp_path):
    path = tmp_path / "ps.json"
    run("phase-space", "--algebra", "builtin:A2", "--r", "builtin:rA", "--out", str(path))
    assert run("verify-phase", "--phase", str(path))[0] == 0
    doc = json.loads(path.read_text())
    doc["product"].append({"i": 1, "j": 2, "out": [{"k": 1, "c": "1"}]})
    doc["product"].append({"i": 2, "j": 1, "out": [{"k": 1, "c": "-1"}]})
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run("verify-phase", "--phase", str(bad))
    assert code == 1
    assert "e1" in out
    doc["omega"] = [["0"] * 4] * 4
    bad.write_text(json.dumps(doc))
    assert run("verify-phase", "--phase", str(bad))[0] == 2


def test_deform_command(files):
    ok = run("deform", "--algebra", "builtin:A2", "--r", "builtin:rB", "--kappa", "builtin:rA")
    assert ok[0] == 0 and "deformed phase space: pass" in ok[1]
    notcocycle = files("k.json", {"dim": 2, "entries": [["0", "0"], ["0", "1"]]})
    assert run("deform", "--algebra", "builtin:A2", "--r", "builtin:rB", "--kappa", notcocycle)[0] == 1
    assert run("deform", "--algebra", "builtin:A2", "--r", "builtin:rB", "--kappa", "builtin:zero2",
               "--kappa2", "builtin:zero2", "--x", "1,0")[0] == 0
    assert run("deform", "--algebra", "builtin:A2", "--r", "builtin:rB", "--kappa", "builtin:rA",
               "--kappa2", "builtin:zero2", "--x", "1,0")[0] == 1
    assert run("deform", "--algebra", "builtin:A2", "--r", "builtin:rB", "--kappa", "builtin:zero2",
               "--kappa2", "builtin:zero2", "--x", "1")[0] == 2


def test_nijenhuis_command():
    code, out, _ = run("nijenhuis", "--algebra", "builtin:A2", "--r", "builtin:rB")
    assert code == 0 and "(1, 0)" in out
    assert run("nijenhuis", "--algebra", "builtin:A2", "--r", "builtin:rB", "--x", "1,0")[0] == 0
    assert run("nijenhuis", "--algebra", "builtin:A2", "--r", "builtin:rB", "--x", "0,1")[0] == 1
    assert run("nijenhuis", "--algebra", "builtin:A2", "--r", "builtin:rB", "--x", "0.5,0")[0] == 2


def test_pseudo_hessian_command():
    code, out, _ = run("pseudo-hessian", "--algebra", "builtin:A2", "--r", "builtin:rB")
    assert code == 0
    code, out, _ = run("pseudo-hessian", "--algebra", "builtin:A2", "--r", "builtin:rA")
    assert code == 1


def test_weak_hom_command(files):
    base = ["weak-hom", "--algebra", "builtin:A2", "--phi", "builtin:id", "--varphi", "builtin:id"]
    assert run(*base, "--r", "builtin:rB", "--r2", "builtin:rB", "--phase")[0] == 0
    assert run(*base, "--r", "builtin:rB", "--r2", "builtin:rC")[0] == 1
    wrong = files("m.json", {"dim": 3, "entries": [["1", "0", "0"]] * 3})
    assert run("weak-hom", "--algebra", "builtin:A2", "--r", "builtin:rB", "--r2", "builtin:rB",
               "--phi", wrong, "--varphi", "builtin:id")[0] == 2


def test_list_builtins():
    code, out, _ = run("--list-builtins")
    assert code == 0 and "rB" in out
