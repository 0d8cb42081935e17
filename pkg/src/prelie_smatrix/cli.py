"""Command-line front end.

Exit codes: 0 when every mathematical check passes, 1 when a well-posed
check fails, 2 for malformed input or I/O trouble.

Algebra files (JSON, indices 1-based, coefficients as rational strings)::

    {"kind": "pre-lie", "dim": 2, "basis": ["e1", "e2"],
     "product": [{"i": 2, "j": 2, "out": [{"k": 1, "c": "1"}]}]}

Tensor and matrix files carry ``{"dim": n, "entries": ...}`` where
``entries`` is a dense n x n table or a list of ``{"i", "j", "c"}`` triples.
For symmetric tensors a sparse entry also fills its mirror position.
``builtin:NAME`` may replace any path (see ``--list-builtins``).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog
from .deformation import (
    cohomology_dims,
    deformation_report,
    deformations_equivalent,
    is_nijenhuis,
    is_weak_homomorphism,
    nijenhuis_scan,
    trivial_deformation,
)
from .exactla import format_rational, to_rational, zeros
from .phasespace import (
    PhaseSpace,
    build_phase_space,
    deform_phase_space,
    is_weak_phase_homomorphism,
    nijenhuis_phase_deformation,
    phase_omega,
    verify_phase_space,
)
from .prelie import PreLieAlgebra, verify_lie, verify_pre_lie
from .report import (
    ConsistencyError,
    InputError,
    PreconditionError,
    VerificationReport,
)
from .smatrix import BilinearForm, SymTensor2, format_tensor, is_s_matrix, pseudo_hessian

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

BUILTIN_TENSORS = {
    "rA": catalog.rA,
    "rB": catalog.rB,
    "rC": catalog.rC,
    "zero2": lambda: SymTensor2.zero(2),
    "id2": lambda: SymTensor2([[1, 0], [0, 1]]),
}


# -- file formats ------------------------------------------------------------------


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg}, line {exc.lineno})") from None


def _rat(value, where: str):
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not accepted, write rationals as strings")
    try:
        return to_rational(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _index(value, dim: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= dim:
        raise InputError(f"{where}: index {value!r} outside 1..{dim}")
    return value - 1


def _dim(data, where: str) -> int:
    dim = data.get("dim") if isinstance(data, dict) else None
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise InputError(f"{where}: 'dim' must be a non-negative integer")
    return dim


def parse_structure(data, where: str = "algebra") -> tuple[str, np.ndarray, list[str] | None]:
    """``(kind, cube, basis)`` from an algebra document."""
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a JSON object")
    kind = data.get("kind", "pre-lie")
    if kind not in ("pre-lie", "lie"):
        raise InputError(f"{where}: kind must be 'pre-lie' or 'lie'")
    n = _dim(data, where)
    basis = data.get("basis")
    if basis is not None and (not isinstance(basis, list) or len(basis) != n
                              or not all(isinstance(b, str) for b in basis)):
        raise InputError(f"{where}: 'basis' must list {n} names")
    cube = zeros(n, n, n)
    seen = set()
    product = data.get("product", [])
    if not isinstance(product, list):
        raise InputError(f"{where}: 'product' must be a list")
    for e, entry in enumerate(product):
        loc = f"{where}: product[{e}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("out", []), list):
            raise InputError(f"{loc}: expected {{i, j, out}}")
        i = _index(entry.get("i"), n, loc)
        j = _index(entry.get("j"), n, loc)
        if (i, j) in seen:
            raise InputError(f"{loc}: duplicate entry for ({i + 1}, {j + 1})")
        seen.add((i, j))
        for t in entry.get("out", []):
            if not isinstance(t, dict):
                raise InputError(f"{loc}: output terms must be {{k, c}}")
            k = _index(t.get("k"), n, loc)
            cube[i, j, k] += _rat(t.get("c"), loc)
    return kind, cube, basis


def load_algebra(source: str) -> tuple[str, np.ndarray, list[str] | None]:
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in catalog.CATALOG:
            raise InputError(f"unknown builtin algebra {name!r}")
        a = catalog.CATALOG[name]()
        return "pre-lie", np.array(a.c), list(a.basis_names)
    return parse_structure(_read_json(source), source)


def load_prelie(source: str) -> PreLieAlgebra:
    kind, cube, basis = load_algebra(source)
    if kind != "pre-lie":
        raise InputError(f"{source}: this command needs a pre-Lie algebra")
    report = verify_pre_lie(cube)
    if not report:
        raise PreconditionError(f"{source} is not a pre-Lie algebra", report)
    return PreLieAlgebra(cube, basis, check=False)


def parse_matrix(data, where: str, *, symmetric: bool) -> np.ndarray:
    n = _dim(data, where)
    entries = data.get("entries")
    m = zeros(n, n)
    if isinstance(entries, list) and all(isinstance(row, list) for row in entries):
        if len(entries) != n or any(len(row) != n for row in entries):
            raise InputError(f"{where}: dense entries must be {n} x {n}")
        for i, row in enumerate(entries):
            for j, v in enumerate(row):
                m[i, j] = _rat(v, f"{where}: entries[{i + 1}][{j + 1}]")
    elif isinstance(entries, list):
        given = {}
        for e, t in enumerate(entries):
            loc = f"{where}: entries[{e}]"
            if not isinstance(t, dict):
                raise InputError(f"{loc}: expected {{i, j, c}}")
            i, j = _index(t.get("i"), n, loc), _index(t.get("j"), n, loc)
            if (i, j) in given:
                raise InputError(f"{loc}: duplicate entry ({i + 1}, {j + 1})")
            given[(i, j)] = _rat(t.get("c"), loc)
        for (i, j), v in given.items():
            m[i, j] = v
            if symmetric and (j, i) not in given:
                m[j, i] = v
    else:
        raise InputError(f"{where}: 'entries' must be a table or a list of triples")
    if symmetric and np.any(m != m.T):
        raise InputError(f"{where}: tensor is not symmetric")
    return m


def load_tensor(source: str, dim: int) -> SymTensor2:
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTIN_TENSORS:
            raise InputError(f"unknown builtin tensor {name!r}")
        r = BUILTIN_TENSORS[name]()
    else:
        r = SymTensor2(parse_matrix(_read_json(source), source, symmetric=True))
    if r.dim != dim:
        raise InputError(f"{source}: tensor has dimension {r.dim}, algebra has {dim}")
    return r


def load_matrix(source: str, dim: int) -> np.ndarray:
    if source == "builtin:id":
        m = zeros(dim, dim)
        for i in range(dim):
            m[i, i] = 1
        return m
    m = parse_matrix(_read_json(source), source, symmetric=False)
    if m.shape != (dim, dim):
        raise InputError(f"{source}: matrix must be {dim} x {dim}")
    return m


def parse_vector(text: str, dim: int) -> np.ndarray:
    parts = [p for p in text.split(",")]
    if len(parts) != dim:
        raise InputError(f"--x needs {dim} comma-separated rationals")
    out = zeros(dim)
    for i, p in enumerate(parts):
        out[i] = _rat(p.strip(), "--x")
    return out


def structure_document(cube: np.ndarray, kind: str, basis=None) -> dict:
    n = cube.shape[0]
    product = []
    for i in range(n):
        for j in range(n):
            out = [{"k": k + 1, "c": format_rational(cube[i, j, k])}
                   for k in range(n) if cube[i, j, k] != 0]
            if out:
                product.append({"i": i + 1, "j": j + 1, "out": out})
    doc = {"kind": kind, "dim": n}
    if basis is not None:
        doc["basis"] = list(basis)
    doc["product"] = product
    return doc


def _dense(m: np.ndarray) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in m]


def phase_space_document(ps: PhaseSpace) -> dict:
    n = ps.n
    doc = structure_document(ps.bracket, "lie", ps.basis_names)
    doc["splitting"] = {"g": list(range(1, n + 1)), "g*": list(range(n + 1, 2 * n + 1))}
    doc["omega"] = _dense(ps.omega.matrix)
    doc["base"] = structure_document(ps.base.c, "pre-lie", ps.base.basis_names)
    doc["dual_product"] = structure_document(ps.dual_product.c, "pre-lie")
    if ps.r is not None:
        doc["r"] = {"dim": n, "entries": _dense(ps.r.coeff)}
    return doc


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_phase_space(data, where: str = "phase space") -> PhaseSpace:
    kind, cube, basis = parse_structure(data, where)
    if kind != "lie":
        raise InputError(f"{where}: phase-space files have kind 'lie'")
    for key in ("splitting", "omega", "base", "dual_product"):
        if key not in data:
            raise InputError(f"{where}: missing '{key}'")
    _, base_c, base_names = parse_structure(data["base"], f"{where}: base")
    _, dual_c, _ = parse_structure(data["dual_product"], f"{where}: dual_product")
    n = base_c.shape[0]
    if cube.shape[0] != 2 * n or dual_c.shape[0] != n:
        raise InputError(f"{where}: dimensions of bracket, base and dual product disagree")
    split = data["splitting"]
    if split != {"g": list(range(1, n + 1)), "g*": list(range(n + 1, 2 * n + 1))}:
        raise InputError(f"{where}: only the splitting g = 1..n, g* = n+1..2n is supported")
    om = data["omega"]
    if not isinstance(om, list):
        raise InputError(f"{where}: 'omega' must be a dense table")
    omega_m = parse_matrix({"dim": 2 * n, "entries": om}, f"{where}: omega", symmetric=False)
    if np.any(omega_m != phase_omega(n).matrix):
        raise InputError(f"{where}: omega is not the canonical pairing form")
    r = None
    if "r" in data:
        r = SymTensor2(parse_matrix(data["r"], f"{where}: r", symmetric=True))
    cube.flags.writeable = False
    return PhaseSpace(PreLieAlgebra(base_c, base_names, check=False),
                      PreLieAlgebra(dual_c, check=False), cube,
                      BilinearForm(omega_m, "skew"), r)


# -- output ------------------------------------------------------------------------


class Output:
    def __init__(self, fmt: str, command: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.lines: list[str] = []
        self.data: dict = {"command": command}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def put(self, key: str, value) -> None:
        self.data[key] = value

    def report(self, key: str, rep: VerificationReport, label: str = "") -> None:
        self.data[key] = rep.to_dict()
        self.lines.append(f"{label}{rep.summary()}")

    def finish(self, code: int) -> int:
        self.data["ok"] = code == EXIT_OK
        self.data["exit_code"] = code
        if self.fmt == "structured":
            self.stream.write(json.dumps(self.data, indent=2) + "\n")
        else:
            for ln in self.lines:
                self.stream.write(ln + "\n")
        return code


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _vec_text(v) -> str:
    return "(" + ", ".join(format_rational(q) for q in v) + ")"


def _combination(v, names) -> str:
    text = ""
    for k, c in enumerate(v):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{format_rational(abs(c))}*"
        if not text:
            text = ("-" if c < 0 else "") + mag + names[k]
        else:
            text += (" - " if c < 0 else " + ") + mag + names[k]
    return text or "0"


def _matrix_text(m) -> list[str]:
    return ["  [" + ", ".join(format_rational(v) for v in row) + "]" for row in m]


# -- commands ----------------------------------------------------------------------


def cmd_verify(args, out: Output) -> int:
    kind, cube, basis = load_algebra(args.algebra)
    rep = verify_pre_lie(cube) if kind == "pre-lie" else verify_lie(cube)
    out.report("algebra", rep)
    if not rep:
        return EXIT_FAIL
    if args.r:
        if kind != "pre-lie":
            raise InputError("--r needs a pre-Lie algebra")
        a = PreLieAlgebra(cube, basis, check=False)
        r = load_tensor(args.r, a.dim)
        srep = is_s_matrix(a, r)
        out.report("s_matrix", srep)
        if not srep:
            return EXIT_FAIL
    return EXIT_OK


def cmd_cohomology(args, out: Output) -> int:
    a = load_prelie(args.algebra)
    r = load_tensor(args.r, a.dim)
    dims = cohomology_dims(a, r, args.max_degree, args.complex)
    label = "H̃" if args.complex == "subcomplex" else "H"
    out.put("complex", args.complex)
    out.put("dims", {str(k): d for k, d in enumerate(dims, start=1)})
    for k, d in enumerate(dims, start=1):
        out.line(f"{label}{str(k).translate(_SUP)}: {d}")
    return EXIT_OK


def cmd_phase_space(args, out: Output) -> int:
    a = load_prelie(args.algebra)
    r = load_tensor(args.r, a.dim)
    ps = build_phase_space(a, r)
    doc = phase_space_document(ps)
    text = dump_document(doc)
    rep = verify_phase_space(ps)
    out.report("phase_space", rep)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from None
        again = load_phase_space(_read_json(args.out), args.out)
        if np.any(again.bracket != ps.bracket) or dump_document(phase_space_document(again)) != text:
            raise ConsistencyError("exported phase space does not round-trip")
        rep2 = verify_phase_space(again)
        out.report("reloaded", rep2, "reloaded file: ")
        out.put("file", args.out)
        out.line(f"wrote {args.out}")
        if not rep2:
            return EXIT_FAIL
    else:
        out.put("document", doc)
        names = ps.basis_names
        n2 = 2 * ps.n
        for i in range(n2):
            for j in range(i + 1, n2):
                v = ps.bracket[i, j]
                if np.any(v != 0):
                    out.line(f"[{names[i]}, {names[j]}]_p = {_combination(v, names)}")
    return EXIT_OK if rep else EXIT_FAIL


def cmd_verify_phase(args, out: Output) -> int:
    ps = load_phase_space(_read_json(args.phase), args.phase)
    rep = verify_phase_space(ps)
    out.report("phase_space", rep)
    return EXIT_OK if rep else EXIT_FAIL


def cmd_deform(args, out: Output) -> int:
    a = load_prelie(args.algebra)
    r = load_tensor(args.r, a.dim)
    kappa = load_tensor(args.kappa, a.dim)
    rep = deformation_report(a, r, kappa)
    out.put("deformation", rep.to_dict())
    out.line(f"2-cocycle: {'yes' if rep.is_two_cocycle else 'no'}")
    out.line(f"one-parameter deformation: {'yes' if rep.is_full_deformation else 'no'}")
    if rep.class_vector is not None:
        out.line(f"class in H̃²: {_vec_text(rep.class_vector)}")
    if not rep.is_full_deformation:
        out.line(f"[[r,kappa]]_s = {rep.bracket_r_kappa}; [[kappa,kappa]]_s = {rep.bracket_kappa_kappa}")
        return EXIT_FAIL
    pd = deform_phase_space(a, r, kappa)
    out.report("phase_space", pd.report)
    code = EXIT_OK if pd else EXIT_FAIL
    if args.kappa2:
        if args.x is None:
            raise InputError("--kappa2 needs --x")
        kappa2 = load_tensor(args.kappa2, a.dim)
        x = parse_vector(args.x, a.dim)
        eq = deformations_equivalent(a, r, kappa, kappa2, x)
        out.report("equivalence", eq)
        if not eq:
            code = EXIT_FAIL
    return code


def cmd_nijenhuis(args, out: Output) -> int:
    a = load_prelie(args.algebra)
    r = load_tensor(args.r, a.dim)
    if args.x is None:
        found = nijenhuis_scan(a, r)
        out.put("nijenhuis", [[format_rational(q) for q in v] for v in found])
        out.line(f"{len(found)} Nijenhuis element(s) among the scanned candidates")
        for v in found:
            out.line("  " + _vec_text(v))
        return EXIT_OK
    x = parse_vector(args.x, a.dim)
    rep = is_nijenhuis(a, r, x)
    out.report("nijenhuis", rep)
    if not rep:
        return EXIT_FAIL
    rt = trivial_deformation(a, r, x)
    kappa = rt.coefficient(1, SymTensor2.zero(a.dim))
    pi = nijenhuis_phase_deformation(a, r, x)
    out.put("trivial_deformation", {"r": _dense(r.coeff), "kappa": _dense(kappa.coeff)})
    out.put("pi_is_zero", pi.is_zero())
    out.line(f"r_t = r + t*({format_tensor(kappa.as_cochain())})")
    return EXIT_OK


def cmd_pseudo_hessian(args, out: Output) -> int:
    a = load_prelie(args.algebra)
    r = load_tensor(args.r, a.dim)
    b = pseudo_hessian(a, r)
    out.put("form", _dense(b.matrix))
    out.line("pseudo-Hessian form:")
    for ln in _matrix_text(b.matrix):
        out.line(ln)
    return EXIT_OK


def cmd_weak_hom(args, out: Output) -> int:
    a = load_prelie(args.algebra)
    r1 = load_tensor(args.r, a.dim)
    r2 = load_tensor(args.r2, a.dim)
    phi = load_matrix(args.phi, a.dim)
    varphi = load_matrix(args.varphi, a.dim)
    rep = is_weak_homomorphism(a, r1, r2, phi, varphi)
    out.report("weak_homomorphism", rep)
    code = EXIT_OK if rep else EXIT_FAIL
    if args.phase:
        prep = is_weak_phase_homomorphism(build_phase_space(a, r1), build_phase_space(a, r2),
                                          phi, varphi)
        out.report("phase_space", prep)
        if not prep:
            code = EXIT_FAIL
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prelie-smatrix",
                                description="Exact checks for s-matrices on pre-Lie algebras.")
    p.add_argument("--list-builtins", action="store_true", help="list builtin algebras and tensors")
    sub = p.add_subparsers(dest="command")

    def common(sp, r=True):
        sp.add_argument("--algebra", required=True, metavar="PATH")
        if r:
            sp.add_argument("--r", required=True, metavar="PATH")
        sp.add_argument("--format", choices=("text", "structured"), default="text")

    sp = sub.add_parser("verify", help="check an algebra and optionally the S-equation")
    sp.add_argument("--algebra", required=True, metavar="PATH")
    sp.add_argument("--r", metavar="PATH")
    sp.add_argument("--format", choices=("text", "structured"), default="text")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cohomology", help="cohomology dimensions of an s-matrix")
    common(sp)
    sp.add_argument("--max-degree", type=int, default=3, metavar="K")
    sp.add_argument("--complex", choices=("full", "subcomplex"), default="subcomplex")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("phase-space", help="build and export the phase space of an s-matrix")
    common(sp)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_phase_space)

    sp = sub.add_parser("verify-phase", help="re-verify an exported phase-space file")
    sp.add_argument("--phase", required=True, metavar="PATH")
    sp.add_argument("--format", choices=("text", "structured"), default="text")
    sp.set_defaults(func=cmd_verify_phase)

    sp = sub.add_parser("deform", help="one-parameter deformation r + t*kappa")
    common(sp)
    sp.add_argument("--kappa", required=True, metavar="PATH")
    sp.add_argument("--kappa2", metavar="PATH", help="second direction for an equivalence test")
    sp.add_argument("--x", metavar="Q,Q,...")
    sp.set_defaults(func=cmd_deform)

    sp = sub.add_parser("nijenhuis", help="test or scan for Nijenhuis elements")
    common(sp)
    sp.add_argument("--x", metavar="Q,Q,...")
    sp.set_defaults(func=cmd_nijenhuis)

    sp = sub.add_parser("pseudo-hessian", help="pseudo-Hessian form of an invertible s-matrix")
    common(sp)
    sp.set_defaults(func=cmd_pseudo_hessian)

    sp = sub.add_parser("weak-hom", help="weak homomorphism (phi, varphi) from r2 to r")
    common(sp)
    sp.add_argument("--r2", required=True, metavar="PATH")
    sp.add_argument("--phi", required=True, metavar="PATH")
    sp.add_argument("--varphi", required=True, metavar="PATH")
    sp.add_argument("--phase", action="store_true", help="also test the phase spaces")
    sp.set_defaults(func=cmd_weak_hom)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.list_builtins:
        stdout.write("algebras: " + ", ".join(catalog.CATALOG) + "\n")
        stdout.write("tensors: " + ", ".join(BUILTIN_TENSORS) + "\n")
        return EXIT_OK
    if not args.command:
        parser.print_usage(stderr)
        return EXIT_INPUT
    out = Output(args.format, args.command, stdout)
    try:
        return out.finish(args.func(args, out))
    except InputError as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except PreconditionError as exc:
        if exc.report is not None:
            out.report("precondition", exc.report)
        out.line(f"precondition failed: {exc}")
        return out.finish(EXIT_FAIL)
    except ConsistencyError as exc:
        out.line(f"internal consistency check failed: {exc}")
        return out.finish(EXIT_FAIL)


if __name__ == "__main__":
    raise SystemExit(main())
