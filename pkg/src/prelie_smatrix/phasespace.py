"""Phase spaces ``g + g*`` of sub-adjacent Lie algebras.

The ordered basis of ``g + g*`` is ``e_1..e_n, e_1*..e_n*`` and the pairing
form is ``omega_p(x + a, y + b) = <a, y> - <x, b>``, whose matrix is
``[[0, -I], [I, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactla import PolyTensor, solve, unit, zeros
from .prelie import (
    LieAlgebra,
    PreLieAlgebra,
    as_cube,
    dual_operators,
    verify_lie,
    verify_pre_lie,
)
from .report import (
    ConsistencyError,
    InputError,
    PreconditionError,
    VerificationReport,
    first_mismatch,
)
from .smatrix import BilinearForm, SymTensor2, induced_dual_products, require_s_matrix

__all__ = [
    "PhaseSpace",
    "DualBilinearMap",
    "PhaseDeformation",
    "phase_omega",
    "phase_bracket",
    "build_phase_space",
    "phase_space_from_dual_product",
    "verify_phase_space",
    "symplectic_cocycle_report",
    "compatible_prelie_from_symplectic",
    "phase_deformation_pi",
    "deform_phase_space",
    "is_weak_phase_homomorphism",
    "nijenhuis_phase_deformation",
]


def phase_omega(n: int) -> BilinearForm:
    m = zeros(2 * n, 2 * n)
    for i in range(n):
        m[i, n + i] = -1
        m[n + i, i] = 1
    return BilinearForm(m, "skew")


def _names(n: int) -> list[str]:
    return [f"e{i + 1}" for i in range(n)] + [f"e{i + 1}*" for i in range(n)]


def phase_bracket(c_g, d) -> np.ndarray:
    """Structure cube of ``[.,.]_p`` on ``g + g*``.

    ``c_g`` is the pre-Lie cube of g and ``d`` a product cube on g* (the
    left multiplication by ``alpha`` in ``d`` gives ``L*_alpha`` on g).
    Both enter linearly.
    """
    c_g, d = as_cube(c_g), as_cube(d)
    n = c_g.shape[0]
    if d.shape[0] != n:
        raise InputError("g and g* products have different dimensions")
    out = zeros(2 * n, 2 * n, 2 * n)
    f = c_g - c_g.transpose(1, 0, 2)
    fd = d - d.transpose(1, 0, 2)
    out[:n, :n, :n] = f
    out[n:, n:, n:] = fd
    for i in range(n):
        for b in range(n):
            # [e_i, e^b] = L*_{e_i} e^b - L*_{e^b} e_i
            val = zeros(2 * n)
            for c in range(n):
                val[n + c] = -c_g[i, c, b]
            for k in range(n):
                val[k] = d[b, k, i]
            out[i, n + b] = val
            out[n + b, i] = -val
    return out


@dataclass(frozen=True)
class PhaseSpace:
    base: PreLieAlgebra
    dual_product: PreLieAlgebra
    bracket: np.ndarray
    omega: BilinearForm
    r: SymTensor2 | None = None

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def basis_names(self) -> list[str]:
        return _names(self.n)

    def lie(self) -> LieAlgebra:
        return LieAlgebra(self.bracket, self.basis_names, check=False)

    def with_bracket(self, cube) -> "PhaseSpace":
        """Copy with the bracket replaced (no checks), e.g. to build negative controls."""
        cube = np.array(cube, dtype=object)
        cube.flags.writeable = False
        return PhaseSpace(self.base, self.dual_product, cube, self.omega, self.r)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=object)
    a.flags.writeable = False
    return a


def phase_space_from_dual_product(a: PreLieAlgebra, d: PreLieAlgebra, r=None) -> PhaseSpace:
    """Assembler for an arbitrary pre-Lie product on g*; the result is verified."""
    if d.dim != a.dim:
        raise InputError("dual product has the wrong dimension")
    ps = PhaseSpace(a, d, _freeze(phase_bracket(a.c, d.c)), phase_omega(a.dim), r)
    report = verify_phase_space(ps)
    if not report:
        raise PreconditionError(f"not a phase space: {report.summary()}", report)
    return ps


def build_phase_space(a: PreLieAlgebra, r: SymTensor2) -> PhaseSpace:
    """Phase space of ``g^c`` attached to an s-matrix ``r``."""
    require_s_matrix(a, r)
    prods = induced_dual_products(a, r)
    ps = PhaseSpace(a, prods.dot_r, _freeze(phase_bracket(a.c, prods.dot_r.c)),
                    phase_omega(a.dim), r)
    report = verify_phase_space(ps)
    if not report:
        raise ConsistencyError(f"phase space of an s-matrix fails: {report.summary()}")
    if not ps.omega.is_nondegenerate():
        raise ConsistencyError("omega_p is degenerate")
    return ps


def _named(report: VerificationReport, names) -> VerificationReport:
    if report.ok or report.witness is None:
        return report
    label = "(" + ", ".join(names[w] for w in report.witness) + ")"
    return VerificationReport(report.check, False, report.witness, report.lhs, report.rhs,
                              detail=f"first failing basis tuple {label}")


def symplectic_cocycle_report(f, omega: BilinearForm) -> VerificationReport:
    """``omega([x,y],z) + omega([y,z],x) + omega([z,x],y) = 0`` on basis triples."""
    f = as_cube(f)
    m = omega.matrix
    n = f.shape[0]
    # w[i,j,k] = omega([e_i, e_j], e_k)
    w = np.einsum("ijp,pk->ijk", f, m)
    cyc = w + w.transpose(1, 2, 0) + w.transpose(2, 0, 1)
    return first_mismatch(
        "omega is a 2-cocycle",
        (((i, j, k), cyc[i, j, k], 0)
         for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)),
    )


def verify_phase_space(ps: PhaseSpace) -> VerificationReport:
    """Jacobi, ``omega_p`` cocycle, closure of both halves, Lagrangian halves."""
    n, names = ps.n, ps.basis_names
    f = ps.bracket
    lie = verify_lie(f)
    if not lie:
        lie = VerificationReport("Jacobi identity", False, lie.witness, lie.lhs, lie.rhs,
                                 detail=lie.first_failure().check)
    cocycle = symplectic_cocycle_report(f, ps.omega)
    closed_g = first_mismatch(
        "g is a subalgebra",
        (((i, j), f[i, j, n:], zeros(n)) for i in range(n) for j in range(n)),
    )
    closed_d = first_mismatch(
        "g* is a subalgebra",
        (((n + a, n + b), f[n + a, n + b, :n], zeros(n)) for a in range(n) for b in range(n)),
    )
    m = ps.omega.matrix
    lag = first_mismatch(
        "g and g* are isotropic",
        [((i, j), m[i, j], 0) for i in range(n) for j in range(n)]
        + [((n + i, n + j), m[n + i, n + j], 0) for i in range(n) for j in range(n)],
    )
    dims_ok = VerificationReport("halves have dimension n", f.shape[0] == 2 * n)
    nondeg = VerificationReport("omega_p is nondegenerate", ps.omega.is_nondegenerate())
    parts = [_named(p, names) for p in (lie, cocycle, closed_g, closed_d, lag)]
    return VerificationReport.combine("phase space", parts + [dims_ok, nondeg])


def compatible_prelie_from_symplectic(f, omega: BilinearForm) -> PreLieAlgebra:
    """Pre-Lie product with ``omega(x.y, z) = -omega(y, [x, z])``."""
    lie = f if isinstance(f, LieAlgebra) else LieAlgebra(f)
    n = lie.dim
    if omega.symmetry != "skew" or omega.dim != n:
        raise InputError("omega must be a skew form of matching dimension")
    if not omega.is_nondegenerate():
        raise PreconditionError("omega is degenerate")
    report = symplectic_cocycle_report(lie.f, omega)
    if not report:
        raise PreconditionError("omega is not a 2-cocycle", report)
    m = omega.matrix
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            rhs = np.array([-omega(unit(n, j), lie.f[i, z]) for z in range(n)], dtype=object)
            w = solve(m.T, rhs)
            if w is None:
                raise ConsistencyError("nondegenerate omega gave an inconsistent system")
            c[i, j] = w
    a = PreLieAlgebra(c, check=False)
    rep = verify_pre_lie(c)
    if not rep:
        raise ConsistencyError(f"compatible product is not pre-Lie: {rep.summary()}")
    if np.any(a.commutator_cube() != lie.f):
        raise ConsistencyError("compatible product has the wrong commutator")
    return a


# -- deformations ------------------------------------------------------------------


@dataclass(frozen=True)
class DualBilinearMap:
    """Bilinear ``g* x g* -> g*``; ``table[a, b]`` is the value on ``(e^a, e^b)``."""

    table: np.ndarray

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def __call__(self, alpha, beta) -> np.ndarray:
        return np.einsum("a,b,abk->k", np.asarray(alpha, dtype=object),
                         np.asarray(beta, dtype=object), self.table)

    def is_zero(self) -> bool:
        return not np.any(self.table != 0)

    def __eq__(self, other):
        return isinstance(other, DualBilinearMap) and self.table.shape == other.table.shape \
            and not np.any(self.table != other.table)

    def __hash__(self):
        return hash(tuple(self.table.flat))


def _pi_table(a: PreLieAlgebra, ksharp: np.ndarray) -> np.ndarray:
    """``pi(alpha, beta) = ad*_{k#alpha} beta - R*_{k#beta} alpha`` on the dual basis."""
    n = a.dim
    ops = [dual_operators(a, ksharp[:, i]) for i in range(n)]
    t = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            t[i, j] = ops[i][2] @ unit(n, j) - ops[j][1] @ unit(n, i)
    return t


def _require_full(a: PreLieAlgebra, r: SymTensor2, kappa: SymTensor2):
    from .deformation import deformation_report

    rep = deformation_report(a, r, kappa)
    if not rep.is_full_deformation:
        raise PreconditionError(
            "kappa does not generate a one-parameter infinitesimal deformation",
            VerificationReport("[[r,kappa]]_s = 0 and [[kappa,kappa]]_s = 0", False,
                               detail=f"[[r,kappa]]_s = {rep.bracket_r_kappa}, "
                                      f"[[kappa,kappa]]_s = {rep.bracket_kappa_kappa}"))
    return rep


def phase_deformation_pi(a: PreLieAlgebra, r: SymTensor2, kappa: SymTensor2) -> DualBilinearMap:
    _require_full(a, r, kappa)
    pi = _pi_table(a, kappa.sharp())
    base = induced_dual_products(a, r).dot_r.c
    shifted = induced_dual_products(a, r + kappa, require_s_matrix=False).dot_r.c
    if np.any(shifted - base != pi):
        raise ConsistencyError("dual product of r + t kappa is not ._r + t pi")
    return DualBilinearMap(_freeze(pi))


@dataclass(frozen=True)
class PhaseDeformation:
    """Bracket of the phase space of ``r + t kappa`` as a polynomial in ``t``."""

    pi: DualBilinearMap
    bracket: PolyTensor
    jacobiator: PolyTensor
    report: VerificationReport

    @property
    def linear_correction(self) -> np.ndarray:
        return self.bracket.coefficient(1, zeros(*self.bracket.coefficient(0).shape))

    @property
    def quadratic_correction(self) -> np.ndarray:
        return self.bracket.coefficient(2, zeros(*self.bracket.coefficient(0).shape))

    def __bool__(self) -> bool:
        return self.report.ok


def _jacobi(F: np.ndarray, G: np.ndarray) -> np.ndarray:
    """``[[u,v]_F, w]_G + cyclic``."""
    j = np.einsum("uvp,pwq->uvwq", F, G)
    return j + j.transpose(1, 2, 0, 3) + j.transpose(2, 0, 1, 3)


def _poly_report(check: str, poly: PolyTensor, names) -> VerificationReport:
    """First nonzero entry of the lowest nonzero coefficient; the last axis
    of each coefficient holds output components and is not reported."""
    if poly.is_zero():
        return VerificationReport(check, True)
    deg = poly.degrees[0]
    arr = poly.coefficient(deg)
    where = tuple(int(i) for i in np.argwhere(arr != 0)[0])
    shown = where[:-1]
    label = ", ".join(names[w] for w in shown)
    return VerificationReport(check, False, shown, arr[where], 0,
                              detail=f"coefficient of t^{deg} at ({label})")


def deform_phase_space(a: PreLieAlgebra, r: SymTensor2, kappa: SymTensor2) -> PhaseDeformation:
    """Phase space of ``r + t kappa`` with ``t`` formal; all identities checked coefficientwise."""
    pi = phase_deformation_pi(a, r, kappa)
    n = a.dim
    names = _names(n)
    d0 = induced_dual_products(a, r).dot_r.c
    p0 = phase_bracket(a.c, d0)
    p1 = phase_bracket(zeros(n, n, n), pi.table)
    bracket = PolyTensor({0: p0, 1: p1})
    jac = bracket.multiply(bracket, _jacobi)
    omega = phase_omega(n)
    cocycle_parts = []
    for deg, cube in bracket.items():
        rep = symplectic_cocycle_report(cube, omega)
        if not rep:
            rep = VerificationReport(rep.check, False, rep.witness, rep.lhs, rep.rhs,
                                     detail=f"coefficient of t^{deg}")
        cocycle_parts.append(rep)
    dual = PolyTensor({0: d0, 1: pi.table})

    def assoc(X, Y):
        # (a.b).c - a.(b.c) for the product pair (X inner, Y outer) and its mirror
        return np.einsum("abp,pcq->abcq", X, Y) - np.einsum("bcp,apq->abcq", X, Y)

    ass = dual.multiply(dual, assoc)
    ass_sym = PolyTensor({d: c - c.transpose(1, 0, 2, 3) for d, c in ass.items()})
    mixed = zeros(2 * n, 2 * n, 2 * n)
    mixed[:n, :n, n:] = 1
    mixed[n:, n:, :n] = 1
    closure = PolyTensor({d: c * mixed for d, c in bracket.items()})
    skew = PolyTensor({d: c + c.transpose(1, 0, 2) for d, c in bracket.items()})
    report = VerificationReport.combine("deformed phase space", [
        _poly_report("skew-symmetry", skew, names),
        _poly_report("Jacobi identity", jac, names),
        VerificationReport.combine("omega_p is a 2-cocycle", cocycle_parts),
        _poly_report("g and g* are subalgebras", closure, names),
        _poly_report("g*_t is pre-Lie", ass_sym, names[n:]),
    ])
    at_one = build_phase_space(a, r + kappa).bracket
    if np.any(at_one != p0 + p1):
        raise ConsistencyError("deformed bracket at t = 1 differs from the phase space of r + kappa")
    if not report:
        raise ConsistencyError(f"deformed phase space fails: {report.summary()}")
    return PhaseDeformation(pi, bracket, jac, report)


def is_weak_phase_homomorphism(ps1: PhaseSpace, ps2: PhaseSpace, phi, varphi) -> VerificationReport:
    """``(phi, varphi)`` from ``ps2`` to ``ps1``: the block map ``phi + varphi^T``
    carries the bracket of ``ps2`` to that of ``ps1``."""
    from .exactla import as_matrix

    n = ps1.n
    if ps2.n != n:
        raise InputError("phase spaces of different dimension")
    try:
        phi, varphi = as_matrix(phi), as_matrix(varphi)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if phi.shape != (n, n) or varphi.shape != (n, n):
        raise InputError(f"phi and varphi must be {n} x {n}")
    names = ps1.basis_names
    block = zeros(2 * n, 2 * n)
    block[:n, :n] = phi
    block[n:, n:] = varphi.T
    f1, f2 = ps1.bracket, ps2.bracket
    g_hom = first_mismatch(
        "phi is a Lie homomorphism of g",
        (((i, j), phi @ f2[i, j, :n], np.einsum("a,b,abk->k", phi[:, i], phi[:, j], f1[:n, :n, :n]))
         for i in range(n) for j in range(i + 1, n)),
    )
    vt = varphi.T
    d_hom = first_mismatch(
        "varphi^T is a Lie homomorphism of g*",
        (((n + i, n + j), vt @ f2[n + i, n + j, n:],
          np.einsum("a,b,abk->k", vt[:, i], vt[:, j], f1[n:, n:, n:]))
         for i in range(n) for j in range(i + 1, n)),
    )
    m = 2 * n
    full = first_mismatch(
        "phi + varphi^T preserves [.,.]_p",
        (((u, v), block @ f2[u, v], np.einsum("a,b,abk->k", block[:, u], block[:, v], f1))
         for u in range(m) for v in range(u + 1, m)),
    )
    return VerificationReport.combine("weak phase-space homomorphism",
                                      [_named(p, names) for p in (g_hom, d_hom, full)])


def nijenhuis_phase_deformation(a: PreLieAlgebra, r: SymTensor2, x) -> DualBilinearMap:
    """``pi`` of the trivial deformation generated by a Nijenhuis element ``x``."""
    from .deformation import _as_vector, is_nijenhuis, trivial_deformation

    x = _as_vector(a, x)
    report = is_nijenhuis(a, r, x)
    if not report:
        raise PreconditionError(f"not a Nijenhuis element: {report.summary()}", report)
    n = a.dim
    sharp = r.sharp()
    lstar_x = dual_operators(a, x)[0]

    def br(u, v):
        return a.product(u, v) - a.product(v, u)

    ops = {}

    def dual_ops(v):
        key = tuple(v)
        if key not in ops:
            ops[key] = dual_operators(a, v)
        return ops[key]

    t = zeros(n, n, n)
    for i in range(n):
        al = unit(n, i)
        for j in range(n):
            be = unit(n, j)
            u1 = br(sharp @ al, x)
            u2 = sharp @ (lstar_x @ al)
            v1 = br(sharp @ be, x)
            v2 = sharp @ (lstar_x @ be)
            t[i, j] = dual_ops(u1)[2] @ be + dual_ops(u2)[2] @ be \
                - dual_ops(v1)[1] @ al - dual_ops(v2)[1] @ al
    pi = DualBilinearMap(_freeze(t))
    kappa = trivial_deformation(a, r, x).coefficient(1, SymTensor2.zero(n))
    if pi != phase_deformation_pi(a, r, kappa):
        raise ConsistencyError("Nijenhuis phase deformation differs from pi of [[r, x]]_s")
    return pi
