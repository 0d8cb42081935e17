"""Cohomology of s-matrices, weak homomorphisms, infinitesimal deformations
and Nijenhuis elements.

The parameter ``t`` is formal throughout: identities "for all t" are checked
coefficient by coefficient on polynomials, never by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .exactla import (
    PolyTensor,
    identity,
    nullspace_basis,
    rank,
    solve,
    unit,
    zeros,
)
from .prelie import (
    PreLieAlgebra,
    PreLieCochain,
    prelie_coboundary,
    sub_adjacent,
    trivial_representation,
)
from .report import (
    ConsistencyError,
    InputError,
    PreconditionError,
    VerificationReport,
    first_mismatch,
)
from .rotabaxter import MapCochain, delta_rb, is_rb_homomorphism
from .smatrix import (
    DualProducts,
    SymTensor2,
    TensorCochain,
    induced_dual_products,
    is_s_matrix,
    lstar_context,
    psi,
    s_bracket,
    upsilon,
)

__all__ = [
    "SubcomplexError",
    "CochainComplexSlice",
    "DeformationReport",
    "delta_s",
    "delta_rb_full",
    "tilde_constraints",
    "in_tilde",
    "tilde_basis",
    "cochain_complex",
    "cohomology_dims",
    "is_weak_homomorphism",
    "deformation_report",
    "deformations_equivalent",
    "is_nijenhuis",
    "trivial_deformation",
    "nijenhuis_scan",
    "vector_cochain",
]


class SubcomplexError(PreconditionError):
    """``delta_s`` leaves the subcomplex for this s-matrix; ``report`` names the cochain."""


@dataclass(frozen=True)
class _Setup:
    a: PreLieAlgebra
    r: SymTensor2
    prods: DualProducts
    sharp: np.ndarray
    ad: tuple  # ad_{e_i} of the sub-adjacent Lie algebra


@lru_cache(maxsize=64)
def _setup(a: PreLieAlgebra, r: SymTensor2) -> _Setup:
    if r.dim != a.dim:
        raise InputError(f"tensor has dimension {r.dim}, algebra has {a.dim}")
    report = is_s_matrix(a, r)
    if not report:
        raise PreconditionError(f"not an s-matrix: {report.detail}", report)
    lie = sub_adjacent(a)
    n = a.dim
    return _Setup(a, r, induced_dual_products(a, r), r.sharp(),
                  tuple(lie.ad(unit(n, i)) for i in range(n)))


def vector_cochain(x) -> TensorCochain:
    """``x`` in g as an element of ``C_s^1``."""
    return TensorCochain.from_vector_element(np.asarray(x, dtype=object))


def _as_vector(a: PreLieAlgebra, x) -> np.ndarray:
    from .exactla import as_vector

    try:
        v = as_vector(x)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if v.shape != (a.dim,):
        raise InputError(f"vector has length {len(v)}, algebra has dimension {a.dim}")
    return v


def _check_cochain(a: PreLieAlgebra, phi: TensorCochain) -> None:
    if not isinstance(phi, TensorCochain):
        raise InputError("expected a TensorCochain")
    if phi.dim != a.dim:
        raise InputError("cochain dimension differs from the algebra")


def _to_prelie(phi: TensorCochain) -> PreLieCochain:
    n = phi.dim
    return PreLieCochain(phi.arity, n, 1, {k: v.reshape(n, 1) for k, v in phi.items()})


def _from_prelie(p: PreLieCochain) -> TensorCochain:
    return TensorCochain(p.degree, p.dim, {k: v[:, 0] for k, v in p.items()})


def _delta_s(s: _Setup, phi: TensorCochain) -> TensorCochain:
    k = phi.arity
    via_bracket = s_bracket(s.a, s.r.as_cochain(), phi)
    if k % 2 == 0:
        via_bracket = -via_bracket
    dot = s.prods.dot_r
    direct = _from_prelie(prelie_coboundary(dot, trivial_representation(dot, 1), _to_prelie(phi)))
    transported = upsilon(delta_rb(lstar_context(s.a), s.sharp, psi(phi)))
    if not (via_bracket == direct == transported):
        raise ConsistencyError("the three routes for delta_s disagree")
    return direct


def delta_s(a: PreLieAlgebra, r: SymTensor2, phi: TensorCochain) -> TensorCochain:
    """``delta_s phi = (-1)^{k-1} [[r, phi]]_s`` for ``phi`` in ``C_s^k``.

    Also evaluated as the pre-Lie coboundary of ``(g*, ._r)`` with trivial
    coefficients and as ``Upsilon . delta_RB . Psi``; all three must agree.
    """
    _check_cochain(a, phi)
    return _delta_s(_setup(a, r), phi)


def delta_rb_full(a: PreLieAlgebra, r: SymTensor2, P: MapCochain) -> MapCochain:
    """Coboundary of ``P`` in ``Hom(wedge^k g*, g)`` for the operator ``r#``."""
    s = _setup(a, r)
    n = a.dim
    if P.source_dim != n or P.target_dim != n:
        raise InputError("cochain must map wedge^k g* to g")
    k = P.arity
    sharp, br = s.sharp, s.prods.bracket_r.f

    def L_star(x, alpha):
        # <L*_x alpha, y> = -<alpha, x.y>
        return -a.left(x).T @ alpha

    out = {}
    if k + 1 <= n:
        for idx in MapCochain(k + 1, n, n).keys:
            total = zeros(n)
            for i in range(k + 1):
                sgn = 1 if i % 2 == 0 else -1
                val = P(*(idx[:i] + idx[i + 1:]))
                total = total + sgn * a.product(sharp[:, idx[i]], val) \
                    - sgn * a.product(val, sharp[:, idx[i]])
                total = total + sgn * (sharp @ L_star(val, unit(n, idx[i])))
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    sgn = 1 if (i + j) % 2 == 0 else -1
                    rest = [idx[p] for p in range(k + 1) if p not in (i, j)]
                    total = total + sgn * P(br[idx[i], idx[j]], *rest)
            out[idx] = total
    result = MapCochain(k + 1, n, n, out)
    if result != delta_rb(lstar_context(a), sharp, P):
        raise ConsistencyError("coboundary of r# differs from the relative Rota-Baxter coboundary")
    return result


# -- the subcomplex ---------------------------------------------------------------


def tilde_constraints(a: PreLieAlgebra, r: SymTensor2, k: int) -> np.ndarray:
    """Matrix ``M`` with ``C~_s^k = ker M`` in the coordinates of ``C_s^k``."""
    if k < 1:
        raise InputError("degree must be at least 1")
    n = a.dim
    space = TensorCochain(k, n)
    size = space.space_dim
    if k == 1:
        # x -> (R_x (x) 1 + 1 (x) R_x) r
        cols = []
        for i in range(n):
            rx = a.right(unit(n, i))
            cols.append((rx @ r.coeff + r.coeff @ rx.T).reshape(n * n))
        return np.stack(cols, axis=1)
    if k == 2:
        rows = []
        for b in space.basis():
            m = b.to_dense()
            rows.append((m - m.T).reshape(n * n))
        return np.stack(rows, axis=1) if rows else zeros(n * n, 0)
    if k == 3:
        cols = []
        for b in space.basis():
            m = b.to_dense()
            cyc = m + m.transpose(1, 2, 0) + m.transpose(2, 0, 1)
            cols.append(cyc.reshape(n ** 3))
        return np.stack(cols, axis=1) if cols else zeros(n ** 3, 0)
    return zeros(0, size)


def in_tilde(a: PreLieAlgebra, r: SymTensor2, phi: TensorCochain) -> bool:
    m = tilde_constraints(a, r, phi.arity)
    return not np.any(m @ phi.to_vector() != 0) if m.shape[0] else True


def tilde_basis(a: PreLieAlgebra, r: SymTensor2, k: int) -> list[TensorCochain]:
    """Basis of ``C~_s^k`` (reduced row echelon form of the constraint kernel)."""
    _setup(a, r)
    m = tilde_constraints(a, r, k)
    space = TensorCochain(k, a.dim)
    if m.shape[0] == 0:
        return space.basis()
    return [space.from_vector(v) for v in nullspace_basis(m)]


def _full_basis(a: PreLieAlgebra, k: int) -> list[TensorCochain]:
    return TensorCochain(k, a.dim).basis()


@dataclass(frozen=True)
class CochainComplexSlice:
    """Degree ``k`` of the complex: a basis and the matrix of ``delta_s`` from
    it into the basis of degree ``k+1`` (columns are images)."""

    degree: int
    basis: tuple
    differential: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)


def _coords(basis: list[TensorCochain], space: TensorCochain, v: np.ndarray):
    if not basis:
        return zeros(0) if not np.any(v != 0) else None
    mat = np.stack([b.to_vector() for b in basis], axis=1)
    return solve(mat, v)


def cochain_complex(a: PreLieAlgebra, r: SymTensor2, kmax: int,
                    which: str = "full") -> list[CochainComplexSlice]:
    """Degrees ``1..kmax`` of the full complex or of the subcomplex.

    For the subcomplex, raises :class:`SubcomplexError` if ``delta_s`` maps a
    basis cochain of degree ``k <= kmax`` outside ``C~_s^{k+1}``.
    """
    if which not in ("full", "subcomplex"):
        raise InputError(f"unknown complex {which!r}")
    if kmax < 1:
        raise InputError("kmax must be at least 1")
    s = _setup(a, r)
    bases = {}
    for k in range(1, kmax + 2):
        bases[k] = tilde_basis(a, r, k) if which == "subcomplex" else _full_basis(a, k)
    slices = []
    for k in range(1, kmax + 1):
        target = TensorCochain(k + 1, a.dim)
        cols = []
        for b in bases[k]:
            img = _delta_s(s, b)
            c = _coords(bases[k + 1], target, img.to_vector())
            if c is None:
                report = VerificationReport(
                    f"delta_s(C~^{k}) inside C~^{k + 1}", False, lhs=img.to_vector(),
                    detail=f"delta_s({b}) = {img} is not in C~^{k + 1}")
                raise SubcomplexError(report.detail, report)
            cols.append(c)
        diff = np.stack(cols, axis=1) if cols else zeros(len(bases[k + 1]), 0)
        slices.append(CochainComplexSlice(k, tuple(bases[k]), diff))
    for lo, hi in zip(slices, slices[1:]):
        if lo.differential.size and hi.differential.size and np.any(
                hi.differential @ lo.differential != 0):
            raise ConsistencyError(f"delta_s o delta_s != 0 in degree {lo.degree}")
    return slices


def cohomology_dims(a: PreLieAlgebra, r: SymTensor2, kmax: int,
                    which: str = "full") -> list[int]:
    """``[dim H^1, ..., dim H^kmax]``; ``H^1`` is the kernel in degree 1."""
    slices = cochain_complex(a, r, kmax, which)
    dims, prev_rank = [], 0
    for sl in slices:
        rk = rank(sl.differential) if sl.differential.size else 0
        dims.append(sl.dim - rk - prev_rank)
        prev_rank = rk
    return dims


# -- weak homomorphisms -----------------------------------------------------------


def _matrix(m, n: int, name: str) -> np.ndarray:
    from .exactla import as_matrix

    try:
        arr = as_matrix(m)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: {exc}") from None
    if arr.shape != (n, n):
        raise InputError(f"{name} must be {n} x {n}, got {arr.shape}")
    return arr


def _const(m) -> PolyTensor:
    return PolyTensor({0: np.asarray(m, dtype=object)})


def _diff_report(check: str, lhs: PolyTensor, rhs: PolyTensor) -> VerificationReport:
    diff = lhs - rhs
    if diff.is_zero():
        return VerificationReport(check, True)
    deg = diff.degrees[0]
    arr = diff.coefficient(deg)
    where = tuple(int(i) for i in np.argwhere(arr != 0)[0])
    lval = lhs.coefficient(deg)
    rval = rhs.coefficient(deg)
    return VerificationReport(
        check, False, witness=where,
        lhs=lval[where] if lval is not None else 0,
        rhs=rval[where] if rval is not None else 0,
        detail=f"coefficient of t^{deg}" if max(lhs.degree, rhs.degree) > 0 else "")


def _weak_poly(a: PreLieAlgebra, R1: PolyTensor, R2: PolyTensor,
               Phi: PolyTensor, Varphi: PolyTensor) -> VerificationReport:
    """Weak homomorphism conditions for matrix polynomials in ``t``."""
    c = a.c
    f = a.commutator_cube()
    lie_l = Phi.multiply(_const(f), lambda M, F: np.einsum("pk,ijk->ijp", M, F))
    lie_r = Phi.multiply(Phi, lambda M, N: np.einsum("ai,bj,abp->ijp", M, N, f))
    w1_l = Varphi.multiply(R1, lambda V, R: V @ R)
    w1_r = R2.multiply(Phi, lambda R, M: R @ M.T)
    inner = Phi.multiply(_const(c), lambda M, C: np.einsum("ai,ajp->ijp", M, C))
    w2_l = Varphi.multiply(inner, lambda V, T: np.einsum("qp,ijp->ijq", V, T))
    w2_r = Varphi.multiply(_const(c), lambda V, C: np.einsum("bj,ibp->ijp", V, C))
    return VerificationReport.combine("weak homomorphism", [
        _diff_report("phi is a Lie homomorphism of g^c", lie_l, lie_r),
        _diff_report("(varphi (x) Id) r1 = (Id (x) phi) r2", w1_l, w1_r),
        _diff_report("varphi(phi(x).y) = x.varphi(y)", w2_l, w2_r),
    ])


def is_weak_homomorphism(a: PreLieAlgebra, r1: SymTensor2, r2: SymTensor2,
                         phi, varphi) -> VerificationReport:
    """Weak homomorphism ``(phi, varphi)`` from ``r2`` to ``r1``.

    The answer is cross-checked against the relative Rota-Baxter
    homomorphism ``(phi, varphi^T)`` from ``r2#`` to ``r1#`` for ``L*``.
    """
    n = a.dim
    for r in (r1, r2):
        if r.dim != n:
            raise InputError(f"tensor has dimension {r.dim}, algebra has {n}")
    phi = _matrix(phi, n, "phi")
    varphi = _matrix(varphi, n, "varphi")
    report = _weak_poly(a, _const(r1.coeff), _const(r2.coeff), _const(phi), _const(varphi))
    rb = is_rb_homomorphism(lstar_context(a), r1.sharp(), r2.sharp(), phi, varphi.T)
    if bool(rb) != bool(report):
        raise ConsistencyError("weak homomorphism and Rota-Baxter homomorphism tests disagree")
    return report


def _pair(a: PreLieAlgebra, x: np.ndarray) -> tuple[PolyTensor, PolyTensor, np.ndarray, np.ndarray]:
    """``(Id + t ad_x, Id - t L_x)`` as polynomials, with ``ad_x`` and ``L_x``."""
    n = a.dim
    ad = sub_adjacent(a).ad(x)
    lx = a.left(x)
    return (PolyTensor({0: identity(n), 1: ad}), PolyTensor({0: identity(n), 1: -lx}), ad, lx)


def _linear_r(r: SymTensor2, kappa) -> PolyTensor:
    return PolyTensor({0: r.coeff, 1: np.asarray(kappa, dtype=object)})


# -- deformations -----------------------------------------------------------------


@dataclass(frozen=True)
class DeformationReport:
    kappa: SymTensor2
    is_two_cocycle: bool
    is_full_deformation: bool
    class_vector: tuple | None
    bracket_r_kappa: TensorCochain
    bracket_kappa_kappa: TensorCochain
    class_basis: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "is_two_cocycle": self.is_two_cocycle,
            "is_full_deformation": self.is_full_deformation,
            "class_vector": None if self.class_vector is None else [str(q) for q in self.class_vector],
            "bracket_r_kappa": str(self.bracket_r_kappa),
            "bracket_kappa_kappa": str(self.bracket_kappa_kappa),
        }
        if self.class_basis:
            out["class_basis"] = [str(b) for b in self.class_basis]
        return out


def _second_cohomology(s: _Setup):
    """Image of ``delta_s`` on ``C~^1`` and representatives of ``H~^2``."""
    a, r = s.a, s.r
    image = []
    for b in tilde_basis(a, r, 1):
        v = _delta_s(s, b).to_vector()
        if rank(np.stack(image + [v], axis=1)) > len(image):
            image.append(v)
    slices = cochain_complex(a, r, 2, "subcomplex")
    c2 = slices[1]
    cycles = []
    if c2.dim:
        for v in nullspace_basis(c2.differential):
            cycles.append(sum((b.to_vector() * q for b, q in zip(c2.basis, v)),
                              zeros(len(c2.basis[0].to_vector()))))
    reps, span = [], list(image)
    for z in cycles:
        if rank(np.stack(span + [z], axis=1)) > len(span):
            span.append(z)
            reps.append(z)
    return image, reps


def deformation_report(a: PreLieAlgebra, r: SymTensor2, kappa: SymTensor2) -> DeformationReport:
    """Is ``r + t kappa`` an s-matrix for all ``t``, and which class does ``kappa`` define?"""
    s = _setup(a, r)
    if not isinstance(kappa, SymTensor2):
        kappa = SymTensor2(kappa)
    if kappa.dim != a.dim:
        raise InputError("kappa has the wrong dimension")
    rc, kc = r.as_cochain(), kappa.as_cochain()
    r_k = s_bracket(a, rc, kc)
    k_k = s_bracket(a, kc, kc)
    cocycle = r_k.is_zero()
    full = cocycle and k_k.is_zero()
    if full:
        # [[r + t k, r + t k]]_s vanishes coefficientwise
        poly = PolyTensor({0: s_bracket(a, rc, rc), 1: r_k * 2, 2: k_k})
        if not poly.is_zero():
            raise ConsistencyError("full deformation with nonzero bracket polynomial")
    class_vector, basis = None, ()
    if cocycle:
        if not delta_s(a, r, kc).is_zero():
            raise ConsistencyError("[[r, kappa]]_s = 0 but delta_s kappa != 0")
        image, reps = _second_cohomology(s)
        space = TensorCochain(2, a.dim)
        basis = tuple(space.from_vector(v) for v in reps)
        cols = image + reps
        if cols:
            sol = solve(np.stack(cols, axis=1), kc.to_vector())
            if sol is None:
                raise ConsistencyError("2-cocycle outside the span of coboundaries and class representatives")
            class_vector = tuple(sol[len(image):])
        else:
            class_vector = ()
    return DeformationReport(kappa, cocycle, full, class_vector, r_k, k_k, basis)


def _tilde1_report(a: PreLieAlgebra, r: SymTensor2, x: np.ndarray) -> VerificationReport:
    m = tilde_constraints(a, r, 1)
    val = m @ x
    n = a.dim
    bad = [i for i in range(len(val)) if val[i] != 0]
    if not bad:
        return VerificationReport("x in C~^1", True)
    i = bad[0]
    return VerificationReport("x in C~^1", False, witness=(i // n, i % n), lhs=val[i], rhs=0,
                              detail="(R_x (x) 1 + 1 (x) R_x) r != 0")


def deformations_equivalent(a: PreLieAlgebra, r: SymTensor2, kappa1: SymTensor2,
                            kappa2: SymTensor2, x) -> VerificationReport:
    """Is ``(Id + t ad_x, Id - t L_x)`` a weak homomorphism from
    ``r + t kappa2`` to ``r + t kappa1`` (identically in ``t``)?"""
    s = _setup(a, r)
    x = _as_vector(a, x)
    for kap in (kappa1, kappa2):
        rep = deformation_report(a, r, kap)
        if not rep.is_two_cocycle:
            raise PreconditionError("deformation direction is not a 2-cocycle",
                                    VerificationReport("[[r, kappa]]_s = 0", False,
                                                       detail=str(rep.bracket_r_kappa)))
    member = _tilde1_report(a, r, x)
    if not member:
        raise PreconditionError("x is not in C~^1", member)
    Phi, Varphi, _, _ = _pair(a, x)
    report = _weak_poly(a, _linear_r(r, kappa1.coeff), _linear_r(r, kappa2.coeff), Phi, Varphi)
    if report:
        dx = _delta_s(s, vector_cochain(x))
        if (kappa2 - kappa1).as_cochain() != dx:
            raise ConsistencyError("equivalent deformations whose difference is not delta_s(x)")
    return report


def is_nijenhuis(a: PreLieAlgebra, r: SymTensor2, x) -> VerificationReport:
    _setup(a, r)
    x = _as_vector(a, x)
    n = a.dim
    lie = sub_adjacent(a)
    ad = lie.ad(x)
    lx = a.left(x)
    e = [unit(n, i) for i in range(n)]
    nij1 = first_mismatch(
        "[[x,y],[x,z]] = 0",
        (((i, j), lie.bracket(ad @ e[i], ad @ e[j]), zeros(n))
         for i in range(n) for j in range(n)),
    )
    inner = r.coeff @ ad.T + lx @ r.coeff  # (Id (x) ad_x + L_x (x) Id) r
    nij2 = first_mismatch(
        "(Id (x) ad_x)(Id (x) ad_x + L_x (x) Id) r = 0",
        (((i, j), (inner @ ad.T)[i, j], 0) for i in range(n) for j in range(n)),
    )
    nij3 = first_mismatch(
        "x.([x,y].z) = 0",
        (((i, j), a.product(x, a.product(ad @ e[i], e[j])), zeros(n))
         for i in range(n) for j in range(n)),
    )
    return VerificationReport.combine("Nijenhuis element",
                                      [_tilde1_report(a, r, x), nij1, nij2, nij3])


def trivial_deformation(a: PreLieAlgebra, r: SymTensor2, x) -> PolyTensor:
    """``r_t = r + t [[r, x]]_s`` for a Nijenhuis element ``x``.

    Coefficients are :class:`SymTensor2` values.  Certified on return: the
    linear term is symmetric, ``r_t`` solves the S-equation in every power
    of ``t``, and ``(Id + t ad_x, Id - t L_x)`` is a weak homomorphism from
    ``r_t`` to ``r``.
    """
    s = _setup(a, r)
    x = _as_vector(a, x)
    report = is_nijenhuis(a, r, x)
    if not report:
        raise PreconditionError(f"not a Nijenhuis element: {report.summary()}", report)
    rc = r.as_cochain()
    k = s_bracket(a, rc, vector_cochain(x))
    if k != _delta_s(s, vector_cochain(x)):
        raise ConsistencyError("[[r, x]]_s differs from delta_s(x)")
    _, _, ad, lx = _pair(a, x)
    if k != SymTensor2(-(r.coeff @ ad.T + lx @ r.coeff), check_symmetric=False).as_cochain():
        raise ConsistencyError("[[r, x]]_s differs from -(Id (x) ad_x + L_x (x) Id) r")
    kappa = SymTensor2.from_cochain(k, check_symmetric=False)
    if np.any(kappa.coeff != kappa.coeff.T):
        raise ConsistencyError("[[r, x]]_s is not symmetric")
    kc = kappa.as_cochain()
    for deg, val in ((0, s_bracket(a, rc, rc)), (1, s_bracket(a, rc, kc)), (2, s_bracket(a, kc, kc))):
        if not val.is_zero():
            raise ConsistencyError(f"S-equation fails at t^{deg} for the trivial deformation")
    cert = _certificate(a, r, x, kappa)
    if not cert:
        raise ConsistencyError(f"trivial deformation certificate fails: {cert.summary()}")
    return PolyTensor({0: r, 1: kappa})


def _certificate(a: PreLieAlgebra, r: SymTensor2, x: np.ndarray, kappa: SymTensor2) -> VerificationReport:
    Phi, Varphi, _, _ = _pair(a, x)
    return _weak_poly(a, _const(r.coeff), _linear_r(r, kappa.coeff), Phi, Varphi)


def trivial_deformation_certificate(a: PreLieAlgebra, r: SymTensor2, x) -> VerificationReport:
    """Coefficientwise check that ``(Id + t ad_x, Id - t L_x)`` is a weak
    homomorphism from ``r + t [[r, x]]_s`` to ``r``."""
    x = _as_vector(a, x)
    rt = trivial_deformation(a, r, x)
    return _certificate(a, r, x, rt.coefficient(1, SymTensor2.zero(a.dim)))


def nijenhuis_scan(a: PreLieAlgebra, r: SymTensor2) -> list[np.ndarray]:
    """Nijenhuis elements among ``+-e_i`` and ``+-e_i +- e_j``."""
    _setup(a, r)
    n = a.dim
    seen, found = set(), []
    for i, j in product(range(n), repeat=2):
        if j < i:
            continue
        for ci, cj in product((-1, 0, 1), repeat=2):
            v = zeros(n)
            v[i] += ci
            if j != i:
                v[j] += cj
            key = tuple(v)
            if not any(v) or key in seen:
                continue
            seen.add(key)
            if is_nijenhuis(a, r, v):
                found.append(v)
    found.sort(key=lambda v: tuple(-abs(q) for q in v) + tuple(-q for q in v))
    return found
