"""The S-equation, s-matrices and the graded bracket on
``C_s^k(g) = wedge^{k-1} g (x) g``.

Tensors are written in the basis ``e_1..e_n`` of g and evaluated on the
dual basis; ``e1^e2 = e1(x)e2 - e2(x)e1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exactla import AlternatingTable, inverse, rank, to_rational, unit, zeros
from .prelie import (
    LieAlgebra,
    PreLieAlgebra,
    verify_lie,
    verify_pre_lie,
)
from .report import (
    ConsistencyError,
    InputError,
    NotInvertibleError,
    PreconditionError,
    VerificationReport,
    first_mismatch,
)
from .rotabaxter import MapCochain, RBContext, graded_bracket, is_relative_rb

__all__ = [
    "SymTensor2",
    "TensorCochain",
    "BilinearForm",
    "DualProducts",
    "format_tensor",
    "s_equation_tensor",
    "s_equation_commutator_route",
    "is_s_matrix",
    "require_s_matrix",
    "r_sharp",
    "is_invertible",
    "induced_dual_products",
    "pseudo_hessian",
    "psi",
    "upsilon",
    "lstar_context",
    "s_bracket",
]


class SymTensor2:
    """Symmetric 2-tensor ``r = sum coeff[i][j] e_i (x) e_j``."""

    def __init__(self, coeff, *, check_symmetric: bool = True):
        arr = np.array(coeff, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError(f"2-tensor must be a square table, got shape {arr.shape}")
        try:
            arr = np.vectorize(to_rational, otypes=[object])(arr) if arr.size else arr
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from None
        if check_symmetric and np.any(arr != arr.T):
            raise InputError("tensor is not symmetric")
        arr.flags.writeable = False
        self.coeff = arr
        self.dim = arr.shape[0]

    @classmethod
    def zero(cls, n: int) -> "SymTensor2":
        return cls(zeros(n, n))

    def sharp(self) -> np.ndarray:
        """Matrix of ``r#: g* -> g``; column ``a`` is ``r#(e^a)``."""
        return self.coeff.T.copy()

    def as_cochain(self) -> "TensorCochain":
        return TensorCochain(2, self.dim, {(a,): self.coeff[a] for a in range(self.dim)})

    @classmethod
    def from_cochain(cls, phi: "TensorCochain", *, check_symmetric: bool = True) -> "SymTensor2":
        if phi.arity != 2:
            raise InputError("only arity-2 cochains are 2-tensors")
        n = phi.dim
        return cls([phi.at((a,)) for a in range(n)], check_symmetric=check_symmetric)

    def __add__(self, other):
        return SymTensor2(self.coeff + other.coeff)

    def __sub__(self, other):
        return SymTensor2(self.coeff - other.coeff)

    def __neg__(self):
        return SymTensor2(-self.coeff)

    def __mul__(self, q):
        return SymTensor2(self.coeff * to_rational(q))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not np.any(self.coeff != 0)

    def __eq__(self, other):
        return isinstance(other, SymTensor2) and self.dim == other.dim and not np.any(
            self.coeff != other.coeff)

    def __hash__(self):
        return hash(tuple(self.coeff.flat))

    def __repr__(self):
        return f"SymTensor2({[[str(v) for v in row] for row in self.coeff]})"


class TensorCochain(AlternatingTable):
    """Element of ``C_s^k(g) = wedge^{k-1} g (x) g``.

    ``phi.value(a_1, ..., a_k)`` pairs the tensor with dual vectors; the
    stored table maps increasing ``(k-1)``-tuples to the vector of values
    in the last slot.
    """

    __slots__ = ()

    def __init__(self, arity: int, dim: int, data=None):
        if arity < 1:
            raise InputError("C_s^k starts at k = 1")
        super().__init__(arity - 1, dim, (dim,), data)

    @property
    def arity(self) -> int:
        return self.wedge_arity + 1

    @property
    def dim(self) -> int:
        return self.src_dim

    def value(self, *args) -> Fraction:
        *wedge, last = args
        vec = self(*wedge)
        if isinstance(last, (int, np.integer)):
            return vec[last]
        return np.dot(vec, np.asarray(last, dtype=object))

    @classmethod
    def from_vector_element(cls, x) -> "TensorCochain":
        x = np.asarray(x, dtype=object)
        return cls(1, len(x), {(): x})

    @classmethod
    def from_dense(cls, arr) -> "TensorCochain":
        """From a full ``n x ... x n`` array antisymmetric in all but the last axis."""
        arr = np.asarray(arr, dtype=object)
        k, n = arr.ndim, arr.shape[0]
        from .exactla import wedge_enumerate

        return cls(k, n, {idx: arr[idx] for idx in wedge_enumerate(n, k - 1)})

    def to_dense(self) -> np.ndarray:
        n, k = self.dim, self.arity
        out = zeros(*([n] * k))
        from itertools import product

        for idx in product(range(n), repeat=k - 1):
            out[idx] = self.at(idx)
        return out

    def __str__(self) -> str:
        return format_tensor(self)


def _term(idx, j, names) -> str:
    wedge = "^".join(names[i] for i in idx)
    if len(idx) > 1:
        wedge = f"({wedge})"
    return f"{wedge}(x){names[j]}" if idx else names[j]


def format_tensor(phi: TensorCochain, names=None) -> str:
    """Human-readable form such as ``-(e1^e2)(x)e2``."""
    names = names or [f"e{i + 1}" for i in range(phi.dim)]
    parts = []
    for idx, vec in phi.items():
        for j, c in enumerate(vec):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            parts.append((sign, f"{coef}{_term(idx, j, names)}"))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class BilinearForm:
    matrix: np.ndarray
    symmetry: str  # "symmetric" | "skew"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=object)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("bilinear form must be square")
        if self.symmetry == "symmetric":
            ok = not np.any(m != m.T)
        elif self.symmetry == "skew":
            ok = not np.any(m != -m.T)
        else:
            raise InputError(f"unknown symmetry {self.symmetry!r}")
        if not ok:
            raise InputError(f"matrix is not {self.symmetry}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x, y):
        return np.asarray(x, dtype=object) @ self.matrix @ np.asarray(y, dtype=object)

    def is_nondegenerate(self) -> bool:
        return rank(self.matrix) == self.dim


def _check_dims(a: PreLieAlgebra, *tensors: SymTensor2) -> None:
    for r in tensors:
        if r.dim != a.dim:
            raise InputError(f"tensor has dimension {r.dim}, algebra has {a.dim}")


def _leg_expansion(a: PreLieAlgebra, r: SymTensor2) -> np.ndarray:
    """``-r12.r13 + r12.r23 + [r13, r23]`` as a full three-leg array."""
    c, rr = a.c, r.coeff
    f = a.commutator_cube()
    t1 = -np.einsum("ab,cd,acp->pbd", rr, rr, c, optimize=True)
    t2 = np.einsum("ab,cd,bcq->aqd", rr, rr, c, optimize=True)
    t3 = np.einsum("ab,cd,bds->acs", rr, rr, f, optimize=True)
    return t1 + t2 + t3


def s_equation_commutator_route(a: PreLieAlgebra, r: SymTensor2) -> np.ndarray:
    """``<gamma, r#([alpha, beta]_r) - [r# alpha, r# beta]>`` on dual basis triples."""
    _check_dims(a, r)
    prods = induced_dual_products(a, r, require_s_matrix=False)
    sharp = r.sharp()
    # pr[i, j] = r#(e^i) . r#(e^j)
    pr = np.einsum("ai,bj,abk->ijk", sharp, sharp, a.c, optimize=True)
    return np.einsum("kp,ijp->ijk", sharp, prods.bracket_r.f, optimize=True) - pr + pr.transpose(1, 0, 2)


def s_equation_tensor(a: PreLieAlgebra, r: SymTensor2) -> TensorCochain:
    """``[r, r]`` in ``wedge^2 g (x) g``.

    The leg expansion is antisymmetrized in its first two legs (a no-op
    for symmetric ``r``, which is asserted) and compared with the
    commutator route.  Those two differ by an overall sign:
    ``r#([a,b]_r) - [r#a, r#b] = -[r,r](a, b, .)``.
    """
    _check_dims(a, r)
    raw = _leg_expansion(a, r)
    anti = (raw - raw.transpose(1, 0, 2)) * Fraction(1, 2)
    if np.any(anti != raw):
        raise ConsistencyError("leg expansion of a symmetric tensor is not antisymmetric")
    if np.any(s_equation_commutator_route(a, r) != -raw):
        raise ConsistencyError("leg expansion and commutator route of [r,r] disagree")
    return TensorCochain.from_dense(anti)


@lru_cache(maxsize=64)
def lstar_context(a: PreLieAlgebra) -> RBContext:
    """Sub-adjacent Lie algebra of ``a`` acting on the dual space by ``L*``."""
    return RBContext.from_prelie(a, "Lstar")


def r_sharp(r: SymTensor2) -> np.ndarray:
    return r.sharp()


def is_invertible(r: SymTensor2) -> bool:
    return rank(r.coeff) == r.dim


def is_s_matrix(a: PreLieAlgebra, r: SymTensor2) -> VerificationReport:
    """``r`` solves the S-equation; cross-checked against the relative
    Rota-Baxter property of ``r#`` for ``L*``."""
    _check_dims(a, r)
    residual = s_equation_tensor(a, r)
    if residual.is_zero():
        report = VerificationReport("S-equation", True)
    else:
        (idx, vec), = list(residual.items())[:1]
        j = next(k for k, v in enumerate(vec) if v != 0)
        report = VerificationReport(
            "S-equation", False, witness=tuple(idx) + (j,), lhs=vec[j], rhs=Fraction(0),
            detail=f"[r,r] = {format_tensor(residual)}")
    rb = is_relative_rb(lstar_context(a), r.sharp())
    if bool(rb) != bool(report):
        raise ConsistencyError("S-equation and relative Rota-Baxter characterisation disagree")
    return report


def require_s_matrix(a: PreLieAlgebra, r: SymTensor2) -> None:
    report = is_s_matrix(a, r)
    if not report:
        raise PreconditionError(f"not an s-matrix: {report.detail}", report)


class DualProducts(NamedTuple):
    dot_r: PreLieAlgebra
    star_r: PreLieAlgebra
    bracket_r: LieAlgebra


def induced_dual_products(a: PreLieAlgebra, r: SymTensor2, *,
                          require_s_matrix: bool = True) -> DualProducts:
    """Products ``alpha ._r beta``, ``alpha *_r beta`` and ``[alpha, beta]_r`` on g*.

    With ``require_s_matrix=False`` the formulas are evaluated for any
    symmetric ``r`` and nothing is asserted about the results.
    """
    _check_dims(a, r)
    if require_s_matrix:
        _require(a, r)
    sharp = r.sharp()
    # <alpha ._r beta, y> = -<beta, [r# alpha, y]> + <alpha, y . r# beta>
    dot = np.einsum("bj,gbi->ijg", sharp, a.c, optimize=True) \
        - np.einsum("ai,agj->ijg", sharp, a.commutator_cube(), optimize=True)
    # <alpha *_r beta, y> = -<beta, r# alpha . y>
    star = -np.einsum("ai,agj->ijg", sharp, a.c, optimize=True)
    bracket = star - star.transpose(1, 0, 2)
    prods = DualProducts(PreLieAlgebra(dot, check=False), PreLieAlgebra(star, check=False),
                         LieAlgebra(bracket, check=False))
    if require_s_matrix:
        _assert_dual_products(a, r, prods)
    return prods


def _require(a, r):
    require_s_matrix(a, r)


def _assert_dual_products(a: PreLieAlgebra, r: SymTensor2, prods: DualProducts) -> None:
    n = a.dim
    for name, alg in (("._r", prods.dot_r), ("*_r", prods.star_r)):
        rep = verify_pre_lie(alg.c)
        if not rep:
            raise ConsistencyError(f"{name} is not pre-Lie: {rep.summary()}")
        if np.any(alg.commutator_cube() != prods.bracket_r.f):
            raise ConsistencyError(f"{name} has the wrong commutator")
    if not verify_lie(prods.bracket_r.f):
        raise ConsistencyError("[.,.]_r is not a Lie bracket")
    sharp = r.sharp()
    hom = first_mismatch(
        "r# is a pre-Lie homomorphism",
        (((i, j), sharp @ prods.dot_r.c[i, j], a.product(sharp[:, i], sharp[:, j]))
         for i in range(n) for j in range(n)),
    )
    if not hom:
        raise ConsistencyError(hom.summary())


def pseudo_hessian(a: PreLieAlgebra, r: SymTensor2) -> BilinearForm:
    """``B(x, y) = <x, (r#)^{-1} y>`` for an invertible s-matrix."""
    _check_dims(a, r)
    if not is_invertible(r):
        raise NotInvertibleError("not invertible: r# has rank "
                                 f"{rank(r.coeff)} < {r.dim}")
    require_s_matrix(a, r)
    b = BilinearForm(inverse(r.sharp()), "symmetric")
    if not b.is_nondegenerate():
        raise ConsistencyError("inverse of an invertible map is degenerate")
    report = hessian_cocycle_report(a, b)
    if not report:
        raise ConsistencyError(report.summary())
    return b


def hessian_cocycle_report(a: PreLieAlgebra, b: BilinearForm) -> VerificationReport:
    """``B(x.y, z) - B(x, y.z)`` symmetric in ``(x, y)`` on basis triples."""
    n = a.dim
    e = [unit(n, i) for i in range(n)]

    def side(x, y, z):
        return b(a.product(e[x], e[y]), e[z]) - b(e[x], a.product(e[y], e[z]))

    return first_mismatch(
        "pseudo-Hessian 2-cocycle",
        (((i, j, k), side(i, j, k), side(j, i, k))
         for i in range(n) for j in range(n) for k in range(n)),
    )


def psi(phi: TensorCochain) -> MapCochain:
    """``wedge^k g (x) g -> Hom(wedge^k g*, g)``: a relabelling of the table."""
    return MapCochain(phi.arity - 1, phi.dim, phi.dim, dict(phi.items()))


def upsilon(P: MapCochain) -> TensorCochain:
    if P.source_dim != P.target_dim:
        raise InputError("only maps g* -> g correspond to tensors on g")
    return TensorCochain(P.arity + 1, P.target_dim, dict(P.items()))


def s_bracket(a: PreLieAlgebra, phi: TensorCochain, chi: TensorCochain) -> TensorCochain:
    """Graded bracket on ``C_s(g)`` transported from ``C(g*, g)`` with ``L*``.

    For a symmetric 2-tensor the self-bracket is checked against the
    S-equation: ``[[r, r]]_s = -2 [r, r]`` in the leg-expansion convention.
    """
    for t in (phi, chi):
        if not isinstance(t, TensorCochain):
            raise InputError("expected TensorCochain arguments")
        if t.dim != a.dim:
            raise InputError("cochain dimension differs from the algebra")
    out = upsilon(graded_bracket(lstar_context(a), psi(phi), psi(chi)))
    if phi.arity == 2 and phi == chi:
        r = SymTensor2.from_cochain(phi, check_symmetric=False)
        if not np.any(r.coeff != r.coeff.T):
            if out != s_equation_tensor(a, r) * (-2):
                raise ConsistencyError("[[r,r]]_s does not match the S-equation tensor")
    return out
