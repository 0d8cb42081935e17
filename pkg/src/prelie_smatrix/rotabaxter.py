"""Relative Rota-Baxter operators and the graded Lie algebra
``C*(V, g) = sum_k Hom(wedge^k V, g)`` that controls them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactla import AlternatingTable, shuffles, unit, zeros
from .prelie import (
    LieAlgebra,
    LieRepresentation,
    PreLieAlgebra,
    verify_lie_representation,
)
from .report import (
    ConsistencyError,
    InputError,
    PreconditionError,
    VerificationReport,
    first_mismatch,
)

__all__ = [
    "MapCochain",
    "RBContext",
    "graded_bracket",
    "maurer_cartan_residual",
    "is_relative_rb",
    "induced_prelie",
    "rb_representation",
    "delta_rb",
    "delta_rb_formula",
    "check_rb_representation",
    "is_rb_homomorphism",
]


class MapCochain(AlternatingTable):
    """Element of ``Hom(wedge^k V, g)``; arity 0 elements are vectors of g."""

    __slots__ = ()

    def __init__(self, arity: int, source_dim: int, target_dim: int, data=None):
        super().__init__(arity, source_dim, (target_dim,), data)

    @property
    def arity(self) -> int:
        return self.wedge_arity

    @property
    def source_dim(self) -> int:
        return self.src_dim

    @property
    def target_dim(self) -> int:
        return self.vshape[0]

    @classmethod
    def from_matrix(cls, t) -> "MapCochain":
        """Arity-1 cochain whose value on ``e_j`` is column ``j`` of ``t``."""
        t = np.asarray(t, dtype=object)
        n, m = t.shape
        return cls(1, m, n, {(j,): t[:, j] for j in range(m)})

    @classmethod
    def from_vector(cls, x, source_dim: int) -> "MapCochain":
        x = np.asarray(x, dtype=object)
        return cls(0, source_dim, len(x), {(): x})

    def to_matrix(self) -> np.ndarray:
        if self.arity != 1:
            raise ValueError("only arity-1 cochains are linear maps")
        cols = [self(j) for j in range(self.source_dim)]
        if not cols:
            return zeros(self.target_dim, 0)
        return np.stack(cols, axis=1)


@dataclass(frozen=True)
class RBContext:
    """A Lie algebra ``g`` together with a representation on ``V``."""

    lie: LieAlgebra
    rep: LieRepresentation

    def __post_init__(self):
        if len(self.rep.rho) != self.lie.dim:
            raise InputError("representation is indexed by the wrong number of basis vectors")
        report = verify_lie_representation(self.lie, self.rep)
        if not report:
            raise PreconditionError("rho is not a representation of the Lie algebra", report)

    @property
    def n(self) -> int:
        return self.lie.dim

    @property
    def m(self) -> int:
        return self.rep.space_dim

    def act(self, x, v) -> np.ndarray:
        """``rho(x)(v)`` for ``x`` in g, ``v`` in V."""
        return self.rep(x) @ np.asarray(v, dtype=object)

    @classmethod
    def from_prelie(cls, a: PreLieAlgebra, which: str = "Lstar") -> "RBContext":
        """Sub-adjacent Lie algebra acting by ``L``, ``L*`` or ``ad*``."""
        from .prelie import dual_operators, sub_adjacent

        n = a.dim
        if which == "L":
            ops = [a.left(unit(n, i)) for i in range(n)]
        elif which == "Lstar":
            ops = [dual_operators(a, unit(n, i))[0] for i in range(n)]
        elif which == "adstar":
            ops = [dual_operators(a, unit(n, i))[2] for i in range(n)]
        else:
            raise InputError(f"unknown action {which!r}")
        return cls(sub_adjacent(a), LieRepresentation(n, ops))


def _check_cochain(ctx: RBContext, *cochains: MapCochain) -> None:
    for c in cochains:
        if not isinstance(c, MapCochain):
            raise InputError("expected a MapCochain")
        if c.source_dim != ctx.m or c.target_dim != ctx.n:
            raise InputError(
                f"cochain maps K^{c.source_dim} -> K^{c.target_dim}, context needs "
                f"K^{ctx.m} -> K^{ctx.n}")


def _insertion_sum(ctx: RBContext, outer: MapCochain, inner: MapCochain, us: tuple[int, ...]):
    """sum over (q,1,p-1)-shuffles of sign * outer(rho(inner(u..))u, u, ...),
    with q = arity(inner), p = arity(outer)."""
    p, q = outer.arity, inner.arity
    total = zeros(ctx.n)
    if p == 0:
        return total
    for sigma, sign in shuffles(q, 1, p - 1):
        args = [us[s] for s in sigma]
        x = inner(*args[:q])
        v = ctx.act(x, unit(ctx.m, args[q]))
        total = total + sign * outer(v, *args[q + 1:])
    return total


def graded_bracket(ctx: RBContext, P: MapCochain, Q: MapCochain) -> MapCochain:
    """The graded bracket of ``P`` (arity p) and ``Q`` (arity q), of arity p+q."""
    _check_cochain(ctx, P, Q)
    p, q = P.arity, Q.arity
    total_arity = p + q
    sign_pq = -1 if (p * q) % 2 else 1
    out = {}
    if total_arity <= ctx.m:
        f = ctx.lie.f
        for us in MapCochain(total_arity, ctx.m, ctx.n).keys:
            val = _insertion_sum(ctx, P, Q, us)
            val = val - sign_pq * _insertion_sum(ctx, Q, P, us)
            br = zeros(ctx.n)
            for sigma, sign in shuffles(p, q):
                args = [us[s] for s in sigma]
                x, y = P(*args[:p]), Q(*args[p:])
                br = br + sign * np.tensordot(np.tensordot(x, f, axes=(0, 0)), y, axes=(0, 0))
            out[us] = val + sign_pq * br
    return MapCochain(total_arity, ctx.m, ctx.n, out)


def maurer_cartan_residual(ctx: RBContext, theta: MapCochain) -> MapCochain:
    """``d theta + 1/2 [[theta, theta]]`` with ``d = 0``."""
    return graded_bracket(ctx, theta, theta) * Fraction(1, 2)


def _as_operator(ctx: RBContext, T) -> np.ndarray:
    t = np.asarray(T, dtype=object)
    if t.shape != (ctx.n, ctx.m):
        raise InputError(f"operator must be {ctx.n} x {ctx.m}, got {t.shape}")
    return t


def is_relative_rb(ctx: RBContext, T) -> VerificationReport:
    """``[Tu, Tv] = T(rho(Tu)v - rho(Tv)u)`` on basis pairs of V.

    The Maurer-Cartan route (``[[T, T]] == 0``) is evaluated as well and
    must agree.
    """
    t = _as_operator(ctx, T)
    m = ctx.m
    cols = [t[:, j] for j in range(m)]
    direct = first_mismatch(
        "relative Rota-Baxter identity",
        (((i, j), ctx.lie.bracket(cols[i], cols[j]),
          t @ (ctx.act(cols[i], unit(m, j)) - ctx.act(cols[j], unit(m, i))))
         for i in range(m) for j in range(i + 1, m)),
    )
    mc = graded_bracket(ctx, MapCochain.from_matrix(t), MapCochain.from_matrix(t))
    if bool(direct) != mc.is_zero():
        raise ConsistencyError("relative Rota-Baxter identity and Maurer-Cartan equation disagree")
    return direct


def _require_rb(ctx: RBContext, T) -> np.ndarray:
    t = _as_operator(ctx, T)
    rep = is_relative_rb(ctx, t)
    if not rep:
        raise PreconditionError("not a relative Rota-Baxter operator", rep)
    return t


def induced_prelie(ctx: RBContext, T) -> PreLieAlgebra:
    """Pre-Lie product ``u . v = rho(Tu)(v)`` on V."""
    t = _require_rb(ctx, T)
    m = ctx.m
    c = zeros(m, m, m)
    for i in range(m):
        act = ctx.rep(t[:, i])
        for j in range(m):
            c[i, j] = act[:, j]
    alg = PreLieAlgebra(c, check=False)
    from .prelie import verify_pre_lie

    rep = verify_pre_lie(alg.c)
    if not rep:
        raise ConsistencyError(f"induced product is not pre-Lie: {rep.summary()}")
    # T is a Lie homomorphism from the commutator bracket on V
    comm = alg.commutator_cube()
    hom = first_mismatch(
        "T is a Lie homomorphism",
        (((i, j), t @ comm[i, j], ctx.lie.bracket(t[:, i], t[:, j]))
         for i in range(m) for j in range(m)),
    )
    if not hom:
        raise ConsistencyError(hom.summary())
    return alg


def rb_representation(ctx: RBContext, T, u) -> np.ndarray:
    """Matrix of ``x -> [Tu, x] + T rho(x)(u)`` acting on g."""
    t = _require_rb(ctx, T)
    return _varrho(ctx, t, np.asarray(u, dtype=object))


def _varrho(ctx: RBContext, t: np.ndarray, u: np.ndarray) -> np.ndarray:
    n = ctx.n
    tu = t @ u
    cols = [ctx.lie.bracket(tu, unit(n, k)) + t @ ctx.act(unit(n, k), u) for k in range(n)]
    return np.stack(cols, axis=1)


def check_rb_representation(ctx: RBContext, T) -> VerificationReport:
    """Basis-level check that ``varrho`` represents the induced bracket on V."""
    t = _require_rb(ctx, T)
    m = ctx.m
    alg = induced_prelie(ctx, t)
    comm = alg.commutator_cube()
    mats = [_varrho(ctx, t, unit(m, i)) for i in range(m)]

    def at(v):
        out = zeros(ctx.n, ctx.n)
        for vi, mat in zip(v, mats):
            if vi:
                out = out + vi * mat
        return out

    return first_mismatch(
        "varrho is a representation",
        (((i, j), at(comm[i, j]), mats[i] @ mats[j] - mats[j] @ mats[i])
         for i in range(m) for j in range(i + 1, m)),
    )


def delta_rb_formula(ctx: RBContext, T, f: MapCochain) -> MapCochain:
    """The explicit Chevalley-Eilenberg coboundary of ``f`` for the
    representation ``varrho`` (no checks on ``T``)."""
    t = _as_operator(ctx, T)
    _check_cochain(ctx, f)
    k, m = f.arity, ctx.m
    out = {}
    if k + 1 <= m:
        for us in MapCochain(k + 1, m, ctx.n).keys:
            total = zeros(ctx.n)
            for i in range(k + 1):
                s = 1 if i % 2 == 0 else -1
                rest = us[:i] + us[i + 1:]
                val = f(*rest)
                total = total + s * ctx.lie.bracket(t[:, us[i]], val)
                total = total + s * (t @ ctx.act(val, unit(m, us[i])))
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    s = 1 if (i + j) % 2 == 0 else -1
                    ui, uj = us[i], us[j]
                    arg = ctx.act(t[:, ui], unit(m, uj)) - ctx.act(t[:, uj], unit(m, ui))
                    rest = [us[p] for p in range(k + 1) if p not in (i, j)]
                    total = total + s * f(arg, *rest)
            out[us] = total
    return MapCochain(k + 1, m, ctx.n, out)


def delta_rb(ctx: RBContext, T, f: MapCochain) -> MapCochain:
    """Coboundary of ``f``; the explicit formula is cross-checked against
    ``(-1)^k [[T, f]]``."""
    t = _require_rb(ctx, T)
    direct = delta_rb_formula(ctx, t, f)
    via_bracket = graded_bracket(ctx, MapCochain.from_matrix(t), f)
    if f.arity % 2:
        via_bracket = -via_bracket
    if direct != via_bracket:
        raise ConsistencyError("explicit coboundary differs from (-1)^k [[T, f]]")
    return direct


def is_rb_homomorphism(ctx: RBContext, T1, T2, phi, psi) -> VerificationReport:
    """Homomorphism ``(phi, psi)`` from ``T2`` to ``T1``."""
    t1, t2 = _as_operator(ctx, T1), _as_operator(ctx, T2)
    n, m = ctx.n, ctx.m
    phi = np.asarray(phi, dtype=object)
    psi = np.asarray(psi, dtype=object)
    if phi.shape != (n, n) or psi.shape != (m, m):
        raise InputError("phi must be n x n and psi m x m")
    lie_hom = first_mismatch(
        "phi is a Lie homomorphism",
        (((i, j), phi @ ctx.lie.f[i, j], ctx.lie.bracket(phi[:, i], phi[:, j]))
         for i in range(n) for j in range(i + 1, n)),
    )
    intertwine_t = first_mismatch(
        "T1 psi = phi T2",
        (((j,), (t1 @ psi)[:, j], (phi @ t2)[:, j]) for j in range(m)),
    )
    equivariant = first_mismatch(
        "psi(rho(x)v) = rho(phi x) psi(v)",
        (((i, j), psi @ ctx.act(unit(n, i), unit(m, j)), ctx.act(phi[:, i], psi[:, j]))
         for i in range(n) for j in range(m)),
    )
    return VerificationReport.combine("relative Rota-Baxter homomorphism",
                                      [lie_hom, intertwine_t, equivariant])
