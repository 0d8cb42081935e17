"""Pre-Lie and Lie algebras given by structure constants, their
multiplication operators, representations and the pre-Lie coboundary."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exactla import AlternatingTable, is_zero, to_rational, unit, zeros
from .report import InputError, PreconditionError, VerificationReport, first_mismatch

__all__ = [
    "as_cube",
    "PreLieAlgebra",
    "LieAlgebra",
    "PreLieRepresentation",
    "LieRepresentation",
    "PreLieCochain",
    "verify_pre_lie",
    "verify_lie",
    "sub_adjacent",
    "mult_operators",
    "dual_operators",
    "trivial_representation",
    "regular_representation",
    "dual_representation",
    "verify_representation",
    "verify_lie_representation",
    "prelie_coboundary",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=object)
    a.flags.writeable = False
    return a


def as_cube(c) -> np.ndarray:
    """Structure constants as an ``n x n x n`` object array of rationals."""
    try:
        arr = np.array(c, dtype=object)
    except ValueError as exc:
        raise InputError(f"structure cube is ragged: {exc}") from None
    if arr.ndim != 3 or not arr.shape[0] == arr.shape[1] == arr.shape[2]:
        raise InputError(f"structure cube must have shape n x n x n, got {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        try:
            out[idx] = to_rational(v)
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from None
    return out


def _vec(x, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=object)
    if v.shape != (n,):
        raise InputError(f"vector of length {v.shape} given, expected {n}")
    return v


def _mul(c: np.ndarray, x, y) -> np.ndarray:
    return np.tensordot(np.tensordot(x, c, axes=(0, 0)), y, axes=(0, 0))


def verify_pre_lie(c) -> VerificationReport:
    """Check that the associator of ``c`` is symmetric in its first two slots."""
    c = as_cube(c)
    # assoc[i, j, m] = (e_i e_j) e_m - e_i (e_j e_m)
    left = np.tensordot(c, c, axes=([2], [0]))
    right = np.tensordot(c, c, axes=([2], [1])).transpose(2, 0, 1, 3)
    assoc = left - right
    n = c.shape[0]
    return first_mismatch(
        "pre-Lie associator symmetry",
        (((i, j, m), assoc[i, j, m], assoc[j, i, m])
         for i in range(n) for j in range(n) for m in range(n)),
    )


def verify_lie(f) -> VerificationReport:
    """Skew-symmetry and the Jacobi identity on all basis pairs/triples."""
    f = as_cube(f)
    n = f.shape[0]
    skew = first_mismatch(
        "skew-symmetry",
        (((i, j), f[i, j], -f[j, i]) for i in range(n) for j in range(i, n)),
    )
    if not skew:
        return VerificationReport.combine("Lie algebra", [skew])
    # jac[i, j, m] = [[e_i, e_j], e_m]
    nested = np.tensordot(f, f, axes=([2], [0]))
    jac = nested + nested.transpose(1, 2, 0, 3) + nested.transpose(2, 0, 1, 3)
    zero = zeros(n)
    jacobi = first_mismatch(
        "Jacobi identity",
        (((i, j, m), jac[i, j, m], zero)
         for i in range(n) for j in range(n) for m in range(n)),
    )
    return VerificationReport.combine("Lie algebra", [skew, jacobi])


class PreLieAlgebra:
    """Bilinear product ``e_i . e_j = sum_k c[i, j, k] e_k``.

    With ``check=True`` (the default) the pre-Lie identity is verified on
    construction and a :class:`PreconditionError` carries the report when
    it fails.
    """

    def __init__(self, c, basis_names: Sequence[str] | None = None, *, check: bool = True):
        cube = as_cube(c)
        if check:
            rep = verify_pre_lie(cube)
            if not rep:
                raise PreconditionError("not a pre-Lie algebra", rep)
        self.c = _frozen(cube)
        self.dim = cube.shape[0]
        if basis_names is not None and len(basis_names) != self.dim:
            raise InputError("basis_names has the wrong length")
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i + 1}" for i in range(self.dim))

    def product(self, x, y) -> np.ndarray:
        return _mul(self.c, _vec(x, self.dim), _vec(y, self.dim))

    def left(self, x) -> np.ndarray:
        """Matrix of ``y -> x . y`` (columns are images of basis vectors)."""
        return np.tensordot(_vec(x, self.dim), self.c, axes=(0, 0)).T

    def right(self, x) -> np.ndarray:
        """Matrix of ``y -> y . x``."""
        return np.tensordot(self.c, _vec(x, self.dim), axes=(1, 0)).T

    def commutator_cube(self) -> np.ndarray:
        return self.c - self.c.transpose(1, 0, 2)

    def __eq__(self, other):
        return isinstance(other, PreLieAlgebra) and not np.any(self.c != other.c)

    def __hash__(self):
        return hash(tuple(self.c.flat))

    def __repr__(self):
        return f"PreLieAlgebra(dim={self.dim})"


class LieAlgebra:
    def __init__(self, f, basis_names: Sequence[str] | None = None, *, check: bool = True):
        cube = as_cube(f)
        if check:
            rep = verify_lie(cube)
            if not rep:
                raise PreconditionError("not a Lie algebra", rep)
        self.f = _frozen(cube)
        self.dim = cube.shape[0]
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i + 1}" for i in range(self.dim))

    def bracket(self, x, y) -> np.ndarray:
        return _mul(self.f, _vec(x, self.dim), _vec(y, self.dim))

    def ad(self, x) -> np.ndarray:
        return np.tensordot(_vec(x, self.dim), self.f, axes=(0, 0)).T

    def is_abelian(self) -> bool:
        return is_zero(self.f)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and not np.any(self.f != other.f)

    def __hash__(self):
        return hash(tuple(self.f.flat))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim})"


def sub_adjacent(a: PreLieAlgebra) -> LieAlgebra:
    """Commutator Lie algebra ``[x, y] = x.y - y.x``."""
    lie = LieAlgebra(a.commutator_cube(), a.basis_names, check=False)
    rep = verify_lie(lie.f)
    if not rep:
        raise PreconditionError("commutator of the product is not a Lie bracket", rep)
    return lie


def mult_operators(a: PreLieAlgebra, x) -> tuple[np.ndarray, np.ndarray]:
    return a.left(x), a.right(x)


def dual_operators(a: PreLieAlgebra, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(L*_x, R*_x, ad*_x)`` acting on the dual space in the dual basis."""
    lx, rx = mult_operators(a, x)
    ls, rs = -lx.T, -rx.T
    return ls, rs, ls - rs


def _op_list(ops, n: int, m: int, name: str) -> tuple[np.ndarray, ...]:
    ops = list(ops)
    if len(ops) != n:
        raise InputError(f"{name} needs one matrix per basis vector ({n}), got {len(ops)}")
    out = []
    for op in ops:
        arr = np.array(op, dtype=object)
        if arr.shape != (m, m):
            raise InputError(f"{name} matrices must be {m} x {m}, got {arr.shape}")
        out.append(_frozen(np.vectorize(to_rational, otypes=[object])(arr) if arr.size else arr))
    return tuple(out)


class LieRepresentation:
    """``rho[i]`` is the matrix of ``rho(e_i)`` on a space of dimension ``space_dim``."""

    def __init__(self, space_dim: int, rho):
        self.space_dim = space_dim
        rho = list(rho)
        self.rho = _op_list(rho, len(rho), space_dim, "rho")

    def __call__(self, x) -> np.ndarray:
        x = _vec(x, len(self.rho))
        out = zeros(self.space_dim, self.space_dim)
        for xi, m in zip(x, self.rho):
            if xi:
                out = out + m * xi
        return out


class PreLieRepresentation:
    """Pair ``(rho, mu)`` of operator families on a space of dimension ``space_dim``."""

    def __init__(self, space_dim: int, rho, mu):
        rho, mu = list(rho), list(mu)
        if len(rho) != len(mu):
            raise InputError("rho and mu must have one matrix per basis vector")
        self.space_dim = space_dim
        self.rho = _op_list(rho, len(rho), space_dim, "rho")
        self.mu = _op_list(mu, len(mu), space_dim, "mu")

    def rho_of(self, x) -> np.ndarray:
        return LieRepresentation(self.space_dim, self.rho)(x)

    def mu_of(self, x) -> np.ndarray:
        return LieRepresentation(self.space_dim, self.mu)(x)

    def lie_part(self) -> LieRepresentation:
        return LieRepresentation(self.space_dim, self.rho)


def trivial_representation(a: PreLieAlgebra, space_dim: int = 1) -> PreLieRepresentation:
    z = [zeros(space_dim, space_dim)] * a.dim
    return PreLieRepresentation(space_dim, z, z)


def regular_representation(a: PreLieAlgebra) -> PreLieRepresentation:
    n = a.dim
    return PreLieRepresentation(n, [a.left(unit(n, i)) for i in range(n)],
                                [a.right(unit(n, i)) for i in range(n)])


def dual_representation(a: PreLieAlgebra) -> PreLieRepresentation:
    """``(ad*, -R*)`` on the dual space."""
    n = a.dim
    ops = [dual_operators(a, unit(n, i)) for i in range(n)]
    return PreLieRepresentation(n, [o[2] for o in ops], [-o[1] for o in ops])


def verify_lie_representation(lie: LieAlgebra, rep: LieRepresentation) -> VerificationReport:
    n = lie.dim
    if len(rep.rho) != n:
        raise InputError("representation and Lie algebra dimensions differ")
    rho = rep.rho
    return first_mismatch(
        "Lie representation",
        (((i, j), rep(lie.f[i, j]), rho[i] @ rho[j] - rho[j] @ rho[i])
         for i in range(n) for j in range(i + 1, n)),
    )


def verify_representation(a: PreLieAlgebra, rep: PreLieRepresentation) -> VerificationReport:
    n = a.dim
    if len(rep.rho) != n:
        raise InputError("representation and algebra dimensions differ")
    lie_rep = verify_lie_representation(sub_adjacent(a), rep.lie_part())
    rho, mu = rep.rho, rep.mu
    compat = first_mismatch(
        "rho/mu compatibility",
        (((i, j), rho[i] @ mu[j] - mu[j] @ rho[i], rep.mu_of(a.c[i, j]) - mu[j] @ mu[i])
         for i in range(n) for j in range(n)),
    )
    return VerificationReport.combine("pre-Lie representation", [lie_rep, compat])


class PreLieCochain(AlternatingTable):
    """Element of ``Hom(wedge^{k-1} g (x) g, V)``.

    Stored as a table over (increasing ``(k-1)``-tuple) whose values are
    ``dim x vdim`` arrays: row ``j`` holds ``phi(..., e_j)``.  The last slot
    carries no antisymmetry.
    """

    __slots__ = ()

    def __init__(self, degree: int, dim: int, vdim: int, data=None):
        if degree < 1:
            raise InputError("pre-Lie cochains start in degree 1")
        super().__init__(degree - 1, dim, (dim, vdim), data)

    @property
    def degree(self) -> int:
        return self.wedge_arity + 1

    @property
    def dim(self) -> int:
        return self.src_dim

    @property
    def vdim(self) -> int:
        return self.vshape[1]

    def value(self, wedge_args, last) -> np.ndarray:
        table = self(*wedge_args)
        if isinstance(last, (int, np.integer)):
            return table[last]
        return np.tensordot(_vec(last, self.dim), table, axes=(0, 0))

    @classmethod
    def zero(cls, degree: int, dim: int, vdim: int) -> "PreLieCochain":
        return cls(degree, dim, vdim)


def prelie_coboundary(a: PreLieAlgebra, rep: PreLieRepresentation, phi: PreLieCochain) -> PreLieCochain:
    """Coboundary of a ``k``-cochain with values in ``rep``; returns a ``(k+1)``-cochain."""
    n, m, k = a.dim, rep.space_dim, phi.degree
    if phi.dim != n or phi.vdim != m:
        raise InputError("cochain does not match the algebra/representation")
    if len(rep.rho) != n:
        raise InputError("representation does not match the algebra")
    lie = a.commutator_cube()
    out = {}
    if k > n:
        # wedge^k g = 0, so the target space is zero
        return PreLieCochain(k + 1, n, m)
    for idx in PreLieCochain(k + 1, n, m).keys:
        table = zeros(n, m)
        for last in range(n):
            xs = list(idx) + [last]  # x_1..x_{k+1} as basis indices
            total = zeros(m)
            for i in range(k):
                s = 1 if i % 2 == 0 else -1  # (-1)^{i+1} with 1-based i
                rest = xs[:i] + xs[i + 1:k]
                total = total + s * (rep.rho[xs[i]] @ phi.value(rest, last))
                total = total + s * (rep.mu[last] @ phi.value(rest, xs[i]))
                total = total - s * phi.value(rest, a.c[xs[i], last])
            for i in range(k):
                for j in range(i + 1, k):
                    s = 1 if (i + j) % 2 == 0 else -1
                    rest = [lie[xs[i], xs[j]]] + [xs[p] for p in range(k) if p not in (i, j)]
                    total = total + s * phi.value(rest, last)
            table[last] = total
        out[idx] = table
    return PreLieCochain(k + 1, n, m, out)
