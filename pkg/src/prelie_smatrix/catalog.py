"""Small pre-Lie algebras and symmetric tensors used as fixtures and demos."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .exactla import as_matrix, inverse, zeros
from .prelie import PreLieAlgebra

__all__ = [
    "zero_algebra",
    "Z2",
    "A2",
    "rA",
    "rB",
    "rC",
    "left_unit_algebra",
    "truncated_polynomial",
    "vector_fields",
    "upper_triangular",
    "matrix_algebra",
    "direct_sum",
    "change_basis",
    "CATALOG",
    "random_algebra",
]


def zero_algebra(n: int) -> PreLieAlgebra:
    return PreLieAlgebra(zeros(n, n, n))


def A2() -> PreLieAlgebra:
    """Two-dimensional, ``e2 . e2 = e1`` and all other products zero."""
    c = zeros(2, 2, 2)
    c[1, 1, 0] = Fraction(1)
    return PreLieAlgebra(c)


def Z2() -> PreLieAlgebra:
    return zero_algebra(2)


def rA():
    from .smatrix import SymTensor2

    return SymTensor2([[1, 0], [0, 0]])


def rB():
    from .smatrix import SymTensor2

    return SymTensor2([[0, 1], [1, 0]])


def rC():
    from .smatrix import SymTensor2

    return SymTensor2([[0, 0], [0, 1]])


def left_unit_algebra() -> PreLieAlgebra:
    """``e1 . e1 = e1``, ``e1 . e2 = e2``; associative, not commutative."""
    c = zeros(2, 2, 2)
    c[0, 0, 0] = Fraction(1)
    c[0, 1, 1] = Fraction(1)
    return PreLieAlgebra(c)


def truncated_polynomial(n: int) -> PreLieAlgebra:
    """Span of ``x, x^2, ..., x^n`` with ``x^{n+1} = 0``."""
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            if i + j + 1 < n:
                c[i, j, i + j + 1] = Fraction(1)
    return PreLieAlgebra(c)


def vector_fields(n: int) -> PreLieAlgebra:
    """``x^i d/dx`` for ``1 <= i <= n`` with ``(f d)(g d) = f g' d``, modulo degree > n.

    Not associative once ``n >= 2``.
    """
    c = zeros(n, n, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            k = i + j - 1
            if k <= n:
                c[i - 1, j - 1, k - 1] = Fraction(j)
    return PreLieAlgebra(c)


def _matrix_units(size: int, allowed) -> PreLieAlgebra:
    units = [(i, j) for i in range(size) for j in range(size) if allowed(i, j)]
    pos = {u: k for k, u in enumerate(units)}
    n = len(units)
    c = zeros(n, n, n)
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                c[a, b, pos[(i, l)]] = Fraction(1)
    return PreLieAlgebra(c, [f"E{i + 1}{j + 1}" for i, j in units])


def upper_triangular() -> PreLieAlgebra:
    return _matrix_units(2, lambda i, j: i <= j)


def matrix_algebra() -> PreLieAlgebra:
    return _matrix_units(2, lambda i, j: True)


def direct_sum(a: PreLieAlgebra, b: PreLieAlgebra) -> PreLieAlgebra:
    n, m = a.dim, b.dim
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = a.c
    c[n:, n:, n:] = b.c
    return PreLieAlgebra(c)


def change_basis(a: PreLieAlgebra, p) -> PreLieAlgebra:
    """Same algebra written in the basis given by the columns of ``p``."""
    p = as_matrix(p)
    pinv = inverse(p)
    if pinv is None:
        raise ValueError("change of basis must be invertible")
    n = a.dim
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            c[i, j] = pinv @ a.product(p[:, i], p[:, j])
    return PreLieAlgebra(c)


CATALOG = {
    "Z2": Z2,
    "A2": A2,
    "left_unit": left_unit_algebra,
    "N3": lambda: truncated_polynomial(3),
    "W2": lambda: vector_fields(2),
    "W3": lambda: vector_fields(3),
    "W4": lambda: vector_fields(4),
    "T2": upper_triangular,
    "M2": matrix_algebra,
    "A2+Z1": lambda: direct_sum(A2(), zero_algebra(1)),
    "left_unit+A2": lambda: direct_sum(left_unit_algebra(), A2()),
}


@lru_cache(maxsize=None)
def _catalog_dims() -> dict[str, int]:
    return {k: f().dim for k, f in CATALOG.items()}


def random_algebra(rng: random.Random, max_dim: int = 4) -> PreLieAlgebra:
    """A catalog algebra of dimension ``<= max_dim`` after a random invertible change of basis."""
    names = [k for k, d in _catalog_dims().items() if d <= max_dim]
    a = CATALOG[rng.choice(names)]()
    n = a.dim
    while True:
        p = as_matrix([[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)])
        if inverse(p) is not None:
            break
    return change_basis(a, p)
