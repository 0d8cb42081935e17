"""Exact rational linear and multilinear algebra.

Matrices are numpy arrays of ``dtype=object`` whose entries are
:class:`fractions.Fraction`; nothing here ever touches floating point.
Basis positions are 0-based throughout the package.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Q",
    "to_rational",
    "format_rational",
    "as_vector",
    "as_matrix",
    "zeros",
    "identity",
    "is_zero",
    "unit",
    "rank",
    "nullspace_basis",
    "solve",
    "inverse",
    "wedge_enumerate",
    "permutation_sign",
    "sort_with_sign",
    "shuffles",
    "PolyTensor",
    "AlternatingTable",
]

Q = Fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts ``int``, ``Fraction`` and strings of the form ``"p"`` or
    ``"p/q"``.  Floats (and decimal strings) are rejected so that no
    rounding can enter through the boundary.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not an exact rational literal: {value!r}")
        q = Fraction(value.replace(" ", ""))
        return q
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_vector(values: Iterable) -> np.ndarray:
    vals = [to_rational(v) for v in values]
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


def as_matrix(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix rows")
    out = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = to_rational(v)
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def unit(n: int, i: int) -> np.ndarray:
    out = zeros(n)
    out[i] = Fraction(1)
    return out


def is_zero(a) -> bool:
    return not np.any(np.asarray(a, dtype=object) != 0)


def _integer_rows(m: np.ndarray) -> list[list[int]]:
    # Scaling a row by a nonzero constant changes neither row space nor kernel.
    rows = []
    for row in m:
        den = 1
        for v in row:
            den = math.lcm(den, Fraction(v).denominator)
        rows.append([int(Fraction(v) * den) for v in row])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; pivots are chosen as the first
    nonzero entry scanning columns left to right."""
    a = [r[:] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            for j in range(c, ncols):
                a[i][j] = (piv * a[i][j] - lead * a[r][j]) // prev
            # entries left of c are already zero in row i
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    _, pivots = _bareiss(_integer_rows(m))
    return len(pivots)


def _rref(m: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    echelon, pivots = _bareiss(_integer_rows(m))
    rows = [[Fraction(v) for v in row] for row in echelon]
    for i, c in enumerate(pivots):
        piv = rows[i][c]
        rows[i] = [v / piv for v in rows[i]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = rows[k][c]
            if f:
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
    return rows, pivots


def nullspace_basis(m) -> list[np.ndarray]:
    """Kernel basis, one vector per free column in ascending order."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [unit(ncols, j) for j in range(ncols)]
    rows, pivots = _rref(m)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(v)
    return basis


def solve(m, b) -> np.ndarray | None:
    """A solution of ``m @ x == b`` with free variables set to zero,
    or ``None`` when the system is inconsistent."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    nrows, ncols = m.shape
    if b.shape != (nrows,):
        raise ValueError(f"right-hand side has length {b.shape}, expected {nrows}")
    if nrows == 0:
        return zeros(ncols)
    aug = np.concatenate([m, b.reshape(nrows, 1)], axis=1)
    rows, pivots = _rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols)
    for i, c in enumerate(pivots):
        x[c] = rows[i][ncols]
    return x


def inverse(m) -> np.ndarray | None:
    """Exact inverse, or ``None`` if ``m`` is singular."""
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if rank(m) < n:
        return None
    cols = [solve(m, unit(n, j)) for j in range(n)]
    return np.stack(cols, axis=1)


def wedge_enumerate(n: int, k: int) -> list[tuple[int, ...]]:
    """Strictly increasing k-tuples over ``range(n)`` in lexicographic order."""
    if k < 0:
        raise ValueError("arity must be non-negative")
    return list(combinations(range(n), k))


def permutation_sign(seq: Sequence) -> int:
    """(-1)**(number of inversions) of a sequence of distinct comparables."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def sort_with_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted tuple; sign is 0 when an index repeats."""
    if len(set(idx)) != len(idx):
        return 0, ()
    return permutation_sign(idx), tuple(sorted(idx))


def shuffles(*blocks: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(sigma, sign)`` for all shuffles with the given block sizes.

    ``sigma`` lists the images ``sigma(0), ..., sigma(N-1)``; it is
    increasing within each consecutive block.
    """
    if any(b < 0 for b in blocks):
        return
    total = sum(blocks)

    def rec(remaining: tuple[int, ...], sizes: tuple[int, ...]):
        if not sizes:
            yield ()
            return
        for chosen in combinations(remaining, sizes[0]):
            rest = tuple(x for x in remaining if x not in chosen)
            for tail in rec(rest, sizes[1:]):
                yield chosen + tail

    for sigma in rec(tuple(range(total)), tuple(blocks)):
        yield sigma, permutation_sign(sigma)


def _coefficient_is_zero(c) -> bool:
    if isinstance(c, np.ndarray):
        return is_zero(c)
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


class PolyTensor:
    """Polynomial in a formal parameter ``t`` with tensor-valued coefficients.

    Coefficients may be anything closed under ``+``, unary ``-`` and
    multiplication by a rational (cochains, numpy object arrays).  Zero
    coefficients are dropped on construction.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[int, object] | None = None):
        cleaned = {}
        for deg, c in (coeffs or {}).items():
            if deg < 0:
                raise ValueError("negative degree in t")
            if not _coefficient_is_zero(c):
                cleaned[int(deg)] = c
        self._coeffs = dict(sorted(cleaned.items()))

    @classmethod
    def linear(cls, constant, slope) -> "PolyTensor":
        return cls({0: constant, 1: slope})

    @property
    def degrees(self) -> list[int]:
        return list(self._coeffs)

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def coefficient(self, deg: int, zero=None):
        return self._coeffs.get(deg, zero)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "PolyTensor") -> "PolyTensor":
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out[d] + c if d in out else c
        return PolyTensor(out)

    def __neg__(self) -> "PolyTensor":
        return PolyTensor({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other: "PolyTensor") -> "PolyTensor":
        return self + (-other)

    def scale(self, q) -> "PolyTensor":
        q = to_rational(q)
        return PolyTensor({d: c * q for d, c in self._coeffs.items()})

    def shift(self, k: int = 1) -> "PolyTensor":
        """Multiply by ``t**k``."""
        return PolyTensor({d + k: c for d, c in self._coeffs.items()})

    def multiply(self, other: "PolyTensor", op) -> "PolyTensor":
        """Product of two polynomials whose coefficients combine by the bilinear ``op``."""
        out: dict[int, object] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                term = op(c1, c2)
                d = d1 + d2
                out[d] = out[d] + term if d in out else term
        return PolyTensor(out)

    def evaluate(self, t):
        """Value at a rational ``t`` (coefficients must support ``*`` by rationals)."""
        t = to_rational(t)
        total = None
        for d, c in self._coeffs.items():
            term = c * (t**d)
            total = term if total is None else total + term
        return total

    def __repr__(self) -> str:
        return f"PolyTensor(degrees={self.degrees})"


def _support(arg, dim: int) -> list[tuple[int, Fraction]]:
    if isinstance(arg, (int, np.integer)):
        if not 0 <= arg < dim:
            raise IndexError(f"basis index {arg} out of range for dimension {dim}")
        return [(int(arg), Fraction(1))]
    vec = np.asarray(arg, dtype=object)
    if vec.shape != (dim,):
        raise ValueError(f"argument has shape {vec.shape}, expected ({dim},)")
    return [(i, v) for i, v in enumerate(vec) if v != 0]


class AlternatingTable:
    """Alternating multilinear map on ``(K^src)^arity`` with array values.

    Only strictly increasing index tuples are stored (zero entries are
    dropped); any other argument order is recovered by the sign of the
    sorting permutation.  Values are numpy object arrays of shape
    ``vshape``.
    """

    __slots__ = ("wedge_arity", "src_dim", "vshape", "_data")

    def __init__(self, wedge_arity: int, src_dim: int, vshape: tuple[int, ...], data=None):
        if wedge_arity < 0:
            raise ValueError("negative arity")
        self.wedge_arity = wedge_arity
        self.src_dim = src_dim
        self.vshape = tuple(vshape)
        clean = {}
        for key, val in (data or {}).items():
            key = tuple(int(k) for k in key)
            if len(key) != wedge_arity or any(not 0 <= k < src_dim for k in key):
                raise ValueError(f"bad index tuple {key} for arity {wedge_arity}, dim {src_dim}")
            sign, skey = sort_with_sign(key)
            if sign == 0:
                continue
            arr = np.empty(self.vshape, dtype=object)
            arr[...] = np.asarray(val, dtype=object).reshape(self.vshape)
            arr = np.vectorize(to_rational, otypes=[object])(arr) if arr.size else arr
            if sign < 0:
                arr = -arr
            if skey in clean:
                arr = clean[skey] + arr
            clean[skey] = arr
        self._data = {}
        for k in sorted(clean):
            if not is_zero(clean[k]):
                arr = clean[k]
                arr.flags.writeable = False
                self._data[k] = arr

    # -- construction helpers -------------------------------------------------
    def _like(self, data) -> "AlternatingTable":
        new = object.__new__(type(self))
        AlternatingTable.__init__(new, self.wedge_arity, self.src_dim, self.vshape, data)
        return new

    def zero_like(self) -> "AlternatingTable":
        return self._like({})

    @property
    def keys(self) -> list[tuple[int, ...]]:
        return wedge_enumerate(self.src_dim, self.wedge_arity)

    @property
    def space_dim(self) -> int:
        return len(self.keys) * int(np.prod(self.vshape, dtype=int))

    def items(self):
        return self._data.items()

    def at(self, idx: Sequence[int]) -> np.ndarray:
        sign, key = sort_with_sign(tuple(idx))
        if sign == 0 or key not in self._data:
            return zeros(*self.vshape)
        return self._data[key] * sign

    def __call__(self, *args) -> np.ndarray:
        if len(args) != self.wedge_arity:
            raise ValueError(f"expected {self.wedge_arity} arguments, got {len(args)}")
        out = zeros(*self.vshape)
        if not self._data:
            return out
        supports = [_support(a, self.src_dim) for a in args]
        for combo in product(*supports):
            idx = tuple(i for i, _ in combo)
            sign, key = sort_with_sign(idx)
            if sign == 0 or key not in self._data:
                continue
            coeff = Fraction(sign)
            for _, c in combo:
                coeff *= c
            out = out + self._data[key] * coeff
        return out

    def to_vector(self) -> np.ndarray:
        """Flatten in canonical order: index tuples lexicographically, then values."""
        size = int(np.prod(self.vshape, dtype=int))
        chunks = [self.at(k).reshape(size) for k in self.keys]
        if not chunks:
            return zeros(0)
        return np.concatenate(chunks)

    def from_vector(self, vec) -> "AlternatingTable":
        size = int(np.prod(self.vshape, dtype=int))
        vec = np.asarray(vec, dtype=object)
        keys = self.keys
        if vec.shape != (len(keys) * size,):
            raise ValueError("vector length does not match the cochain space")
        return self._like({k: vec[n * size:(n + 1) * size] for n, k in enumerate(keys)})

    def basis(self) -> list["AlternatingTable"]:
        n = self.space_dim
        return [self.from_vector(unit(n, i)) for i in range(n)]

    # -- vector space structure ------------------------------------------------
    def _check_compatible(self, other: "AlternatingTable") -> None:
        if (type(self) is not type(other) or self.wedge_arity != other.wedge_arity
                or self.src_dim != other.src_dim or self.vshape != other.vshape):
            raise ValueError("incompatible cochains")

    def __add__(self, other):
        self._check_compatible(other)
        data = dict(self._data)
        for k, v in other._data.items():
            data[k] = data[k] + v if k in data else v
        return self._like(data)

    def __neg__(self):
        return self._like({k: -v for k, v in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        q = to_rational(q)
        return self._like({k: v * q for k, v in self._data.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlternatingTable):
            return NotImplemented
        try:
            self._check_compatible(other)
        except ValueError:
            return False
        return self._data.keys() == other._data.keys() and all(
            not np.any(self._data[k] != other._data[k]) for k in self._data
        )

    def __hash__(self):
        return hash((type(self).__name__, self.wedge_arity, self.src_dim, self.vshape,
                     tuple((k, tuple(v.flat)) for k, v in self._data.items())))

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(wedge_arity={self.wedge_arity}, src_dim={self.src_dim}, "
                f"vshape={self.vshape}, nonzero={len(self._data)})")
