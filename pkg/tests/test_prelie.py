import random

import numpy as np
import pytest

from helpers import rand_prelie_cochain
from prelie_smatrix.catalog import CATALOG, random_algebra
from prelie_smatrix.exactla import as_matrix, is_zero, unit, zeros
from prelie_smatrix.prelie import (
    LieAlgebra,
    PreLieAlgebra,
    PreLieCochain,
    PreLieRepresentation,
    dual_operators,
    dual_representation,
    mult_operators,
    prelie_coboundary,
    regular_representation,
    sub_adjacent,
    trivial_representation,
    verify_lie,
    verify_pre_lie,
    verify_representation,
)
from prelie_smatrix.report import InputError, PreconditionError


def cube(n, entries):
    c = zeros(n, n, n)
    for (i, j, k), v in entries.items():
        c[i - 1, j - 1, k - 1] = v
    return c


def test_verify_pre_lie_examples(a2, z2):
    assert verify_pre_lie(z2.c)
    assert verify_pre_lie(a2.c)
    bad = cube(2, {(1, 2, 1): 1, (2, 1, 2): 1})
    rep = verify_pre_lie(bad)
    assert not rep
    assert rep.witness == (0, 1, 0)
    assert list(rep.lhs) != list(rep.rhs)


def test_verify_pre_lie_rejects_bad_shape():
    with pytest.raises(InputError):
        verify_pre_lie(zeros(2, 2, 3))


def test_constructor_gates_identity():
    with pytest.raises(PreconditionError):
        PreLieAlgebra(cube(2, {(1, 2, 1): 1, (2, 1, 2): 1}))


def test_sub_adjacent_examples(a2, z2):
    assert sub_adjacent(z2).is_abelian()
    assert sub_adjacent(a2).is_abelian()
    a = PreLieAlgebra(cube(2, {(1, 1, 1): 1, (1, 2, 2): 1}))
    f = sub_adjacent(a).f
    assert list(f[0, 1]) == [0, 1]
    assert list(f[1, 0]) == [0, -1]


def test_verify_lie_examples(a2):
    assert verify_lie(zeros(2, 2, 2))
    assert verify_lie(sub_adjacent(a2).f)
    rep = verify_lie(cube(2, {(1, 2, 1): 1, (2, 1, 1): 1}))
    assert not rep
    assert rep.first_failure().check == "skew-symmetry"


def test_mult_operators_examples(a2, z2):
    L, R = mult_operators(a2, unit(2, 1))
    assert (L == as_matrix([[0, 1], [0, 0]])).all()
    assert (R == L).all()
    L, R = mult_operators(a2, unit(2, 0))
    assert is_zero(L) and is_zero(R)
    L, R = mult_operators(z2, [3, -1])
    assert is_zero(L) and is_zero(R)
    with pytest.raises(InputError):
        mult_operators(a2, [1, 2, 3])


def test_dual_operators_examples(a2):
    Ls, Rs, ads = dual_operators(a2, unit(2, 1))
    assert list(Ls @ unit(2, 0)) == [0, -1]
    assert list(Ls @ unit(2, 1)) == [0, 0]
    assert is_zero(ads)
    for op in dual_operators(a2, [0, 0]):
        assert is_zero(op)


def test_representation_examples(a2):
    assert verify_representation(a2, trivial_representation(a2, 3))
    assert verify_representation(a2, regular_representation(a2))
    assert verify_representation(a2, dual_representation(a2))


def test_representation_failure_is_reported(a2):
    bad = PreLieRepresentation(1, [as_matrix([[1]]), as_matrix([[0]])], [as_matrix([[0]]), as_matrix([[1]])])
    assert not verify_representation(a2, bad)


def test_coboundary_trivial_rep_degree_one(a2, rng):
    rep = trivial_representation(a2, 1)
    assert prelie_coboundary(a2, rep, PreLieCochain.zero(1, 2, 1)).is_zero()
    # with rho = mu = 0 only the product term survives: d phi(x, y) = -phi(x . y)
    for _ in range(5):
        phi = rand_prelie_cochain(rng, 1, 2, 1)
        d = prelie_coboundary(a2, rep, phi)
        for i in range(2):
            for j in range(2):
                expect = -phi.value((), a2.product(unit(2, i), unit(2, j)))
                assert list(d.value((i,), j)) == list(expect)
    # phi vanishing on e1 = e2 . e2 is a cocycle
    phi = PreLieCochain(1, 2, 1, {(): as_matrix([[0], [5]])})
    assert prelie_coboundary(a2, rep, phi).is_zero()


def test_coboundary_squares_to_zero_regular_a2(a2, rng):
    rep = regular_representation(a2)
    for k in (1, 2):
        phi = rand_prelie_cochain(rng, k, 2, 2)
        assert prelie_coboundary(a2, rep, prelie_coboundary(a2, rep, phi)).is_zero()


def test_coboundary_arity_overflow(a2):
    rep = regular_representation(a2)
    top = PreLieCochain(3, 2, 2, {(0, 1): np.ones((2, 2), dtype=object)})
    out = prelie_coboundary(a2, rep, top)
    assert out.degree == 4 and out.is_zero()


def test_invariants_random_algebras():
    rng = random.Random(7)
    for _ in range(12):
        a = random_algebra(rng, 4)
        n = a.dim
        assert verify_lie(sub_adjacent(a).f)
        assert verify_representation(a, regular_representation(a))
        for i in range(n):
            Ls = dual_operators(a, unit(n, i))[0]
            for al in range(n):
                for y in range(n):
                    pairing = (Ls @ unit(n, al))[y] + a.product(unit(n, i), unit(n, y))[al]
                    assert pairing == 0
        for rep in (regular_representation(a), dual_representation(a)):
            for k in (1, 2):
                phi = rand_prelie_cochain(rng, k, n, n)
                assert prelie_coboundary(a, rep, prelie_coboundary(a, rep, phi)).is_zero()


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_algebras_are_pre_lie(name):
    a = CATALOG[name]()
    assert verify_pre_lie(a.c)
    assert isinstance(sub_adjacent(a), LieAlgebra)
