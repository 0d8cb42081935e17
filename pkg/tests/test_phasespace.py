import itertools

import numpy as np
import pytest

from oracles import phase_bracket_oracle
from prelie_smatrix.catalog import CATALOG
from prelie_smatrix.exactla import as_matrix, as_vector, identity, is_zero, zeros
from prelie_smatrix.phasespace import (
    build_phase_space,
    compatible_prelie_from_symplectic,
    deform_phase_space,
    is_weak_phase_homomorphism,
    nijenhuis_phase_deformation,
    phase_deformation_pi,
    phase_omega,
    phase_space_from_dual_product,
    verify_phase_space,
)
from prelie_smatrix.deformation import is_weak_homomorphism
from prelie_smatrix.prelie import LieAlgebra, PreLieAlgebra, dual_operators
from prelie_smatrix.report import InputError, PreconditionError
from prelie_smatrix.smatrix import BilinearForm, SymTensor2, is_s_matrix

E1, E2 = [1, 0], [0, 1]
ID2 = SymTensor2([[1, 0], [0, 1]])


def nonzero_entries(cube, names):
    out = {}
    for u, v in itertools.product(range(len(cube)), repeat=2):
        val = cube[u][v]
        if any(val):
            out[(names[u], names[v])] = tuple(val)
    return out


def test_omega_convention():
    om = phase_omega(2)
    # omega_p(x + a, y + b) = <a, y> - <x, b>
    assert om(as_vector([1, 0, 0, 0]), as_vector([0, 0, 1, 0])) == -1
    assert om(as_vector([0, 0, 1, 0]), as_vector([1, 0, 0, 0])) == 1
    assert om.is_nondegenerate()


def test_phase_space_a2_ra(a2, r_a):
    ps = build_phase_space(a2, r_a)
    names = ps.basis_names
    assert names == ["e1", "e2", "e1*", "e2*"]
    entries = nonzero_entries(ps.bracket, names)
    assert entries == {("e2", "e1*"): (0, 0, 0, -1), ("e1*", "e2"): (0, 0, 0, 1)}
    assert verify_phase_space(ps)


def test_phase_space_a2_rb(a2, r_b):
    ps = build_phase_space(a2, r_b)
    entries = nonzero_entries(ps.bracket, ps.basis_names)
    assert entries[("e2", "e1*")] == (1, 0, 0, -1)
    assert verify_phase_space(ps)


def test_phase_space_z2_identity(z2):
    ps = build_phase_space(z2, ID2)
    assert is_zero(ps.bracket)
    assert verify_phase_space(ps)


def test_phase_space_rejects_rc(a2, r_c):
    with pytest.raises(PreconditionError):
        build_phase_space(a2, r_c)


@pytest.mark.parametrize("name", ["A2", "left_unit", "W2", "Z2"])
def test_bracket_matches_oracle(name):
    a = CATALOG[name]()
    n = a.dim
    count = 0
    for v in itertools.product((-1, 0, 1), repeat=n * (n + 1) // 2):
        m = [[0] * n for _ in range(n)]
        it = iter(v)
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = next(it)
        r = SymTensor2(m)
        if not is_s_matrix(a, r):
            continue
        ps = build_phase_space(a, r)
        oracle = phase_bracket_oracle(a.c.tolist(), m)
        assert ps.bracket.tolist() == oracle
        assert verify_phase_space(ps)
        back = compatible_prelie_from_symplectic(ps.lie(), ps.omega)
        assert (back.commutator_cube() == ps.bracket).all()
        count += 1
        if count >= 4:
            break
    assert count >= 1


def test_corrupted_bracket_names_triple(a2, r_a):
    ps = build_phase_space(a2, r_a)
    cube = ps.bracket.copy()
    cube[0, 1] = [1, 0, 0, 0]
    cube[1, 0] = [-1, 0, 0, 0]
    rep = verify_phase_space(ps.with_bracket(cube))
    assert not rep
    fail = rep.first_failure()
    assert fail.witness is not None
    assert "(e" in fail.detail


def test_compatible_prelie_examples():
    om = BilinearForm(as_matrix([[0, 1], [-1, 0]]), "skew")
    assert is_zero(compatible_prelie_from_symplectic(LieAlgebra(zeros(2, 2, 2)), om).c)
    with pytest.raises(PreconditionError):
        compatible_prelie_from_symplectic(LieAlgebra(zeros(2, 2, 2)),
                                          BilinearForm(zeros(2, 2), "skew"))
    # in dimension 2 every skew form is a cocycle
    f = zeros(2, 2, 2)
    f[0, 1, 0], f[1, 0, 0] = 1, -1
    back = compatible_prelie_from_symplectic(LieAlgebra(f), om)
    assert (back.commutator_cube() == f).all()


def test_compatible_prelie_rejects_non_cocycle(a2, r_a):
    ps = build_phase_space(a2, r_a)
    other = BilinearForm(as_matrix([[0, -1, -1, -1], [1, 0, -1, -1], [1, 1, 0, -1], [1, 1, 1, 0]]), "skew")
    assert other.is_nondegenerate()
    with pytest.raises(PreconditionError):
        compatible_prelie_from_symplectic(ps.lie(), other)


def test_dual_product_assembler(a2, r_b):
    from prelie_smatrix.smatrix import induced_dual_products

    d = induced_dual_products(a2, r_b).dot_r
    ps = phase_space_from_dual_product(a2, d)
    assert (ps.bracket == build_phase_space(a2, r_b).bracket).all()
    with pytest.raises(InputError):
        phase_space_from_dual_product(a2, PreLieAlgebra(zeros(3, 3, 3)))


def test_pi_examples(a2, z2, r_a, r_b):
    assert phase_deformation_pi(a2, r_b, SymTensor2.zero(2)).is_zero()
    pi = phase_deformation_pi(a2, r_b, r_a)
    sharp = r_a.sharp()
    for i in range(2):
        for j in range(2):
            al = as_vector([1 if k == i else 0 for k in range(2)])
            be = as_vector([1 if k == j else 0 for k in range(2)])
            expect = -(dual_operators(a2, sharp @ be)[1] @ al)
            assert list(pi(al, be)) == list(expect)
    assert phase_deformation_pi(z2, ID2, SymTensor2([[1, 1], [1, 0]])).is_zero()


def test_deform_phase_space_examples(a2, r_a, r_b):
    zero = deform_phase_space(a2, r_b, SymTensor2.zero(2))
    assert zero and is_zero(zero.linear_correction) and is_zero(zero.quadratic_correction)
    dp = deform_phase_space(a2, r_b, r_a)
    assert dp.report.ok
    assert dp.jacobiator.is_zero()
    with pytest.raises(PreconditionError):
        deform_phase_space(a2, r_b, SymTensor2([[0, 0], [0, 1]]))


def test_weak_phase_homomorphism_examples(a2, r_a, r_b):
    I = identity(2)
    pb = build_phase_space(a2, r_b)
    pa = build_phase_space(a2, r_a)
    assert is_weak_phase_homomorphism(pb, pb, I, I)
    rep = is_weak_phase_homomorphism(pa, pb, I, I)
    assert not rep
    assert "e2" in rep.first_failure().detail or rep.witness is not None
    with pytest.raises(InputError):
        is_weak_phase_homomorphism(pb, pb, identity(3), I)


def test_weak_homomorphisms_lift_to_phase_spaces(a2):
    smats = [SymTensor2([[v[0], v[1]], [v[1], v[2]]]) for v in itertools.product((-1, 0, 1), repeat=3)]
    smats = [r for r in smats if is_s_matrix(a2, r)][:4]
    spaces = {r: build_phase_space(a2, r) for r in smats}
    candidates = [as_matrix(np.array(m).reshape(2, 2).tolist())
                  for m in itertools.product((-1, 0, 1), repeat=4)]
    checked = 0
    for r1, r2 in itertools.product(smats, repeat=2):
        for phi in candidates[::3]:
            for vp in candidates[::3]:
                if np.any(vp @ r1.coeff != r2.coeff @ phi.T):
                    continue
                if not is_weak_homomorphism(a2, r1, r2, phi, vp):
                    continue
                checked += 1
                assert is_weak_phase_homomorphism(spaces[r1], spaces[r2], phi, vp)
    assert checked > 0


def test_nijenhuis_phase_deformation_examples(a2, r_a, r_b):
    assert nijenhuis_phase_deformation(a2, r_b, [0, 0]).is_zero()
    assert nijenhuis_phase_deformation(a2, r_a, E1).is_zero()
    assert nijenhuis_phase_deformation(a2, r_b, E1).is_zero()
    with pytest.raises(PreconditionError):
        nijenhuis_phase_deformation(a2, r_b, E2)
