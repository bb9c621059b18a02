from fractions import Fraction
from math import comb

import pytest

from cagalg.fock import FockState, apply_cag, fock_dump, fock_matrix_rep, fock_module
from cagalg.freealg import bracket, h, aplus, aminus
from cagalg.matrep import Matrix, eval_poly
from cagalg.presentations import classical_cag, classical_cag_algebra, \
    classical_chevalley_algebra
from cagalg.matrep import defining_rep_classical
from cagalg.scalars import Scalar


def test_dimension_n2_p2():
    assert fock_module(2, 2).dim == 6


def test_dimension_formula():
    for n in (1, 2, 3):
        for p in (0, 1, 2, 3):
            assert fock_module(n, p).dim == comb(n + p, p)


def test_order_zero_module_is_trivial():
    mod = fock_module(3, 0)
    assert mod.dim == 1
    rep = fock_matrix_rep(mod)
    for i in range(1, 4):
        assert rep.matrix(aplus(i)).is_zero()
        assert rep.matrix(aminus(i)).is_zero()


def test_basis_order_and_vacuum():
    mod = fock_module(1, 2)
    assert [s.occ for s in mod.basis] == [(2, 0), (1, 1), (0, 2)]
    assert mod.vacuum.occ == (2, 0)


def test_creation_on_vacuum():
    mod = fock_module(2, 3)
    out = apply_cag(mod, aplus(1), mod.vacuum)
    assert out == [(FockState((2, 1, 0)), Fraction(3))]


def test_annihilation_kills_vacuum():
    mod = fock_module(2, 3)
    assert apply_cag(mod, aminus(1), mod.vacuum) == []


def test_annihilation_moves_quantum_to_slot_zero():
    mod = fock_module(2, 2)
    out = apply_cag(mod, aminus(2), FockState((0, 1, 1)))
    assert out == [(FockState((1, 1, 0)), Fraction(1))]


def test_state_outside_module_rejected():
    mod = fock_module(2, 2)
    with pytest.raises(ValueError):
        apply_cag(mod, aplus(1), FockState((1, 0, 0)))


def test_commutator_matrix_rank_one_order_two():
    rep = fock_matrix_rep(fock_module(1, 2))
    alg = classical_cag_algebra(1)
    comm = eval_poly(rep, bracket(alg.sym(aminus(1)), alg.sym(aplus(1))))
    S = lambda v: Scalar.const(v)
    assert comm == Matrix.diag((S(2), S(0), S(-2)))


@pytest.mark.parametrize("n,p", [(1, 1), (2, 1), (3, 1)])
def test_order_one_module_is_the_defining_rep(n, p):
    rep = fock_matrix_rep(fock_module(n, p))
    defining = defining_rep_classical(n)
    for i in range(1, n + 1):
        assert rep.matrix(aplus(i)) == defining.matrix(aplus(i))
        assert rep.matrix(aminus(i)) == defining.matrix(aminus(i))


def test_commutator_traces_vanish():
    for n, p in ((2, 2), (3, 2)):
        rep = fock_matrix_rep(fock_module(n, p))
        alg = classical_cag_algebra(n)
        for i in range(1, n + 1):
            comm = eval_poly(rep, bracket(alg.sym(aminus(i)), alg.sym(aplus(i))))
            trace = sum((comm.entry(r, r).as_fraction() for r in range(comm.dim)),
                        Fraction(0))
            assert trace == 0


@pytest.mark.parametrize("n,p", [(1, 3), (2, 2), (3, 2), (4, 1)])
def test_extended_relations_vanish(n, p):
    rep = fock_matrix_rep(fock_module(n, p))
    for rid, poly in classical_cag(n, extended=True).relations:
        assert eval_poly(rep, poly).is_zero(), rid


def test_creations_commute_and_annihilations_commute():
    mod = fock_module(3, 3)
    rep = fock_matrix_rep(mod)
    alg = classical_cag_algebra(3)
    for i in range(1, 4):
        for j in range(1, 4):
            assert eval_poly(rep, bracket(alg.sym(aplus(i)), alg.sym(aplus(j)))).is_zero()
            assert eval_poly(rep, bracket(alg.sym(aminus(i)), alg.sym(aminus(j)))).is_zero()


@pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (3, 1)])
def test_exclusion_nilpotence(n, p):
    # the sum of all annihilation matrices is nilpotent of order p + 1
    rep = fock_matrix_rep(fock_module(n, p))
    total = Matrix.zero(rep.dim)
    for i in range(1, n + 1):
        total = total.add(rep.matrix(aminus(i)))
    power = Matrix.identity(rep.dim)
    for _ in range(p + 1):
        power = power.mul(total)
    assert power.is_zero()
    if p:
        check = Matrix.identity(rep.dim)
        for _ in range(p):
            check = check.mul(total)
        assert not check.is_zero()


def test_cartan_matrices_are_diagonal_with_occupation_eigenvalues():
    mod = fock_module(2, 3)
    rep = fock_matrix_rep(mod)
    for i in (1, 2):
        m = rep.matrix(h(i))
        for r in range(mod.dim):
            for c in range(mod.dim):
                if r != c:
                    assert m.entry(r, c).is_zero()
        for idx, state in enumerate(mod.basis):
            expected = state.occ[i - 1] - state.occ[i]
            assert m.entry(idx, idx).as_fraction() == expected


def test_dump_shape():
    dump = fock_dump(fock_module(2, 1), include_matrices=True)
    assert dump["dimension"] == 3
    assert dump["vacuum"] == [1, 0, 0]
    assert dump["basis"][0] == [1, 0, 0]
    assert "a1+" in dump["matrices"]
    assert dump["matrices"]["a1+"] == [[1, 0, "1"]]
