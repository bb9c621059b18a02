from fractions import Fraction

import pytest

from cagalg.freealg import bracket, e, f, h, k, kb, L, Lb, aplus, aminus
from cagalg.matrep import (
    Matrix, RepresentationError, WordEvaluator, defining_rep_classical,
    elementary, eval_poly, merge_reps, pullback_rep, tensor_square_rep,
    vector_rep_quantum,
)
from cagalg.morphisms import (
    cag_from_chevalley_classical, cag_from_chevalley_quantum,
    coproduct_chevalley,
)
from cagalg.presentations import (
    classical_cag, classical_chevalley, classical_chevalley_algebra,
    classical_cag_algebra, quantum_cag, quantum_chevalley,
    quantum_chevalley_algebra,
)
from cagalg.scalars import Scalar


def S(value):
    return Scalar.const(value)


# -- Matrix basics ------------------------------------------------------------

def test_elementary_product_structure_constant():
    # E_{0,1} E_{1,2} = E_{0,2} and the commutator has no second term
    d = 3
    lhs = elementary(d, 0, 1).mul(elementary(d, 1, 2))
    assert lhs == elementary(d, 0, 2)
    assert elementary(d, 1, 2).mul(elementary(d, 0, 1)).is_zero()


def test_kron_of_diagonals():
    q = Scalar.variable("q")
    m = Matrix.diag((q, 1 / q)).kron(Matrix.diag((q, 1 / q)))
    assert m == Matrix.diag((q * q, S(1), S(1), 1 / (q * q)))


def test_matrix_zero_is_structural():
    q = Scalar.variable("q")
    m = Matrix.diag((q - q, S(0)))
    assert m.is_zero()


# -- defining representation ----------------------------------------------------

def test_defining_rep_creation_matrix():
    rep = defining_rep_classical(1)
    assert rep.matrix(aplus(1)) == elementary(2, 1, 0)
    assert rep.matrix(aminus(1)) == elementary(2, 0, 1)


def test_defining_rep_chevalley_commutator():
    rep = defining_rep_classical(1)
    alg = classical_chevalley_algebra(1)
    comm = eval_poly(rep, bracket(alg.sym(e(1)), alg.sym(f(1))))
    assert comm == rep.matrix(h(1))
    assert comm == Matrix.diag((S(1), S(-1)))


def test_eval_of_unit_is_identity():
    rep = defining_rep_classical(2)
    alg = classical_chevalley_algebra(2)
    assert eval_poly(rep, alg.one()) == Matrix.identity(3)


def test_eval_rejects_unassigned_symbol():
    rep = defining_rep_classical(2)
    quantum = quantum_chevalley_algebra(2)
    with pytest.raises(RepresentationError):
        eval_poly(rep, quantum.sym(k(1)))


@pytest.mark.parametrize("n", range(1, 7))
def test_defining_rep_satisfies_classical_relations(n):
    rep = defining_rep_classical(n)
    for _, poly in classical_chevalley(n).relations:
        assert eval_poly(rep, poly).is_zero()
    for _, poly in classical_cag(n, extended=True).relations:
        assert eval_poly(rep, poly).is_zero()


# -- quantum vector representation ------------------------------------------------

def test_vector_rep_pairing_matrix_rank_one():
    rep = vector_rep_quantum(1)
    alg = quantum_chevalley_algebra(1)
    comm = eval_poly(rep, bracket(alg.sym(e(1)), alg.sym(f(1))))
    assert comm == Matrix.diag((S(1), S(-1)))
    cartan = (rep.matrix(k(1)).sub(rep.matrix(kb(1)))).scale(
        (Scalar.variable("q") - Scalar.monomial("q", -1)).inverse())
    assert comm == cartan


def test_vector_rep_cartan_conjugation():
    rep = vector_rep_quantum(2)
    alg = quantum_chevalley_algebra(2)
    lhs = eval_poly(rep, alg.sym(k(1)) * alg.sym(e(2)))
    rhs = eval_poly(rep, alg.sym(e(2)) * alg.sym(k(1))).scale(alg.q(-1))
    assert lhs == rhs


def test_vector_rep_rejects_degenerate_q():
    for bad in (0, 1, -1):
        with pytest.raises(RepresentationError):
            vector_rep_quantum(2, Fraction(bad))


@pytest.mark.parametrize("n", range(1, 5))
def test_vector_rep_satisfies_quantum_chevalley_symbolic(n):
    rep = vector_rep_quantum(n)
    for _, poly in quantum_chevalley(n).relations:
        assert eval_poly(rep, poly).is_zero()


@pytest.mark.parametrize("n", [5, 6])
def test_vector_rep_satisfies_quantum_chevalley_numeric(n):
    rep = vector_rep_quantum(n, Fraction(3, 2))
    for _, poly in quantum_chevalley(n).relations:
        assert eval_poly(rep, poly).is_zero()


# -- pullbacks ----------------------------------------------------------------------

def test_pullback_annihilation_images():
    rep = vector_rep_quantum(2)
    pb = pullback_rep(cag_from_chevalley_quantum(2), rep)
    assert pb.matrix(aminus(1)) == elementary(3, 0, 1)
    assert pb.matrix(aminus(2)) == elementary(3, 0, 2)


def test_pullback_cartan_diagonal():
    rep = vector_rep_quantum(2)
    pb = pullback_rep(cag_from_chevalley_quantum(2), rep)
    q = Scalar.variable("q")
    assert pb.matrix(L(2)) == Matrix.diag((q, S(1), 1 / q))


@pytest.mark.parametrize("n", range(1, 5))
def test_pullback_satisfies_quantum_cag(n):
    pb = pullback_rep(cag_from_chevalley_quantum(n), vector_rep_quantum(n))
    for _, poly in quantum_cag(n).relations:
        assert eval_poly(pb, poly).is_zero()


@pytest.mark.parametrize("n", range(1, 5))
def test_weight_grading_of_cag_matrices(n):
    pb = pullback_rep(cag_from_chevalley_quantum(n), vector_rep_quantum(n))
    for i in range(1, n + 1):
        Li = pb.matrix(L(i))
        for j in range(1, n + 1):
            for sym, sign in ((aplus(j), -1), (aminus(j), +1)):
                A = pb.matrix(sym)
                factor = Scalar.monomial("q", sign * (1 + (1 if i == j else 0)))
                assert Li.mul(A) == A.mul(Li).scale(factor)


def test_classical_pullback_round_structure():
    rep = defining_rep_classical(3)
    pb = pullback_rep(cag_from_chevalley_classical(3), rep)
    for i in range(1, 4):
        assert pb.matrix(aplus(i)) == rep.matrix(aplus(i))
        assert pb.matrix(aminus(i)) == rep.matrix(aminus(i))


def test_merge_reps_conflict_detection():
    a = vector_rep_quantum(2)
    pb = pullback_rep(cag_from_chevalley_quantum(2), a)
    merged = merge_reps(a, pb)
    assert merged.covers(quantum_chevalley_algebra(2).symbols)
    assert merged.covers(pb.assignment.keys())
    with pytest.raises(RepresentationError):
        merge_reps(a, vector_rep_quantum(2, Fraction(3, 2)))


# -- tensor squares --------------------------------------------------------------

def test_tensor_square_dimension():
    rep = vector_rep_quantum(1)
    ts = tensor_square_rep(rep, coproduct_chevalley(1))
    assert ts.dim == 4


def test_tensor_square_e_image_rank_one():
    rep = vector_rep_quantum(1)
    ts = tensor_square_rep(rep, coproduct_chevalley(1))
    q = Scalar.variable("q")
    qb = 1 / q
    expected = elementary(2, 0, 1).kron(Matrix.identity(2)).add(
        Matrix.diag((qb, q)).kron(elementary(2, 0, 1)))
    assert ts.matrix(e(1)) == expected


def test_tensor_square_k_image_is_diag():
    rep = vector_rep_quantum(1)
    ts = tensor_square_rep(rep, coproduct_chevalley(1))
    q = Scalar.variable("q")
    assert ts.matrix(k(1)) == Matrix.diag((q * q, S(1), S(1), 1 / (q * q)))


@pytest.mark.parametrize("n", range(1, 4))
def test_tensor_square_satisfies_both_relation_sets(n):
    rep = vector_rep_quantum(n)
    ts = tensor_square_rep(rep, coproduct_chevalley(n))
    for _, poly in quantum_chevalley(n).relations:
        assert eval_poly(ts, poly).is_zero()
    ts_cag = pullback_rep(cag_from_chevalley_quantum(n), ts)
    for _, poly in quantum_cag(n).relations:
        assert eval_poly(ts_cag, poly).is_zero()


# -- word cache -------------------------------------------------------------------

def test_word_evaluator_caches_prefixes():
    rep = defining_rep_classical(2)
    ev = WordEvaluator(rep)
    alg = classical_cag_algebra(2)
    word = alg.word(aplus(1), aminus(1), aplus(2))
    first = ev.eval_poly(word)
    second = ev.eval_poly(word)
    assert first == second
    assert (aplus(1), aminus(1)) in ev._cache
