from fractions import Fraction

import pytest

from cagalg.freealg import GenKind, bracket, e, f, h, k, kb, L, Lb, aplus, aminus
from cagalg.presentations import (
    INHOMOGENEOUS, cartan_matrix, cartan_sum, classical_cag,
    classical_chevalley, quantum_cag, quantum_chevalley, weight_of,
)
from cagalg.scalars import Scalar


# -- Cartan matrix ---------------------------------------------------------

def test_cartan_n2():
    cm = cartan_matrix(2)
    assert cm.entries == ((2, -1), (-1, 2))


def test_cartan_n1():
    assert cartan_matrix(1).entries == ((2,),)


def test_cartan_distant_entries_vanish():
    assert cartan_matrix(3).a(1, 3) == 0


def test_cartan_rejects_bad_rank():
    with pytest.raises(ValueError):
        cartan_matrix(0)


def test_cartan_sum_examples():
    assert cartan_sum(4, 2, 2) == 2
    assert cartan_sum(4, 1, 3) == 1
    assert cartan_sum(1, 1, 1) == 2


def test_cartan_sum_identity_up_to_rank_eight():
    for n in range(1, 9):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert cartan_sum(n, i, j) == 1 + (1 if i == j else 0)


def test_cartan_sum_range_check():
    with pytest.raises(IndexError):
        cartan_sum(3, 0, 1)


# -- classical Chevalley -----------------------------------------------------

def brute_force_count(n):
    """Independent enumeration of the Cartan + Serre index ranges."""
    count = 0
    count += n * (n - 1) // 2                      # [h_i, h_j], i < j
    count += n * n * 3                             # he, hf, ef over all i, j
    count += 2 * sum(1 for i in range(1, n + 1)
                     for j in range(1, n + 1) if abs(i - j) > 1)
    count += 2 * sum(1 for i in range(1, n + 1)
                     for j in (i - 1, i + 1) if 1 <= j <= n)
    return count


def test_classical_chevalley_rank_one_relations():
    pres = classical_chevalley(1)
    alg = pres.algebra
    expected = {
        "cl-chev/5/he/i=1/j=1": bracket(alg.sym(h(1)), alg.sym(e(1))) - alg.sym(e(1)).scale(2),
        "cl-chev/5/hf/i=1/j=1": bracket(alg.sym(h(1)), alg.sym(f(1))) + alg.sym(f(1)).scale(2),
        "cl-chev/5/ef/i=1/j=1": bracket(alg.sym(e(1)), alg.sym(f(1))) - alg.sym(h(1)),
    }
    assert dict(pres.relations) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classical_chevalley_relation_count(n):
    assert len(classical_chevalley(n).relations) == brute_force_count(n)


def test_classical_chevalley_n2_count_is_17():
    assert len(classical_chevalley(2).relations) == 17


def test_serre_relation_present():
    pres = classical_chevalley(2)
    alg = pres.algebra
    expected = bracket(alg.sym(e(1)), bracket(alg.sym(e(1)), alg.sym(e(2))))
    assert pres.relation("cl-chev/6/serre-e/i=1/j=2") == expected


# -- classical CAG -----------------------------------------------------------

def test_cag_triple_diagonal_instance():
    pres = classical_cag(1)
    alg = pres.algebra
    ap1, am1 = alg.sym(aplus(1)), alg.sym(aminus(1))
    expected = bracket(bracket(ap1, am1), ap1) - ap1.scale(2)
    assert pres.relation("cl-cag/7/triple/xi=+1/i=1/j=1/k=1") == expected


def test_minimal_set_has_no_pair_at_rank_one():
    ids = classical_cag(1).relation_ids()
    assert not any("/pair/" in rid for rid in ids)


def test_extended_includes_distant_pairs():
    minimal = classical_cag(3).relation_ids()
    extended = classical_cag(3, extended=True)
    assert "cl-cag/10/pair/xi=+1/i=1/j=3" in extended.relation_ids()
    assert not any("i=1/j=3" in rid and "/pair/" in rid for rid in minimal)


def test_minimal_is_subset_of_extended():
    for n in range(1, 5):
        minimal = classical_cag(n)
        extended = dict(classical_cag(n, extended=True).relations)
        for rid, poly in minimal.relations:
            if "/pair/" in rid:
                xi = rid.rsplit("xi=", 1)[1]
                partner = f"cl-cag/10/pair/xi={xi}/i=1/j=2"
            else:
                partner = rid.replace("/7/", "/10/")
            assert extended[partner] == poly


# -- quantum Chevalley --------------------------------------------------------

def test_quantum_pairing_relation_rank_one():
    pres = quantum_chevalley(1)
    alg = pres.algebra
    expected = bracket(alg.sym(e(1)), alg.sym(f(1))) - \
        (alg.sym(k(1)) - alg.sym(kb(1))).scale((alg.q(1) - alg.q(-1)).inverse())
    assert pres.relation("q-chev/11c/i=1/j=1") == expected


def test_quantum_cartan_action_with_negative_entry():
    pres = quantum_chevalley(2)
    alg = pres.algebra
    expected = alg.sym(k(1)) * alg.sym(e(2)) - \
        (alg.sym(e(2)) * alg.sym(k(1))).scale(alg.q(-1))
    assert pres.relation("q-chev/11b/ke/i=1/j=2") == expected


def test_quantum_serre_both_orderings():
    pres = quantum_chevalley(2)
    alg = pres.algebra
    e1, e2 = alg.sym(e(1)), alg.sym(e(2))
    assert pres.relation("q-chev/12b/e/i=1/j=2/inner=qbar") == \
        bracket(e1, bracket(e1, e2, alg.q(-1)), alg.q(1))
    assert pres.relation("q-chev/12b/e/i=1/j=2/inner=q") == \
        bracket(e1, bracket(e1, e2, alg.q(1)), alg.q(-1))


# -- quantum CAG ---------------------------------------------------------------

def test_21e_plus_instance():
    pres = quantum_cag(2)
    alg = pres.algebra
    expected = alg.sym(aplus(1)) * alg.sym(aplus(2)) - \
        (alg.sym(aplus(2)) * alg.sym(aplus(1))).scale(alg.q(1))
    assert pres.relation("q-cag/21e/eta=+1") == expected


def test_21c_instance():
    pres = quantum_cag(1)
    alg = pres.algebra
    expected = bracket(alg.sym(aminus(1)), alg.sym(aplus(1))) - \
        (alg.sym(L(1)) - alg.sym(Lb(1))).scale((alg.q(1) - alg.q(-1)).inverse())
    assert pres.relation("q-cag/21c/i=1") == expected


def test_21d_example_instance():
    pres = quantum_cag(2)
    alg = pres.algebra
    ap1, am2, ap2 = alg.sym(aplus(1)), alg.sym(aminus(2)), alg.sym(aplus(2))
    expected = bracket(bracket(ap1, am2), ap2, alg.q(1)) - alg.sym(Lb(2)) * ap1
    assert pres.relation("q-cag/21d/xi=+1/eta=+1/i=1/j=2") == expected


def test_21b_exponents():
    pres = quantum_cag(3)
    alg = pres.algebra
    rel = pres.relation("q-cag/21b/sign=+/i=2/j=2")
    assert rel == alg.sym(L(2)) * alg.sym(aplus(2)) - \
        (alg.sym(aplus(2)) * alg.sym(L(2))).scale(alg.q(-2))
    rel = pres.relation("q-cag/21b/sign=-/i=1/j=3")
    assert rel == alg.sym(L(1)) * alg.sym(aminus(3)) - \
        (alg.sym(aminus(3)) * alg.sym(L(1))).scale(alg.q(1))


def test_21d_j_ranges_over_all_indices():
    ids = quantum_cag(3).relation_ids()
    for j in (1, 2, 3):
        assert f"q-cag/21d/xi=+1/eta=+1/i=1/j={j}" in ids


# -- weights --------------------------------------------------------------------

def test_weight_of_creation_generator():
    pres = quantum_cag(3)
    assert weight_of(pres, pres.algebra.sym(aplus(1))) == (-1, 1, 0, 0)


def test_weight_of_cartan_generator_is_zero():
    pres = quantum_cag(2)
    assert weight_of(pres, pres.algebra.sym(L(1))) == (0, 0, 0)


def test_weight_of_mixed_sum_is_inhomogeneous():
    pres = quantum_cag(2)
    mixed = pres.algebra.sym(aplus(1)) + pres.algebra.sym(aminus(1))
    assert weight_of(pres, mixed) == INHOMOGENEOUS


@pytest.mark.parametrize("build", [
    classical_chevalley, classical_cag,
    lambda n: classical_cag(n, extended=True),
    quantum_chevalley, quantum_cag,
])
@pytest.mark.parametrize("n", range(1, 7))
def test_every_relation_is_weight_homogeneous(build, n):
    pres = build(n)
    for rid, poly in pres.relations:
        w = weight_of(pres, poly)
        assert w != INHOMOGENEOUS, rid


# -- q -> 1 limit of the relation sets -------------------------------------------

def test_21e_at_q1_is_the_minimal_pair_relation():
    for n in (2, 3):
        quantum = quantum_cag(n)
        classical = dict(classical_cag(n).relations)
        target = classical_cag(n).algebra
        for eta, tag in ((+1, "+1"), (-1, "-1")):
            rel = quantum.relation(f"q-cag/21e/eta={tag}")
            at_one = target.poly({
                word: Scalar.const(c.eval({"q": Fraction(1)}))
                for word, c in rel.terms.items()})
            assert at_one == classical[f"cl-cag/7/pair/xi={tag}"]


def test_quantum_cag_relations_at_q1_match_classical_or_degenerate():
    n = 3
    extended = {poly for _, poly in classical_cag(n, extended=True).relations}
    target = classical_cag(n).algebra
    for rid, rel in quantum_cag(n).relations:
        try:
            coeffs = {w: c.eval({"q": Fraction(1)}) for w, c in rel.terms.items()}
        except ZeroDivisionError:
            assert "/21c/" in rid  # pairing relations divide by q - 1/q
            continue
        stripped = {}
        for word, value in coeffs.items():
            short = tuple(s for s in word
                          if s.kind not in (GenKind.L, GenKind.LBAR))
            stripped[short] = stripped.get(short, Fraction(0)) + value
        at_one = target.poly({w: Scalar.const(v) for w, v in stripped.items()})
        assert at_one.is_zero() or at_one in extended, rid
