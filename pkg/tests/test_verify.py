import json
import random
from fractions import Fraction

import pytest

from cagalg.fock import fock_matrix_rep, fock_module
from cagalg.freealg import FreeAlgebra, freevar
from cagalg.matrep import (
    defining_rep_classical, merge_reps, pullback_rep, vector_rep_quantum,
)
from cagalg.morphisms import cag_from_chevalley_quantum
from cagalg.presentations import classical_cag, quantum_cag
from cagalg.verify import (
    _inversions, check_identity, corrupt_sign_21c, probe_21d_range,
    rewrite_commuting, round_trip_check, verify_classical_limit,
    verify_named_consequences, verify_presentation,
)


def quantum_cag_rep(n, q="symbolic"):
    return pullback_rep(cag_from_chevalley_quantum(n), vector_rep_quantum(n, q))


def combined_rep(n, q="symbolic"):
    base = vector_rep_quantum(n, q)
    return merge_reps(base, pullback_rep(cag_from_chevalley_quantum(n), base))


# -- verify_presentation -----------------------------------------------------

def test_core_quantum_cag_run_is_all_zero():
    report = verify_presentation(quantum_cag(2), quantum_cag_rep(2))
    assert report.all_zero
    assert report.summary["total"] == len(quantum_cag(2).relations)
    assert all(r.residual == "" for r in report.results)


def test_classical_cag_in_fock_run():
    rep = fock_matrix_rep(fock_module(3, 2))
    report = verify_presentation(classical_cag(3, extended=True), rep)
    assert report.all_zero


def test_corrupted_pairing_relation_reports_nonzero():
    bad = corrupt_sign_21c(quantum_cag(1))
    report = verify_presentation(bad, quantum_cag_rep(1))
    assert not report.all_zero
    outcome = report.outcome("q-cag/21c/i=1/sign-flipped")
    assert outcome.status == "nonzero"
    assert outcome.residual == "(0,0) = 2; (1,1) = -2"
    assert report.summary["nonzero"] == 1


def test_uncovered_alphabet_rejected():
    with pytest.raises(ValueError):
        verify_presentation(quantum_cag(2), vector_rep_quantum(2))


def test_report_is_sorted_and_deterministic():
    report_a = verify_presentation(quantum_cag(2), quantum_cag_rep(2))
    report_b = verify_presentation(quantum_cag(2), quantum_cag_rep(2))
    ids = [r.relation_id for r in report_a.results]
    assert ids == sorted(ids)
    dump_a = json.dumps(report_a.to_dict(include_timing=False), sort_keys=True)
    dump_b = json.dumps(report_b.to_dict(include_timing=False), sort_keys=True)
    assert dump_a.encode() == dump_b.encode()


def test_workers_do_not_change_the_report():
    serial = verify_presentation(quantum_cag(2), quantum_cag_rep(2), workers=1)
    threaded = verify_presentation(quantum_cag(2), quantum_cag_rep(2), workers=4)
    assert serial.to_dict(include_timing=False) == threaded.to_dict(include_timing=False)


def test_meta_carries_evidence_caveat():
    report = verify_presentation(quantum_cag(1), quantum_cag_rep(1))
    assert "representation-level" in report.meta["evidence"]


# -- named consequences ---------------------------------------------------------

def test_consequences_all_zero_n3():
    report = verify_named_consequences(3, combined_rep(3))
    assert report.all_zero
    ids = [r.relation_id for r in report.results]
    assert "mixed/15c/i=2/j=2" in ids
    assert "mixed/17/i=2" in ids
    assert "mixed/18a/i=3" in ids
    assert "mixed/18b/f/i=2" in ids


def test_consequence_instance_counts():
    report = verify_named_consequences(4, combined_rep(4))
    ids = [r.relation_id for r in report.results]
    assert sum(1 for rid in ids if rid.startswith("mixed/15")) == 4 * 3 * 4
    assert sum(1 for rid in ids if rid.startswith("mixed/17")) == 2
    assert sum(1 for rid in ids if rid.startswith("mixed/18a")) == 4
    assert sum(1 for rid in ids if rid.startswith("mixed/18b")) == 6


# -- round trips ------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 6))
def test_classical_round_trip(n):
    assert round_trip_check("classical", n, defining_rep_classical(n)).all_zero


@pytest.mark.parametrize("n", range(1, 5))
def test_quantum_round_trip(n):
    assert round_trip_check("quantum", n, combined_rep(n)).all_zero


def test_round_trip_rank_one_is_identity_like():
    report = round_trip_check("classical", 1, defining_rep_classical(1))
    assert {r.relation_id for r in report.results} == {
        "round-trip/classical/h1", "round-trip/classical/e1",
        "round-trip/classical/f1"}
    assert report.all_zero


# -- identities ---------------------------------------------------------------------

@pytest.mark.parametrize("identity", ["16a", "16b", "23"])
def test_identities_hold(identity):
    result = check_identity(identity)
    assert result.ok
    assert result.residual.is_zero()


@pytest.mark.parametrize("identity", ["16a", "16b", "23"])
def test_corrupted_identities_fail(identity):
    result = check_identity(identity, corrupt_condition=True)
    assert not result.ok
    assert not result.residual.is_zero()
    assert result.residual_text


def test_unknown_identity_rejected():
    with pytest.raises(ValueError):
        check_identity("24")


def test_rewrite_inversions_strictly_decrease():
    a, b, c = freevar("a"), freevar("b"), freevar("c")
    alg = FreeAlgebra("rewrite-test", (a, b, c))
    rng = random.Random(3)
    for _ in range(50):
        word = tuple(rng.choice(alg.symbols) for _ in range(rng.randint(2, 9)))
        inv = _inversions(word, a, b)
        w = list(word)
        steps = 0
        while True:
            for pos in range(len(w) - 1):
                if w[pos] == b and w[pos + 1] == a:
                    w[pos], w[pos + 1] = w[pos + 1], w[pos]
                    steps += 1
                    new_inv = _inversions(tuple(w), a, b)
                    assert new_inv == inv - 1
                    inv = new_inv
                    break
            else:
                break
        assert inv == 0
        normalized = rewrite_commuting(alg.poly({word: 1}), a, b)
        assert list(normalized.terms) == [tuple(w)]


# -- probe -------------------------------------------------------------------------

def test_probe_21d_rank_one_is_empty():
    table = probe_21d_range(1, quantum_cag_rep(1))
    assert table["rows"] == []
    assert table["summary"]["total"] == 0


def test_probe_21d_rank_two_example_zero():
    table = probe_21d_range(2, quantum_cag_rep(2))
    row = next(r for r in table["rows"]
               if (r["i"], r["xi"], r["eta"], r["j"]) == (1, 1, 1, 2))
    assert row["status"] == "zero"


@pytest.mark.parametrize("n", [2, 3])
def test_probe_21d_full_table_zero(n):
    table = probe_21d_range(n, quantum_cag_rep(n))
    assert table["summary"]["nonzero"] == 0
    assert table["verified_j_range"] == "all j in 1..n"
    assert table["summary"]["total"] == 4 * (n - 1) * n


# -- classical limit ------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_classical_limit_in_defining_rep(n):
    assert verify_classical_limit(n, defining_rep_classical(n)).all_zero


def test_classical_limit_in_fock_rep():
    rep = fock_matrix_rep(fock_module(2, 4))
    assert verify_classical_limit(2, rep).all_zero
