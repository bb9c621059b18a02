"""Builders for the four presentations and their weight metadata.

Each presentation is an alphabet plus a generated list of relations; a
relation is an NCPoly that must vanish in every admissible representation.
Relation ids are structured strings (``q-cag/21d/xi=+1/eta=-1/i=2/j=3``) so
that verification reports are self-describing.

Relation families and their id tags:

* classical Chevalley  ``cl-chev/5/*`` (Cartan part), ``cl-chev/6/*`` (Serre part)
* classical CAG        ``cl-cag/7/*`` (minimal set), ``cl-cag/10/*`` (extended set)
* quantum Chevalley    ``q-chev/11a..11c/*``, ``q-chev/12a..12b/*``
* quantum CAG          ``q-cag/21a..21e/*``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .freealg import (
    FreeAlgebra, GenKind, GenSymbol, NCPoly, bracket,
    e, f, h, k, kb, L, Lb, aplus, aminus,
)
from .scalars import Scalar

__all__ = [
    "CartanMatrix", "Presentation", "cartan_matrix", "cartan_sum",
    "classical_chevalley", "classical_cag", "quantum_chevalley", "quantum_cag",
    "weight_of", "INHOMOGENEOUS",
    "classical_chevalley_algebra", "classical_cag_algebra",
    "quantum_chevalley_algebra", "quantum_cag_algebra",
    "quantum_combined_algebra", "relation_21d",
]

#: marker returned by weight_of for non-homogeneous elements
INHOMOGENEOUS = "inhomogeneous"


@dataclass(frozen=True)
class CartanMatrix:
    """Type-A Cartan matrix: 2 on the diagonal, -1 on the off-diagonals."""

    n: int
    entries: Tuple[Tuple[int, ...], ...]

    def a(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"Cartan index ({i},{j}) out of range for n={self.n}")
        return self.entries[i - 1][j - 1]


def cartan_matrix(n: int) -> CartanMatrix:
    if n < 1:
        raise ValueError("rank must be at least 1")
    rows = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
              for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    return CartanMatrix(n, rows)


def cartan_sum(n: int, i: int, j: int) -> int:
    """Double partial sum of Cartan entries over r <= i, s <= j."""
    cm = cartan_matrix(n)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"index ({i},{j}) out of range for n={n}")
    return sum(cm.a(r, s) for r in range(1, i + 1) for s in range(1, j + 1))


# ---------------------------------------------------------------------------
# alphabets
# ---------------------------------------------------------------------------


def classical_chevalley_algebra(n: int) -> FreeAlgebra:
    syms = tuple(h(i) for i in range(1, n + 1)) + \
        tuple(e(i) for i in range(1, n + 1)) + \
        tuple(f(i) for i in range(1, n + 1))
    return FreeAlgebra("classical-chevalley", syms)


def classical_cag_algebra(n: int) -> FreeAlgebra:
    syms = tuple(aplus(i) for i in range(1, n + 1)) + \
        tuple(aminus(i) for i in range(1, n + 1))
    return FreeAlgebra("classical-cag", syms)


def quantum_chevalley_algebra(n: int) -> FreeAlgebra:
    syms = tuple(e(i) for i in range(1, n + 1)) + \
        tuple(f(i) for i in range(1, n + 1)) + \
        tuple(k(i) for i in range(1, n + 1)) + \
        tuple(kb(i) for i in range(1, n + 1))
    return FreeAlgebra("quantum-chevalley", syms, has_star=True)


def quantum_cag_algebra(n: int) -> FreeAlgebra:
    syms = tuple(aplus(i) for i in range(1, n + 1)) + \
        tuple(aminus(i) for i in range(1, n + 1)) + \
        tuple(L(i) for i in range(1, n + 1)) + \
        tuple(Lb(i) for i in range(1, n + 1))
    return FreeAlgebra("quantum-cag", syms, has_star=True)


def quantum_combined_algebra(n: int) -> FreeAlgebra:
    """Union alphabet used for the mixed relations between both generator sets."""
    syms = quantum_chevalley_algebra(n).symbols + quantum_cag_algebra(n).symbols
    return FreeAlgebra("quantum-combined", syms, has_star=True)


# ---------------------------------------------------------------------------
# weights (epsilon basis, length n+1, slots 0..n)
# ---------------------------------------------------------------------------


def _weight_table(n: int, symbols: Tuple[GenSymbol, ...]) -> Dict[GenSymbol, Tuple[int, ...]]:
    zero = (0,) * (n + 1)

    def eps_diff(pos_plus: int, pos_minus: int) -> Tuple[int, ...]:
        v = [0] * (n + 1)
        v[pos_plus] += 1
        v[pos_minus] -= 1
        return tuple(v)

    table = {}
    for s in symbols:
        i = s.index
        if s.kind is GenKind.E:
            table[s] = eps_diff(i - 1, i)
        elif s.kind is GenKind.F:
            table[s] = eps_diff(i, i - 1)
        elif s.kind is GenKind.APLUS:
            table[s] = eps_diff(i, 0)
        elif s.kind is GenKind.AMINUS:
            table[s] = eps_diff(0, i)
        else:
            table[s] = zero
    return table


def weight_of(pres: "Presentation", poly: NCPoly):
    """Common epsilon-weight of all words of ``poly``, or the marker string."""
    weight = None
    for word in poly.terms:
        acc = [0] * (pres.n + 1)
        for s in word:
            for pos, w in enumerate(pres.weights[s]):
                acc[pos] += w
        acc_t = tuple(acc)
        if weight is None:
            weight = acc_t
        elif weight != acc_t:
            return INHOMOGENEOUS
    return weight if weight is not None else (0,) * (pres.n + 1)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    name: str
    n: int
    algebra: FreeAlgebra
    relations: Tuple[Tuple[str, NCPoly], ...]
    weights: Dict[GenSymbol, Tuple[int, ...]] = field(repr=False)

    def __post_init__(self):
        ids = [rid for rid, _ in self.relations]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate relation ids in {self.name}")
        for rid, poly in self.relations:
            if weight_of(self, poly) == INHOMOGENEOUS:
                raise ValueError(f"relation {rid} is not weight-homogeneous")

    def relation(self, rid: str) -> NCPoly:
        for r, poly in self.relations:
            if r == rid:
                return poly
        raise KeyError(rid)

    def relation_ids(self) -> Tuple[str, ...]:
        return tuple(rid for rid, _ in self.relations)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "alphabet": [s.text() for s in self.algebra.symbols],
            "relations": [{"id": rid, "element": str(poly)}
                          for rid, poly in self.relations],
        }


def classical_chevalley(n: int) -> Presentation:
    """Cartan plus Serre relations on h_i, e_i, f_i."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    alg = classical_chevalley_algebra(n)
    cm = cartan_matrix(n)
    H = lambda i: alg.sym(h(i))
    E = lambda i: alg.sym(e(i))
    F = lambda i: alg.sym(f(i))
    rels = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append((f"cl-chev/5/hh/i={i}/j={j}", bracket(H(i), H(j))))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rels.append((f"cl-chev/5/he/i={i}/j={j}",
                         bracket(H(i), E(j)) - E(j).scale(cm.a(i, j))))
            rels.append((f"cl-chev/5/hf/i={i}/j={j}",
                         bracket(H(i), F(j)) + F(j).scale(cm.a(i, j))))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rel = bracket(E(i), F(j))
            if i == j:
                rel = rel - H(i)
            rels.append((f"cl-chev/5/ef/i={i}/j={j}", rel))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                rels.append((f"cl-chev/6/ee/i={i}/j={j}", bracket(E(i), E(j))))
                rels.append((f"cl-chev/6/ff/i={i}/j={j}", bracket(F(i), F(j))))
    for i in range(1, n + 1):
        for j in (i - 1, i + 1):
            if 1 <= j <= n:
                rels.append((f"cl-chev/6/serre-e/i={i}/j={j}",
                             bracket(E(i), bracket(E(i), E(j)))))
                rels.append((f"cl-chev/6/serre-f/i={i}/j={j}",
                             bracket(F(i), bracket(F(i), F(j)))))
    return Presentation("classical-chevalley", n, alg, tuple(rels),
                        _weight_table(n, alg.symbols))


def _cag_triple(alg: FreeAlgebra, xi: int, i: int, j: int, kk: int) -> NCPoly:
    """[[a_i^xi, a_j^(-xi)], a_k^xi] - d_jk a_i^xi - d_ij a_k^xi."""
    a = lambda s, idx: alg.sym(aplus(idx) if s > 0 else aminus(idx))
    rel = bracket(bracket(a(xi, i), a(-xi, j)), a(xi, kk))
    if j == kk:
        rel = rel - a(xi, i)
    if i == j:
        rel = rel - a(xi, kk)
    return rel


def classical_cag(n: int, extended: bool = False) -> Presentation:
    """Minimal triple-relation set; ``extended`` generates the full set."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    alg = classical_cag_algebra(n)
    a = lambda s, idx: alg.sym(aplus(idx) if s > 0 else aminus(idx))
    rels = []
    if extended:
        for xi in (+1, -1):
            tag = f"xi={'+' if xi > 0 else '-'}1"
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    rels.append((f"cl-cag/10/pair/{tag}/i={i}/j={j}",
                                 bracket(a(xi, i), a(xi, j))))
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    for kk in range(1, n + 1):
                        rels.append((f"cl-cag/10/triple/{tag}/i={i}/j={j}/k={kk}",
                                     _cag_triple(alg, xi, i, j, kk)))
    else:
        for xi in (+1, -1):
            tag = f"xi={'+' if xi > 0 else '-'}1"
            if n >= 2:
                rels.append((f"cl-cag/7/pair/{tag}", bracket(a(xi, 1), a(xi, 2))))
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if abs(i - j) > 1:
                        continue
                    for kk in range(1, n + 1):
                        rels.append((f"cl-cag/7/triple/{tag}/i={i}/j={j}/k={kk}",
                                     _cag_triple(alg, xi, i, j, kk)))
    name = "classical-cag"
    return Presentation(name, n, alg, tuple(rels), _weight_table(n, alg.symbols))


def quantum_chevalley(n: int) -> Presentation:
    """Cartan and Serre relations on e_i, f_i, k_i, kb_i with deformed brackets."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    alg = quantum_chevalley_algebra(n)
    cm = cartan_matrix(n)
    E = lambda i: alg.sym(e(i))
    F = lambda i: alg.sym(f(i))
    K = lambda i: alg.sym(k(i))
    Kb = lambda i: alg.sym(kb(i))
    one = alg.one()
    q = lambda m: alg.q(m)
    qmqbar_inv = (alg.q(1) - alg.q(-1)).inverse()
    rels = []
    for i in range(1, n + 1):
        rels.append((f"q-chev/11a/unit/kkb/i={i}", K(i) * Kb(i) - one))
        rels.append((f"q-chev/11a/unit/kbk/i={i}", Kb(i) * K(i) - one))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append((f"q-chev/11a/comm/i={i}/j={j}", bracket(K(i), K(j))))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rels.append((f"q-chev/11b/ke/i={i}/j={j}",
                         K(i) * E(j) - (E(j) * K(i)).scale(q(cm.a(i, j)))))
            rels.append((f"q-chev/11b/kf/i={i}/j={j}",
                         K(i) * F(j) - (F(j) * K(i)).scale(q(-cm.a(i, j)))))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rel = bracket(E(i), F(j))
            if i == j:
                rel = rel - (K(i) - Kb(i)).scale(qmqbar_inv)
            rels.append((f"q-chev/11c/i={i}/j={j}", rel))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                rels.append((f"q-chev/12a/ee/i={i}/j={j}", bracket(E(i), E(j))))
                rels.append((f"q-chev/12a/ff/i={i}/j={j}", bracket(F(i), F(j))))
    for i in range(1, n + 1):
        for j in (i - 1, i + 1):
            if 1 <= j <= n:
                rels.append((f"q-chev/12b/e/i={i}/j={j}/inner=qbar",
                             bracket(E(i), bracket(E(i), E(j), q(-1)), q(1))))
                rels.append((f"q-chev/12b/e/i={i}/j={j}/inner=q",
                             bracket(E(i), bracket(E(i), E(j), q(1)), q(-1))))
                rels.append((f"q-chev/12b/f/i={i}/j={j}/inner=qbar",
                             bracket(F(i), bracket(F(i), F(j), q(-1)), q(1))))
                rels.append((f"q-chev/12b/f/i={i}/j={j}/inner=q",
                             bracket(F(i), bracket(F(i), F(j), q(1)), q(-1))))
    return Presentation("quantum-chevalley", n, alg, tuple(rels),
                        _weight_table(n, alg.symbols))


def relation_21d(alg: FreeAlgebra, xi: int, eta: int, i: int, j: int) -> NCPoly:
    """One instance of the deformed triple relation family (tag 21d).

    [[a_i^eta, a_{i+xi}^(-eta)], a_j^eta]_{q^(xi(1+d_ij))} - d_{j,i+xi} L_j^(-xi eta) a_i^eta
    """
    a = lambda s, idx: alg.sym(aplus(idx) if s > 0 else aminus(idx))
    x = Scalar.monomial(alg.qvar, xi * (1 + (1 if i == j else 0)), alg.indets)
    rel = bracket(bracket(a(eta, i), a(-eta, i + xi)), a(eta, j), x)
    if j == i + xi:
        lsym = Lb(j) if xi * eta > 0 else L(j)
        rel = rel - alg.sym(lsym) * a(eta, i)
    return rel


def quantum_cag(n: int) -> Presentation:
    """The deformed CAG presentation on a_i^+/-, L_i, Lb_i."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    alg = quantum_cag_algebra(n)
    a = lambda s, idx: alg.sym(aplus(idx) if s > 0 else aminus(idx))
    LL = lambda i: alg.sym(L(i))
    LLb = lambda i: alg.sym(Lb(i))
    one = alg.one()
    qmqbar_inv = (alg.q(1) - alg.q(-1)).inverse()
    rels = []
    for i in range(1, n + 1):
        rels.append((f"q-cag/21a/unit/LLb/i={i}", LL(i) * LLb(i) - one))
        rels.append((f"q-cag/21a/unit/LbL/i={i}", LLb(i) * LL(i) - one))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append((f"q-cag/21a/comm/i={i}/j={j}", bracket(LL(i), LL(j))))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for sign, tag in ((+1, "+"), (-1, "-")):
                exp = -sign * (1 + (1 if i == j else 0))
                rels.append((f"q-cag/21b/sign={tag}/i={i}/j={j}",
                             LL(i) * a(sign, j)
                             - (a(sign, j) * LL(i)).scale(alg.q(exp))))
    for i in range(1, n + 1):
        rels.append((f"q-cag/21c/i={i}",
                     bracket(a(-1, i), a(+1, i))
                     - (LL(i) - LLb(i)).scale(qmqbar_inv)))
    for xi in (+1, -1):
        for eta in (+1, -1):
            for i in range(1, n + 1):
                if not 1 <= i + xi <= n:
                    continue
                for j in range(1, n + 1):
                    rid = (f"q-cag/21d/xi={'+' if xi > 0 else '-'}1/"
                           f"eta={'+' if eta > 0 else '-'}1/i={i}/j={j}")
                    rels.append((rid, relation_21d(alg, xi, eta, i, j)))
    if n >= 2:
        for eta, tag in ((+1, "+"), (-1, "-")):
            rels.append((f"q-cag/21e/eta={tag}1",
                         bracket(a(eta, 1), a(eta, 2), alg.q(1))))
    return Presentation("quantum-cag", n, alg, tuple(rels),
                        _weight_table(n, alg.symbols))
