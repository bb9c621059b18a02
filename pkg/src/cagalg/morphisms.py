"""Generator-substitution homomorphisms between presentations, and the coproduct.

A :class:`GenMap` assigns to every source generator an element of the target
free algebra; by freeness this extends uniquely to an algebra homomorphism
(:func:`apply_genmap`).  The four conversion maps between Chevalley and
creation/annihilation generators are built here, together with the coproduct
on the quantum Chevalley generators and its expansion on the deformed CAGs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .freealg import (
    FreeAlgebra, GenSymbol, NCPoly, TensorPoly, bracket, tensor,
    e, f, h, k, kb, L, Lb, aplus, aminus,
)
from .presentations import (
    classical_cag_algebra, classical_chevalley_algebra,
    quantum_cag_algebra, quantum_chevalley_algebra,
)

__all__ = [
    "GenMap", "CoproductMap", "apply_genmap",
    "cag_from_chevalley_classical", "chevalley_from_cag_classical",
    "cag_from_chevalley_quantum", "chevalley_from_cag_quantum",
    "coproduct_chevalley", "coproduct_on_cag",
    "CoproductClosedForm", "coproduct_on_cag_closed_form", "NoClosedFormError",
]


class UnassignedSymbolError(KeyError):
    """A source symbol has no image under the map."""


class NoClosedFormError(NotImplementedError):
    """No closed-form CAG-alphabet expansion is implemented for this index."""


@dataclass(frozen=True)
class GenMap:
    """Map from source generators to target-algebra elements."""

    name: str
    source: FreeAlgebra
    target: FreeAlgebra
    images: Dict[GenSymbol, NCPoly]

    def image(self, sym: GenSymbol) -> NCPoly:
        try:
            return self.images[sym]
        except KeyError:
            raise UnassignedSymbolError(
                f"{sym.text()} has no image under {self.name}") from None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.name,
            "target": self.target.name,
            "images": [{"source": s.text(), "image": str(p)}
                       for s, p in self.images.items()],
        }


def apply_genmap(genmap: GenMap, poly: NCPoly) -> NCPoly:
    """Homomorphic extension: substitute each symbol, multiply in word order."""
    if poly.alg != genmap.source:
        raise ValueError(
            f"polynomial over {poly.alg.name}, map source is {genmap.source.name}")
    out = genmap.target.zero()
    for word, coeff in poly.terms.items():
        acc = genmap.target.scalar(coeff)
        for sym in word:
            acc = acc * genmap.image(sym)
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# classical conversion maps
# ---------------------------------------------------------------------------


def cag_from_chevalley_classical(n: int) -> GenMap:
    """a_i^- as left-nested commutators of e's, a_i^+ as right-nested of f's."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    src = classical_cag_algebra(n)
    tgt = classical_chevalley_algebra(n)
    images: Dict[GenSymbol, NCPoly] = {}
    minus = tgt.sym(e(1))
    plus = tgt.sym(f(1))
    images[aminus(1)] = minus
    images[aplus(1)] = plus
    for i in range(2, n + 1):
        minus = bracket(minus, tgt.sym(e(i)))
        plus = bracket(tgt.sym(f(i)), plus)
        images[aminus(i)] = minus
        images[aplus(i)] = plus
    return GenMap("cl-cag<-cl-chevalley", src, tgt, images)


def chevalley_from_cag_classical(n: int) -> GenMap:
    """e, f, h written in the CAG alphabet."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    src = classical_chevalley_algebra(n)
    tgt = classical_cag_algebra(n)
    ap = lambda i: tgt.sym(aplus(i))
    am = lambda i: tgt.sym(aminus(i))
    images: Dict[GenSymbol, NCPoly] = {e(1): am(1), f(1): ap(1),
                                       h(1): bracket(am(1), ap(1))}
    for i in range(2, n + 1):
        images[e(i)] = bracket(ap(i - 1), am(i))
        images[f(i)] = bracket(ap(i), am(i - 1))
        images[h(i)] = bracket(am(i), ap(i)) - bracket(am(i - 1), ap(i - 1))
    return GenMap("cl-chevalley<-cl-cag", src, tgt, images)


# ---------------------------------------------------------------------------
# quantum conversion maps
# ---------------------------------------------------------------------------


def cag_from_chevalley_quantum(n: int) -> GenMap:
    """Deformed CAGs as nested q-brackets; L_i as ordered k-products."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    src = quantum_cag_algebra(n)
    tgt = quantum_chevalley_algebra(n)
    qbar = tgt.q(-1)
    q = tgt.q(1)
    images: Dict[GenSymbol, NCPoly] = {}
    minus = tgt.sym(e(1))
    plus = tgt.sym(f(1))
    images[aminus(1)] = minus
    images[aplus(1)] = plus
    for i in range(2, n + 1):
        minus = bracket(minus, tgt.sym(e(i)), qbar)
        plus = bracket(tgt.sym(f(i)), plus, q)
        images[aminus(i)] = minus
        images[aplus(i)] = plus
    for i in range(1, n + 1):
        images[L(i)] = tgt.word(*(k(m) for m in range(1, i + 1)))
        images[Lb(i)] = tgt.word(*(kb(m) for m in range(i, 0, -1)))
    return GenMap("q-cag<-q-chevalley", src, tgt, images)


def chevalley_from_cag_quantum(n: int) -> GenMap:
    """e, f, k, kb written in the deformed CAG alphabet."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    src = quantum_chevalley_algebra(n)
    tgt = quantum_cag_algebra(n)
    ap = lambda i: tgt.sym(aplus(i))
    am = lambda i: tgt.sym(aminus(i))
    LL = lambda i: tgt.sym(L(i))
    LLb = lambda i: tgt.sym(Lb(i))
    images: Dict[GenSymbol, NCPoly] = {
        e(1): am(1), f(1): ap(1), k(1): LL(1), kb(1): LLb(1),
    }
    for i in range(2, n + 1):
        images[e(i)] = -(bracket(am(i), ap(i - 1)) * LL(i - 1))
        images[f(i)] = -(LLb(i - 1) * bracket(am(i - 1), ap(i)))
        images[k(i)] = LL(i) * LLb(i - 1)
        images[kb(i)] = LLb(i) * LL(i - 1)
    return GenMap("q-chevalley<-q-cag", src, tgt, images)


# ---------------------------------------------------------------------------
# coproduct
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoproductMap:
    """Per-generator tensor images over one alphabet."""

    name: str
    algebra: FreeAlgebra
    images: Dict[GenSymbol, TensorPoly]

    def image(self, sym: GenSymbol) -> TensorPoly:
        try:
            return self.images[sym]
        except KeyError:
            raise UnassignedSymbolError(
                f"{sym.text()} has no coproduct image") from None


def coproduct_chevalley(n: int) -> CoproductMap:
    """Grouplike k's; e_i and f_i twisted-primitive.

    The e-images fix the convention; the f/k partners are the unique standard
    completion that keeps the Cartan pairing relations stable under the
    coproduct (validated by the tensor-square representation tests, never
    assumed).
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    alg = quantum_chevalley_algebra(n)
    one = alg.one()
    images: Dict[GenSymbol, TensorPoly] = {}
    for i in range(1, n + 1):
        E, F, K, Kb = alg.sym(e(i)), alg.sym(f(i)), alg.sym(k(i)), alg.sym(kb(i))
        images[e(i)] = tensor(E, one) + tensor(Kb, E)
        images[f(i)] = tensor(F, K) + tensor(one, F)
        images[k(i)] = tensor(K, K)
        images[kb(i)] = tensor(Kb, Kb)
    return CoproductMap("coproduct", alg, images)


def coproduct_on_cag(n: int, i: int, sign: int) -> TensorPoly:
    """Tensor expansion of the deformed CAG nest with every generator replaced
    by its coproduct image; raw form over the Chevalley alphabet."""
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range for n={n}")
    cop = coproduct_chevalley(n)
    alg = cop.algebra
    if sign > 0:
        acc = cop.image(f(1))
        for m in range(2, i + 1):
            acc = bracket(cop.image(f(m)), acc, alg.q(1))
    else:
        acc = cop.image(e(1))
        for m in range(2, i + 1):
            acc = bracket(acc, cop.image(e(m)), alg.q(-1))
    return acc


@dataclass(frozen=True)
class CoproductClosedForm:
    """CAG-alphabet expansion plus a grouped display string."""

    tensor: TensorPoly
    display: str


def coproduct_on_cag_closed_form(n: int, i: int, sign: int) -> CoproductClosedForm:
    """Closed-form CAG-alphabet coproduct; implemented for i <= 2 only.

    The general re-expression in the CAG alphabet has no implemented closed
    form for i > 2 (the expansions grow and lose the three-term shape), so
    requesting one raises :class:`NoClosedFormError`.
    """
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range for n={n}")
    if i > 2:
        raise NoClosedFormError(
            f"no closed form implemented for a{i}{'+' if sign > 0 else '-'}")
    alg = quantum_cag_algebra(n)
    one = alg.one()
    qmqbar = alg.q(1) - alg.q(-1)
    a = lambda s, idx: alg.sym(aplus(idx) if s > 0 else aminus(idx))
    if i == 1:
        if sign > 0:
            form = tensor(a(+1, 1), alg.sym(L(1))) + tensor(one, a(+1, 1))
            display = "a1+ ⊗ L1 + 1 ⊗ a1+"
        else:
            form = tensor(a(-1, 1), one) + tensor(alg.sym(Lb(1)), a(-1, 1))
            display = "a1- ⊗ 1 + Lb1 ⊗ a1-"
    else:
        if sign > 0:
            third = tensor(a(+1, 1), bracket(a(-1, 1), a(+1, 2))).scale(qmqbar)
            form = tensor(a(+1, 2), alg.sym(L(2))) + tensor(one, a(+1, 2)) + third
            display = (f"a2+ ⊗ L2 + 1 ⊗ a2+ "
                       f"+ ({qmqbar}) a1+ ⊗ [a1-, a2+]")
        else:
            third = tensor(bracket(a(+1, 1), a(-1, 2)), a(-1, 1)).scale(qmqbar)
            form = tensor(a(-1, 2), one) + tensor(alg.sym(Lb(2)), a(-1, 2)) + third
            display = (f"a2- ⊗ 1 + Lb2 ⊗ a2- "
                       f"+ ({qmqbar}) [a1+, a2-] ⊗ a1-")
    return CoproductClosedForm(form, display)
