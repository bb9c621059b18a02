"""Free associative algebra with unit over :class:`~cagalg.scalars.Scalar`.

Elements are :class:`NCPoly`: finite Scalar-linear combinations of words over
a declared generator alphabet.  There is no rewriting modulo relations here;
this is the genuinely free algebra, so equality is decidable and cheap.
:class:`TensorPoly` holds two-factor tensor elements (componentwise products,
no braiding factor).

Canonical form: no zero coefficients are stored and term maps are kept sorted
by word, so structural equality is algebra equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .scalars import Scalar

__all__ = [
    "GenKind", "GenSymbol", "Word", "FreeAlgebra", "NCPoly", "TensorPoly",
    "AlphabetError", "bracket", "star", "tensor",
    "e", "f", "h", "k", "kb", "L", "Lb", "aplus", "aminus", "freevar",
]


class AlphabetError(ValueError):
    """Symbol outside the declared alphabet, or operands over different alphabets."""


class GenKind(IntEnum):
    E = 0
    F = 1
    H = 2
    K = 3
    KBAR = 4
    L = 5
    LBAR = 6
    APLUS = 7
    AMINUS = 8
    FREE = 9


_KIND_PREFIX = {
    GenKind.E: "e", GenKind.F: "f", GenKind.H: "h", GenKind.K: "k",
    GenKind.KBAR: "kb", GenKind.L: "L", GenKind.LBAR: "Lb",
}


@dataclass(frozen=True, order=True)
class GenSymbol:
    """One generator: a kind plus a 1-based index (FREE symbols carry a name)."""

    kind: GenKind
    index: int = 0
    name: str = ""

    def text(self) -> str:
        if self.kind is GenKind.FREE:
            return self.name
        if self.kind is GenKind.APLUS:
            return f"a{self.index}+"
        if self.kind is GenKind.AMINUS:
            return f"a{self.index}-"
        return f"{_KIND_PREFIX[self.kind]}{self.index}"

    def __repr__(self) -> str:
        return self.text()


def e(i: int) -> GenSymbol:
    return GenSymbol(GenKind.E, i)


def f(i: int) -> GenSymbol:
    return GenSymbol(GenKind.F, i)


def h(i: int) -> GenSymbol:
    return GenSymbol(GenKind.H, i)


def k(i: int) -> GenSymbol:
    return GenSymbol(GenKind.K, i)


def kb(i: int) -> GenSymbol:
    return GenSymbol(GenKind.KBAR, i)


def L(i: int) -> GenSymbol:
    return GenSymbol(GenKind.L, i)


def Lb(i: int) -> GenSymbol:
    return GenSymbol(GenKind.LBAR, i)


def aplus(i: int) -> GenSymbol:
    return GenSymbol(GenKind.APLUS, i)


def aminus(i: int) -> GenSymbol:
    return GenSymbol(GenKind.AMINUS, i)


def freevar(name: str) -> GenSymbol:
    return GenSymbol(GenKind.FREE, 0, name)


#: a word is a tuple of symbols; the empty word is the unit
Word = tuple

#: kind swaps of the star antiinvolution on the quantum alphabets
STAR_SWAPS = {
    GenKind.E: GenKind.F, GenKind.F: GenKind.E,
    GenKind.K: GenKind.KBAR, GenKind.KBAR: GenKind.K,
    GenKind.L: GenKind.LBAR, GenKind.LBAR: GenKind.L,
    GenKind.APLUS: GenKind.AMINUS, GenKind.AMINUS: GenKind.APLUS,
}

CoeffLike = Union[Scalar, int, Fraction]


@dataclass(frozen=True)
class FreeAlgebra:
    """A named alphabet together with the scalar context of its coefficients."""

    name: str
    symbols: tuple
    indets: tuple = ("q",)
    has_star: bool = False
    qvar: str = "q"

    @cached_property
    def _symbol_set(self) -> frozenset:
        return frozenset(self.symbols)

    def __contains__(self, sym: GenSymbol) -> bool:
        return sym in self._symbol_set

    # -- element constructors ------------------------------------------------

    def coeff(self, value: CoeffLike) -> Scalar:
        if isinstance(value, Scalar):
            if value.indets != self.indets:
                raise AlphabetError(
                    f"scalar context {value.indets} does not match algebra {self.indets}")
            return value
        return Scalar.const(value, self.indets)

    def q(self, exponent: int = 1) -> Scalar:
        return Scalar.monomial(self.qvar, exponent, self.indets)

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): Scalar.one(self.indets)})

    def scalar(self, value: CoeffLike) -> "NCPoly":
        return NCPoly(self, {(): self.coeff(value)})

    def sym(self, s: GenSymbol) -> "NCPoly":
        if s not in self:
            raise AlphabetError(f"{s.text()} is not in alphabet of {self.name}")
        return NCPoly(self, {(s,): Scalar.one(self.indets)})

    def word(self, *syms: GenSymbol) -> "NCPoly":
        for s in syms:
            if s not in self:
                raise AlphabetError(f"{s.text()} is not in alphabet of {self.name}")
        return NCPoly(self, {tuple(syms): Scalar.one(self.indets)})

    def poly(self, terms: Mapping[Word, CoeffLike]) -> "NCPoly":
        out = {}
        for word, c in terms.items():
            for s in word:
                if s not in self:
                    raise AlphabetError(f"{s.text()} is not in alphabet of {self.name}")
            out[tuple(word)] = self.coeff(c)
        return NCPoly(self, out)

    def star_symbol(self, s: GenSymbol) -> GenSymbol:
        swapped = GenSymbol(STAR_SWAPS[s.kind], s.index)
        if swapped not in self:
            raise AlphabetError(
                f"star image {swapped.text()} missing from alphabet of {self.name}")
        return swapped


def _check_same_algebra(a, b) -> None:
    if a.alg is not b.alg and a.alg != b.alg:
        raise AlphabetError(f"operands over different alphabets: "
                            f"{a.alg.name} vs {b.alg.name}")


def _coeff_text(c: Scalar) -> tuple:
    """(sign, body) where body multiplies a word; '' body means coefficient 1."""
    if c.is_constant():
        fr = c.as_fraction()
        sign = "-" if fr < 0 else "+"
        mag = abs(fr)
        return sign, "" if mag == 1 else str(mag)
    sign = "-" if c.lead_sign() < 0 else "+"
    mag = -c if sign == "-" else c
    body = str(mag) if mag.is_monic_monomial() else f"({mag})"
    return sign, body


class NCPoly:
    """Noncommutative polynomial: finite map from words to scalars."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: Mapping[Word, Scalar]):
        cleaned = {w: c for w, c in terms.items() if not c.is_zero()}
        object.__setattr__(self, "alg", alg)
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("NCPoly is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg.name, tuple(self.terms.items())))

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        if not isinstance(other, NCPoly):
            return NotImplemented
        _check_same_algebra(self, other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return NCPoly(self.alg, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.__add__(other.__neg__())

    def scale(self, value: CoeffLike) -> "NCPoly":
        c = self.alg.coeff(value)
        if c.is_zero():
            return self.alg.zero()
        return NCPoly(self.alg, {w: v * c for w, v in self.terms.items()})

    # -- multiplicative structure ---------------------------------------------

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            _check_same_algebra(self, other)
            out = {}
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    w = wa + wb
                    c = ca * cb
                    s = out.get(w)
                    out[w] = c if s is None else s + c
            return NCPoly(self.alg, out)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- inspection ------------------------------------------------------------

    def words(self) -> tuple:
        return tuple(self.terms)

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(tuple(word), Scalar.zero(self.alg.indets))

    def map_coefficients(self, fn) -> "NCPoly":
        return NCPoly(self.alg, {w: fn(c) for w, c in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.terms.items():
            sign, body = _coeff_text(c)
            word_text = " ".join(s.text() for s in w) if w else "1"
            if body and w:
                piece = f"{body} {word_text}"
            elif body:
                piece = body
            elif not w:
                piece = "1"
            else:
                piece = word_text
            pieces.append((sign, piece))
        head_sign, head = pieces[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, piece in pieces[1:]:
            text += (" - " if sign == "-" else " + ") + piece
        return text

    def __repr__(self) -> str:
        return f"NCPoly({self})"


class TensorPoly:
    """Two-factor tensor element: finite map (word, word) -> scalar."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: Mapping[tuple, Scalar]):
        cleaned = {p: c for p, c in terms.items() if not c.is_zero()}
        object.__setattr__(self, "alg", alg)
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("TensorPoly is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        if not isinstance(other, TensorPoly):
            return NotImplemented
        _check_same_algebra(self, other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p)
            out[p] = c if s is None else s + c
        return TensorPoly(self.alg, out)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly(self.alg, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.__add__(other.__neg__())

    def scale(self, value: CoeffLike) -> "TensorPoly":
        c = self.alg.coeff(value)
        return TensorPoly(self.alg, {p: v * c for p, v in self.terms.items()})

    def __mul__(self, other) -> "TensorPoly":
        if isinstance(other, TensorPoly):
            _check_same_algebra(self, other)
            out = {}
            for (la, ra), ca in self.terms.items():
                for (lb, rb), cb in other.terms.items():
                    p = (la + lb, ra + rb)
                    c = ca * cb
                    s = out.get(p)
                    out[p] = c if s is None else s + c
            return TensorPoly(self.alg, out)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "TensorPoly":
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def text(self, sep: str = "⊗") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (wl, wr), c in self.terms.items():
            sign, body = _coeff_text(c)
            left = " ".join(s.text() for s in wl) if wl else "1"
            right = " ".join(s.text() for s in wr) if wr else "1"
            piece = f"{left} {sep} {right}"
            if body:
                piece = f"{body} {piece}"
            pieces.append((sign, piece))
        head_sign, head = pieces[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, piece in pieces[1:]:
            text += (" - " if sign == "-" else " + ") + piece
        return text

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"TensorPoly({self})"


def tensor(left: NCPoly, right: NCPoly) -> TensorPoly:
    """Bilinear embedding  left (x) right."""
    _check_same_algebra(left, right)
    out = {}
    for wl, cl in left.terms.items():
        for wr, cr in right.terms.items():
            p = (wl, wr)
            c = cl * cr
            s = out.get(p)
            out[p] = c if s is None else s + c
    return TensorPoly(left.alg, out)


def bracket(a, b, x: Optional[CoeffLike] = None):
    """Deformed commutator  a b - x b a  (plain commutator when x is omitted).

    Works on NCPoly and TensorPoly alike.
    """
    ab = a * b
    ba = b * a
    if x is None:
        return ab - ba
    return ab - ba.scale(x)


def star(p: NCPoly) -> NCPoly:
    """The antiinvolution: words reversed, kinds swapped, q -> 1/q on coefficients."""
    alg = p.alg
    if not alg.has_star:
        raise AlphabetError(f"alphabet {alg.name} declares no star table")
    out = {}
    for w, c in p.terms.items():
        new_word = tuple(alg.star_symbol(s) for s in reversed(w))
        new_c = c.bar(alg.qvar)
        s = out.get(new_word)
        out[new_word] = new_c if s is None else s + new_c
    return NCPoly(alg, out)
