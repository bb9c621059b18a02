"""Exact matrix representations over Scalar entries.

Provides the defining representation of the classical algebra, the standard
(n+1)-dimensional vector representation of the quantum algebra (symbolic q or
an exact numeric rational q), pullbacks along generator maps, tensor squares
through a coproduct, and evaluation of free-algebra elements to matrices.

Zero tests are structural: a matrix is zero iff every entry is the canonical
zero scalar.  There is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Union

from .freealg import GenSymbol, NCPoly, Word, aminus, aplus, e, f, h, k, kb
from .morphisms import CoproductMap, GenMap
from .scalars import Scalar

__all__ = [
    "Matrix", "MatrixRep", "RepresentationError", "WordEvaluator",
    "defining_rep_classical", "vector_rep_quantum",
    "pullback_rep", "merge_reps", "eval_poly", "tensor_square_rep",
    "elementary",
]

QIDX = ("q",)


class RepresentationError(ValueError):
    """Malformed representation or evaluation over an uncovered alphabet."""


@dataclass(frozen=True)
class Matrix:
    """Dense square matrix of canonical scalars."""

    entries: tuple

    @property
    def dim(self) -> int:
        return len(self.entries)

    @cached_property
    def _indets(self) -> tuple:
        return self.entries[0][0].indets

    @cached_property
    def _nnz_rows(self) -> tuple:
        """Per row: tuple of (column, entry) pairs for the nonzero entries."""
        return tuple(
            tuple((c, a) for c, a in enumerate(row) if not a.is_zero())
            for row in self.entries)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "Matrix":
        return Matrix(tuple(tuple(row) for row in rows))

    @staticmethod
    def zero(dim: int, indets=QIDX) -> "Matrix":
        z = Scalar.zero(indets)
        return Matrix(tuple((z,) * dim for _ in range(dim)))

    @staticmethod
    def identity(dim: int, indets=QIDX) -> "Matrix":
        z = Scalar.zero(indets)
        one = Scalar.one(indets)
        return Matrix(tuple(
            tuple(one if r == c else z for c in range(dim)) for r in range(dim)))

    @staticmethod
    def diag(values) -> "Matrix":
        values = tuple(values)
        z = Scalar.zero(values[0].indets)
        d = len(values)
        return Matrix(tuple(
            tuple(values[r] if r == c else z for c in range(d)) for r in range(d)))

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "Matrix") -> "Matrix":
        rows = []
        for ra, rb in zip(self.entries, other.entries):
            rows.append(tuple(
                b if a.is_zero() else (a if b.is_zero() else a + b)
                for a, b in zip(ra, rb)))
        return Matrix(tuple(rows))

    def sub(self, other: "Matrix") -> "Matrix":
        rows = []
        for ra, rb in zip(self.entries, other.entries):
            rows.append(tuple(
                a if b.is_zero() else (-b if a.is_zero() else a - b)
                for a, b in zip(ra, rb)))
        return Matrix(tuple(rows))

    def neg(self) -> "Matrix":
        return Matrix(tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, c: Scalar) -> "Matrix":
        if c.is_zero():
            return Matrix.zero(self.dim, self._indets)
        if c.is_one():
            return self
        return Matrix(tuple(
            tuple(a if a.is_zero() else a * c for a in row)
            for row in self.entries))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise RepresentationError("matrix dimension mismatch")
        d = self.dim
        zero = Scalar.zero(self._indets)
        b_nnz = other._nnz_rows
        out = []
        for i in range(d):
            acc: dict = {}
            for kk, a in self._nnz_rows[i]:
                for j, b in b_nnz[kk]:
                    prod = a * b
                    prev = acc.get(j)
                    acc[j] = prod if prev is None else prev + prod
            out.append(tuple(acc.get(j, zero) for j in range(d)))
        return Matrix(tuple(out))

    def kron(self, other: "Matrix") -> "Matrix":
        da, db = self.dim, other.dim
        rows = []
        for i in range(da):
            for r in range(db):
                row = []
                for j in range(da):
                    aij = self.entries[i][j]
                    if aij.is_zero():
                        row.extend([aij] * db)
                    else:
                        row.extend(aij * other.entries[r][c] for c in range(db))
                rows.append(tuple(row))
        return Matrix(tuple(rows))

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def entry(self, r: int, c: int) -> Scalar:
        return self.entries[r][c]

    def map_entries(self, fn) -> "Matrix":
        return Matrix(tuple(tuple(fn(a) for a in row) for row in self.entries))

    def to_lists(self) -> list:
        return [[str(a) for a in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(a) for a in row) + "]"
                         for row in self.entries)


def elementary(dim: int, row: int, col: int, indets=QIDX) -> Matrix:
    """Matrix unit with a single 1 at (row, col)."""
    z = Scalar.zero(indets)
    one = Scalar.one(indets)
    return Matrix(tuple(
        tuple(one if (r == row and c == col) else z for c in range(dim))
        for r in range(dim)))


@dataclass(frozen=True)
class MatrixRep:
    """Assignment of square matrices to generator symbols."""

    rep_id: str
    dim: int
    assignment: Mapping[GenSymbol, Matrix]
    indets: tuple = QIDX
    q_value: Optional[Fraction] = None

    def __post_init__(self):
        for sym, mat in self.assignment.items():
            if mat.dim != self.dim:
                raise RepresentationError(
                    f"matrix for {sym.text()} has dimension {mat.dim}, expected {self.dim}")
        object.__setattr__(self, "assignment", MappingProxyType(dict(self.assignment)))

    def matrix(self, sym: GenSymbol) -> Matrix:
        try:
            return self.assignment[sym]
        except KeyError:
            raise RepresentationError(
                f"{sym.text()} is not assigned in representation {self.rep_id}") from None

    def covers(self, symbols) -> bool:
        return all(s in self.assignment for s in symbols)

    def q_mode(self) -> str:
        return "symbolic" if self.q_value is None else str(self.q_value)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _lower_coeff(rep: MatrixRep, c: Scalar) -> Scalar:
    if rep.q_value is None:
        return c
    return Scalar.const(c.eval({"q": rep.q_value}), rep.indets)


class WordEvaluator:
    """Caches word -> matrix products for one representation."""

    def __init__(self, rep: MatrixRep):
        self.rep = rep
        self._cache: Dict[Word, Matrix] = {(): Matrix.identity(rep.dim, rep.indets)}

    def word_matrix(self, word: Word) -> Matrix:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        m = self.word_matrix(word[:-1]).mul(self.rep.matrix(word[-1]))
        self._cache[word] = m
        return m

    def eval_poly(self, poly: NCPoly) -> Matrix:
        d = self.rep.dim
        zero = Scalar.zero(self.rep.indets)
        acc: Dict[tuple, Scalar] = {}
        for word, coeff in poly.terms.items():
            c = _lower_coeff(self.rep, coeff)
            if c.is_zero():
                continue
            scale = not c.is_one()
            for r, row in enumerate(self.word_matrix(word)._nnz_rows):
                for col, a in row:
                    v = a * c if scale else a
                    prev = acc.get((r, col))
                    acc[(r, col)] = v if prev is None else prev + v
        return Matrix(tuple(
            tuple(acc.get((r, col), zero) for col in range(d)) for r in range(d)))


def eval_poly(rep: MatrixRep, poly: NCPoly) -> Matrix:
    """Evaluate a free-algebra element: words to products, unit to identity."""
    return WordEvaluator(rep).eval_poly(poly)


# ---------------------------------------------------------------------------
# concrete representations
# ---------------------------------------------------------------------------


def defining_rep_classical(n: int) -> MatrixRep:
    """(n+1)-dimensional defining representation, rows/columns indexed 0..n.

    Assigns both the classical Chevalley alphabet and the classical CAG
    alphabet (a_i^+ -> E_{i,0}, a_i^- -> E_{0,i}).
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    d = n + 1
    assignment: Dict[GenSymbol, Matrix] = {}
    for i in range(1, n + 1):
        assignment[e(i)] = elementary(d, i - 1, i)
        assignment[f(i)] = elementary(d, i, i - 1)
        assignment[h(i)] = elementary(d, i - 1, i - 1).sub(elementary(d, i, i))
        assignment[aplus(i)] = elementary(d, i, 0)
        assignment[aminus(i)] = elementary(d, 0, i)
    return MatrixRep(f"defining(n={n})", d, assignment)


def vector_rep_quantum(n: int, q: Union[str, Fraction, int] = "symbolic") -> MatrixRep:
    """(n+1)-dimensional vector representation of the quantum algebra.

    ``q`` is either the string ``"symbolic"`` or an exact rational different
    from 0 and +/-1.  The construction is validated against the full quantum
    Chevalley relation set before the representation is returned; a failure
    is a hard error.
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    q_value: Optional[Fraction]
    if isinstance(q, str) and q == "symbolic":
        q_value = None
    else:
        q_value = Fraction(q)
        if q_value in (0, 1, -1):
            raise RepresentationError("numeric q must differ from 0 and +/-1")
    d = n + 1
    if q_value is None:
        qs = Scalar.monomial("q", 1, QIDX)
        qbs = Scalar.monomial("q", -1, QIDX)
    else:
        qs = Scalar.const(q_value, QIDX)
        qbs = Scalar.const(1 / q_value, QIDX)
    one = Scalar.one(QIDX)
    assignment: Dict[GenSymbol, Matrix] = {}
    for i in range(1, n + 1):
        assignment[e(i)] = elementary(d, i - 1, i)
        assignment[f(i)] = elementary(d, i, i - 1)
        kdiag = [one] * d
        kdiag[i - 1] = qs
        kdiag[i] = qbs
        kbdiag = [one] * d
        kbdiag[i - 1] = qbs
        kbdiag[i] = qs
        assignment[k(i)] = Matrix.diag(kdiag)
        assignment[kb(i)] = Matrix.diag(kbdiag)
    mode = "symbolic" if q_value is None else str(q_value)
    rep = MatrixRep(f"vector(n={n},q={mode})", d, assignment, q_value=q_value)
    _validate_quantum_vector(rep, n)
    return rep


def _validate_quantum_vector(rep: MatrixRep, n: int) -> None:
    from .presentations import quantum_chevalley

    ev = WordEvaluator(rep)
    for rid, poly in quantum_chevalley(n).relations:
        if not ev.eval_poly(poly).is_zero():
            raise RepresentationError(
                f"vector representation violates {rid}; construction bug")


def pullback_rep(genmap: GenMap, rep: MatrixRep) -> MatrixRep:
    """Representation of the map's source alphabet: each symbol evaluates its image."""
    missing = [s for s in genmap.target.symbols if s not in rep.assignment]
    if missing:
        raise RepresentationError(
            f"representation {rep.rep_id} does not cover {[s.text() for s in missing]}")
    ev = WordEvaluator(rep)
    assignment = {s: ev.eval_poly(img) for s, img in genmap.images.items()}
    return MatrixRep(f"pullback({genmap.name},{rep.rep_id})", rep.dim,
                     assignment, rep.indets, rep.q_value)


def merge_reps(first: MatrixRep, second: MatrixRep, rep_id: Optional[str] = None) -> MatrixRep:
    """Union of two assignments over the same space (shared symbols must agree)."""
    if first.dim != second.dim or first.q_value != second.q_value:
        raise RepresentationError("cannot merge representations on different spaces")
    assignment = dict(first.assignment)
    for s, m in second.assignment.items():
        if s in assignment and assignment[s] != m:
            raise RepresentationError(f"conflicting matrices for {s.text()}")
        assignment[s] = m
    return MatrixRep(rep_id or f"merge({first.rep_id},{second.rep_id})",
                     first.dim, assignment, first.indets, first.q_value)


def tensor_square_rep(rep: MatrixRep, cop: CoproductMap) -> MatrixRep:
    """Kronecker evaluation of each generator's coproduct image (dimension d**2)."""
    missing = [s for s in cop.algebra.symbols if s not in rep.assignment]
    if missing:
        raise RepresentationError(
            f"representation {rep.rep_id} does not cover {[s.text() for s in missing]}")
    ev = WordEvaluator(rep)
    d2 = rep.dim * rep.dim
    assignment: Dict[GenSymbol, Matrix] = {}
    for sym, timage in cop.images.items():
        acc = Matrix.zero(d2, rep.indets)
        for (wl, wr), coeff in timage.terms.items():
            block = ev.word_matrix(wl).kron(ev.word_matrix(wr))
            acc = acc.add(block.scale(_lower_coeff(rep, coeff)))
        assignment[sym] = acc
    return MatrixRep(f"tensor-square({rep.rep_id})", d2, assignment,
                     rep.indets, rep.q_value)
