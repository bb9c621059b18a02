"""Recursive-descent parser for algebra-element expressions.

Grammar (whitespace insignificant)::

    expr       := '-'? term (('+'|'-') term)*
    term       := scalar factor* | factor+          (juxtaposition = product)
    factor     := gen | '(' expr ')' | '[' expr ',' expr ']' ('_' scalarAtom)?
    gen        := ('e'|'f'|'h'|'k'|'kb'|'L'|'Lb') INT | 'a' INT ('+'|'-')
    scalar     := scalarAtom
    scalarAtom := 'q' ('^' SIGNEDINT)? | RATIONAL | '(' scalarExpr ')'
    scalarExpr := '-'? scalarTerm (('+'|'-') scalarTerm)*
    scalarTerm := scalarAtom (('*'|'/') scalarAtom)*
    RATIONAL   := INT ('/' INT)?

An unsubscripted bracket is the plain commutator.  A bare scalar is accepted
as a term so that the canonical text of the unit element ("1") re-parses.
Leading '-' is accepted so that every canonical polynomial text re-parses.

Unknown symbols are rejected with position information; known symbol shapes
whose index exceeds the session rank, or whose kind is absent from the
session alphabet, raise the dedicated errors below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .freealg import (
    FreeAlgebra, GenKind, GenSymbol, NCPoly, bracket,
)
from .scalars import Scalar

__all__ = [
    "ParseError", "SymbolNotInAlphabetError", "IndexOutOfRangeError",
    "parse_expr", "lower", "parse_to_poly", "scan_max_index",
    "GenNode", "ScalarNode", "SumNode", "DiffNode", "ProdNode", "BracketNode",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, expected: str = ""):
        self.pos = pos
        self.expected = expected
        detail = f"{message} at position {pos}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class SymbolNotInAlphabetError(ParseError):
    pass


class IndexOutOfRangeError(ParseError):
    pass


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

_GEN_RE = re.compile(r"(kb|Lb|[efhkL])(\d+)|a(\d+)([+-])")
_INT_RE = re.compile(r"\d+")
_PUNCT = set("+-*/()[],_^")


@dataclass(frozen=True)
class Token:
    kind: str  # "gen" | "q" | "int" | punctuation char | "end"
    pos: int
    symbol: Optional[GenSymbol] = None
    value: int = 0

    def describe(self) -> str:
        if self.kind == "gen":
            return self.symbol.text()
        if self.kind == "int":
            return str(self.value)
        if self.kind == "end":
            return "end of input"
        return repr(self.kind)


_KIND_BY_PREFIX = {
    "e": GenKind.E, "f": GenKind.F, "h": GenKind.H, "k": GenKind.K,
    "kb": GenKind.KBAR, "L": GenKind.L, "Lb": GenKind.LBAR,
}


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _GEN_RE.match(text, i)
        if m:
            if m.group(3) is not None:
                idx = int(m.group(3))
                kind = GenKind.APLUS if m.group(4) == "+" else GenKind.AMINUS
                tokens.append(Token("gen", i, GenSymbol(kind, idx)))
            else:
                kind = _KIND_BY_PREFIX[m.group(1)]
                tokens.append(Token("gen", i, GenSymbol(kind, int(m.group(2)))))
            i = m.end()
            continue
        if ch == "q" and (i + 1 == length or not text[i + 1].isalnum()):
            tokens.append(Token("q", i))
            i += 1
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(Token("int", i, value=int(m.group())))
            i = m.end()
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, i))
            i += 1
            continue
        raise ParseError(f"unknown symbol {text[i:i + 8]!r}", i)
    tokens.append(Token("end", length))
    return tokens


def scan_max_index(text: str) -> int:
    """Largest generator index in the text (used to infer a session rank)."""
    best = 0
    for tok in tokenize(text):
        if tok.kind == "gen":
            best = max(best, tok.symbol.index)
    return best


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenNode:
    symbol: GenSymbol
    pos: int


@dataclass(frozen=True)
class ScalarNode:
    value: Scalar


@dataclass(frozen=True)
class SumNode:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class DiffNode:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class ProdNode:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class BracketNode:
    left: "Node"
    right: "Node"
    x: Optional[Scalar]


Node = Union[GenNode, ScalarNode, SumNode, DiffNode, ProdNode, BracketNode]


class _Parser:
    def __init__(self, text: str, algebra: FreeAlgebra):
        self.text = text
        self.algebra = algebra
        self.tokens = tokenize(text)
        self.i = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.describe()}", tok.pos, expected=kind)
        return self.advance()

    # -- grammar -------------------------------------------------------------

    def parse(self) -> Node:
        node = self.parse_expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.describe()}", tok.pos,
                             expected="end of input")
        return node

    def parse_expr(self) -> Node:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        node = self.parse_term()
        if negate:
            node = DiffNode(ScalarNode(Scalar.zero(self.algebra.indets)), node)
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            node = SumNode(node, rhs) if op == "+" else DiffNode(node, rhs)
        return node

    _FACTOR_START = ("gen", "(", "[")

    def parse_term(self) -> Node:
        node: Optional[Node] = None
        saved = self.i
        try:
            scalar = self.parse_scalar_atom()
        except ParseError:
            self.i = saved
        else:
            node = ScalarNode(scalar)
        factors: List[Node] = []
        while self.peek().kind in self._FACTOR_START:
            factors.append(self.parse_factor())
        if node is None and not factors:
            tok = self.peek()
            raise ParseError(f"unexpected {tok.describe()}", tok.pos,
                             expected="generator, scalar, '(' or '['")
        for fac in factors:
            node = fac if node is None else ProdNode(node, fac)
        return node

    def parse_factor(self) -> Node:
        tok = self.peek()
        if tok.kind == "gen":
            self.advance()
            self._check_symbol(tok)
            return GenNode(tok.symbol, tok.pos)
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok.kind == "[":
            self.advance()
            left = self.parse_expr()
            self.expect(",")
            right = self.parse_expr()
            self.expect("]")
            x: Optional[Scalar] = None
            if self.peek().kind == "_":
                self.advance()
                x = self.parse_scalar_atom()
            return BracketNode(left, right, x)
        raise ParseError(f"unexpected {tok.describe()}", tok.pos,
                         expected="generator, '(' or '['")

    def _check_symbol(self, tok: Token) -> None:
        sym = tok.symbol
        if sym in self.algebra:
            return
        kinds = {s.kind for s in self.algebra.symbols}
        if sym.kind in kinds:
            max_index = max(s.index for s in self.algebra.symbols
                            if s.kind == sym.kind)
            raise IndexOutOfRangeError(
                f"index of {sym.text()} out of range (session allows 1..{max_index})",
                tok.pos)
        raise SymbolNotInAlphabetError(
            f"{sym.text()} not in source alphabet ({self.algebra.name})", tok.pos)

    # -- scalar sub-grammar -----------------------------------------------

    def parse_scalar_atom(self) -> Scalar:
        tok = self.peek()
        if tok.kind == "q":
            if "q" not in self.algebra.indets:
                raise ParseError("q is not a scalar of this session", tok.pos)
            self.advance()
            exponent = 1
            if self.peek().kind == "^":
                self.advance()
                exponent = self._signed_int()
            return Scalar.monomial("q", exponent, self.algebra.indets)
        if tok.kind == "int":
            self.advance()
            value = Fraction(tok.value)
            if self.peek().kind == "/" and self.tokens[self.i + 1].kind == "int":
                self.advance()
                den_tok = self.advance()
                if den_tok.value == 0:
                    raise ParseError("zero denominator", den_tok.pos)
                value = Fraction(tok.value, den_tok.value)
            return Scalar.const(value, self.algebra.indets)
        if tok.kind == "(":
            self.advance()
            value = self.parse_scalar_expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok.describe()}", tok.pos,
                         expected="scalar")

    def _signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        elif self.peek().kind == "+":
            self.advance()
        tok = self.expect("int")
        return sign * tok.value

    def parse_scalar_expr(self) -> Scalar:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        acc = self.parse_scalar_term()
        if negate:
            acc = -acc
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_scalar_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def parse_scalar_term(self) -> Scalar:
        acc = self.parse_scalar_atom()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            rhs = self.parse_scalar_atom()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero scalar", self.peek().pos)
                acc = acc / rhs
        return acc


def parse_expr(text: str, algebra: FreeAlgebra) -> Node:
    """Parse to an AST, validating symbols against the session alphabet."""
    return _Parser(text, algebra).parse()


def lower(node: Node, algebra: FreeAlgebra) -> NCPoly:
    """Total lowering of a well-formed AST to a canonical NCPoly."""
    if isinstance(node, GenNode):
        return algebra.sym(node.symbol)
    if isinstance(node, ScalarNode):
        return algebra.scalar(node.value)
    if isinstance(node, SumNode):
        return lower(node.left, algebra) + lower(node.right, algebra)
    if isinstance(node, DiffNode):
        return lower(node.left, algebra) - lower(node.right, algebra)
    if isinstance(node, ProdNode):
        return lower(node.left, algebra) * lower(node.right, algebra)
    if isinstance(node, BracketNode):
        return bracket(lower(node.left, algebra), lower(node.right, algebra),
                       node.x)
    raise TypeError(f"unknown AST node {node!r}")


def parse_to_poly(text: str, algebra: FreeAlgebra) -> NCPoly:
    return lower(parse_expr(text, algebra), algebra)
