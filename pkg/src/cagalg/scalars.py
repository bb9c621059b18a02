"""Exact coefficient arithmetic.

Rationals are ``fractions.Fraction`` (re-exported as :data:`Rational`).
:class:`Scalar` implements the fraction field of multivariate
integer-coefficient polynomials over a fixed, ordered tuple of named
indeterminates.  Values are kept in a unique canonical form: numerator and
denominator coprime as polynomials, denominator's leading coefficient
positive under graded-lexicographic monomial order.  Structural equality
therefore coincides with mathematical equality, and ``==`` / ``is_zero`` are
exact zero tests.

All values are immutable; sharing across threads is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Mapping, Union

Rational = Fraction

#: monomial = exponent tuple aligned with the indeterminate tuple
Monomial = tuple
PolyDict = dict

ScalarLike = Union["Scalar", int, Fraction]

__all__ = [
    "Rational",
    "Scalar",
    "ScalarError",
    "ScalarDivisionError",
    "MissingIndeterminateError",
    "PoleError",
    "denominator_lcm",
]


class ScalarError(ArithmeticError):
    """Base class for scalar arithmetic failures."""


class ScalarDivisionError(ScalarError, ZeroDivisionError):
    """Division by the zero scalar."""


class MissingIndeterminateError(ScalarError, LookupError):
    """Evaluation point omits an indeterminate occurring in the value."""


class PoleError(ScalarError, ZeroDivisionError):
    """Evaluation point makes the denominator vanish."""


# ---------------------------------------------------------------------------
# integer-coefficient polynomial dictionaries (module-private)
# ---------------------------------------------------------------------------


def _glex(m: Monomial):
    return (sum(m), m)


def _padd(a: PolyDict, b: PolyDict) -> PolyDict:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pneg(a: PolyDict) -> PolyDict:
    return {m: -c for m, c in a.items()}


def _psub(a: PolyDict, b: PolyDict) -> PolyDict:
    return _padd(a, _pneg(b))


def _pmul(a: PolyDict, b: PolyDict) -> PolyDict:
    if not a or not b:
        return {}
    out: PolyDict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _plead(a: PolyDict) -> Monomial:
    return max(a, key=_glex)


def _pabs(a: PolyDict) -> PolyDict:
    if a and a[_plead(a)] < 0:
        return _pneg(a)
    return dict(a)


def _picontent(a: PolyDict) -> int:
    g = 0
    for c in a.values():
        g = _igcd(g, abs(c))
        if g == 1:
            break
    return g


def _is_unit_poly(a: PolyDict) -> bool:
    if len(a) != 1:
        return False
    (m, c), = a.items()
    return c == 1 and not any(m)


def _degv(a: PolyDict, v: int) -> int:
    return max(m[v] for m in a)


def _first_var(a: PolyDict, b: PolyDict, arity: int):
    for v in range(arity):
        if any(m[v] for m in a) or any(m[v] for m in b):
            return v
    return None


def _zero_at(m: Monomial, v: int) -> Monomial:
    return m[:v] + (0,) + m[v + 1:]


def _pgcd_with_monomial(a: PolyDict, b: PolyDict) -> PolyDict:
    mono, other = (a, b) if len(a) == 1 else (b, a)
    (mexp, mc), = mono.items()
    ic = _igcd(abs(mc), _picontent(other))
    mins = list(mexp)
    for m in other:
        mins = [min(x, y) for x, y in zip(mins, m)]
        if not any(mins):
            break
    return {tuple(mins): ic}


def _coeffs_by_deg(a: PolyDict, v: int) -> dict:
    out: dict = {}
    for m, c in a.items():
        out.setdefault(m[v], {})[_zero_at(m, v)] = c
    return out


def _content_pp(a: PolyDict, v: int):
    cont: PolyDict = {}
    for sub in _coeffs_by_deg(a, v).values():
        cont = _pgcd(cont, sub)
        if _is_unit_poly(cont):
            return cont, dict(a)
    return cont, _pdivexact(a, cont)


def _prem(a: PolyDict, v: int, b: PolyDict) -> PolyDict:
    """Pseudo-remainder of ``a`` by ``b`` with respect to variable ``v``."""
    db = _degv(b, v)
    lb = {_zero_at(m, v): c for m, c in b.items() if m[v] == db}
    r = a
    while r:
        dr = _degv(r, v)
        if dr < db:
            break
        shifted = {m[:v] + (dr - db,) + m[v + 1:]: c
                   for m, c in r.items() if m[v] == dr}
        r = _psub(_pmul(lb, r), _pmul(shifted, b))
    return r


def _pgcd(a: PolyDict, b: PolyDict) -> PolyDict:
    """GCD in Z[indets], integer content included, positive leading coeff."""
    if not a and not b:
        return {}
    if not a:
        return _pabs(b)
    if not b:
        return _pabs(a)
    if len(a) == 1 or len(b) == 1:
        return _pgcd_with_monomial(a, b)
    arity = len(next(iter(a)))
    v = _first_var(a, b, arity)
    if v is None:
        (_, ca), = a.items()
        (_, cb), = b.items()
        return {(0,) * arity: _igcd(abs(ca), abs(cb))}
    if _degv(a, v) == 0:
        ctb, _ = _content_pp(b, v)
        return _pgcd(a, ctb)
    if _degv(b, v) == 0:
        cta, _ = _content_pp(a, v)
        return _pgcd(cta, b)
    ca, pa = _content_pp(a, v)
    cb, pb = _content_pp(b, v)
    c = _pgcd(ca, cb)
    big, small = (pa, pb) if _degv(pa, v) >= _degv(pb, v) else (pb, pa)
    while small:
        r = _prem(big, v, small)
        big, small = small, (_content_pp(r, v)[1] if r else {})
    return _pabs(_pmul(c, _content_pp(big, v)[1]))


class _InexactDivision(ScalarError):
    pass


def _pdivexact(a: PolyDict, b: PolyDict) -> PolyDict:
    """Exact polynomial division; raises if ``b`` does not divide ``a``."""
    if not b:
        raise ScalarDivisionError("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        (mexp, mc), = b.items()
        out: PolyDict = {}
        for m, c in a.items():
            if c % mc:
                raise _InexactDivision
            nm = tuple(x - y for x, y in zip(m, mexp))
            if any(e < 0 for e in nm):
                raise _InexactDivision
            out[nm] = c // mc
        return out
    lb = _plead(b)
    cb = b[lb]
    out = {}
    r = dict(a)
    while r:
        lr = _plead(r)
        qm = tuple(x - y for x, y in zip(lr, lb))
        if any(e < 0 for e in qm):
            raise _InexactDivision
        if r[lr] % cb:
            raise _InexactDivision
        qc = r[lr] // cb
        out[qm] = qc
        r = _psub(r, _pmul({qm: qc}, b))
    return out


def _peval(a: PolyDict, values: tuple) -> Fraction:
    acc = Fraction(0)
    for m, c in a.items():
        term = Fraction(c)
        for x, e in zip(values, m):
            if e:
                term *= x ** e
        acc += term
    return acc


def _poly_text(a: PolyDict, indets: tuple) -> str:
    if not a:
        return "0"
    pieces = []
    for m in sorted(a, key=_glex, reverse=True):
        c = a[m]
        factors = []
        for name, e in zip(indets, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append(("- " if c < 0 else "+ ") + text)
    head = pieces[0]
    head = "-" + head[2:] if head.startswith("- ") else head[2:]
    return " ".join([head] + pieces[1:])


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------


class Scalar:
    """Canonical multivariate rational function with integer coefficients."""

    __slots__ = ("indets", "num", "den")

    def __init__(self, indets: Iterable[str], num: PolyDict, den: PolyDict,
                 *, _canonical: bool = False):
        indets = tuple(indets)
        if not den:
            raise ScalarDivisionError("zero denominator")
        if not _canonical:
            if not num:
                den = {(0,) * len(indets): 1}
            else:
                g = _pgcd(num, den)
                if not _is_unit_poly(g):
                    num = _pdivexact(num, g)
                    den = _pdivexact(den, g)
                if den[_plead(den)] < 0:
                    num = _pneg(num)
                    den = _pneg(den)
        object.__setattr__(self, "indets", indets)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, value: Union[int, Fraction], indets: Iterable[str] = ("q",)) -> "Scalar":
        indets = tuple(indets)
        fr = Fraction(value)
        unit = (0,) * len(indets)
        num = {unit: fr.numerator} if fr.numerator else {}
        return cls(indets, num, {unit: fr.denominator}, _canonical=True)

    @classmethod
    def zero(cls, indets: Iterable[str] = ("q",)) -> "Scalar":
        return cls.const(0, indets)

    @classmethod
    def one(cls, indets: Iterable[str] = ("q",)) -> "Scalar":
        return cls.const(1, indets)

    @classmethod
    def monomial(cls, name: str, exponent: int = 1,
                 indets: Iterable[str] = ("q",)) -> "Scalar":
        """Laurent monomial ``name**exponent`` (negative exponents allowed)."""
        indets = tuple(indets)
        if name not in indets:
            raise MissingIndeterminateError(name)
        pos = indets.index(name)
        unit = (0,) * len(indets)
        mono = unit[:pos] + (abs(exponent),) + unit[pos + 1:]
        if exponent >= 0:
            return cls(indets, {mono: 1}, {unit: 1}, _canonical=True)
        return cls(indets, {unit: 1}, {mono: 1}, _canonical=True)

    @classmethod
    def variable(cls, name: str, indets: Iterable[str] = ("q",)) -> "Scalar":
        return cls.monomial(name, 1, indets)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return _is_unit_poly(self.num) and _is_unit_poly(self.den)

    def is_constant(self) -> bool:
        return (not self.num or not any(any(m) for m in self.num)) and \
            not any(any(m) for m in self.den)

    def as_fraction(self) -> Fraction:
        """Value of a constant scalar; raises for genuine rational functions."""
        if not self.is_constant():
            raise ScalarError("scalar is not constant")
        num = next(iter(self.num.values())) if self.num else 0
        return Fraction(num, next(iter(self.den.values())))

    def lead_sign(self) -> int:
        """Sign of the numerator's graded-lex leading coefficient (0 for zero)."""
        if not self.num:
            return 0
        return 1 if self.num[_plead(self.num)] > 0 else -1

    def is_monic_monomial(self) -> bool:
        """True for plain power products with coefficient 1 over denominator 1."""
        if len(self.num) != 1 or not _is_unit_poly(self.den):
            return False
        (_, c), = self.num.items()
        return c == 1

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            if other.indets != self.indets:
                raise ScalarError(
                    f"indeterminate context mismatch: {other.indets} vs {self.indets}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(other, self.indets)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if _is_unit_poly(self.den) and _is_unit_poly(other.den):
            return Scalar(self.indets, _padd(self.num, other.num),
                          dict(self.den), _canonical=True)
        g = _pgcd(self.den, other.den)
        if _is_unit_poly(g):
            num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
            den = _pmul(self.den, other.den)
            if not num:
                return Scalar.zero(self.indets)
            return Scalar(self.indets, num, den, _canonical=True)
        d1 = _pdivexact(self.den, g)
        d2 = _pdivexact(other.den, g)
        num = _padd(_pmul(self.num, d2), _pmul(other.num, d1))
        den = _pmul(self.den, d2)
        return Scalar(self.indets, num, den)

    def __radd__(self, other: ScalarLike) -> "Scalar":
        return self.__add__(other)

    def __neg__(self) -> "Scalar":
        return Scalar(self.indets, _pneg(self.num), dict(self.den), _canonical=True)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return (self.__neg__()).__add__(other)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Scalar.zero(self.indets)
        g1 = _pgcd(self.num, other.den)
        g2 = _pgcd(other.num, self.den)
        n1 = self.num if _is_unit_poly(g1) else _pdivexact(self.num, g1)
        d2 = other.den if _is_unit_poly(g1) else _pdivexact(other.den, g1)
        n2 = other.num if _is_unit_poly(g2) else _pdivexact(other.num, g2)
        d1 = self.den if _is_unit_poly(g2) else _pdivexact(self.den, g2)
        return Scalar(self.indets, _pmul(n1, n2), _pmul(d1, d2), _canonical=True)

    def __rmul__(self, other: ScalarLike) -> "Scalar":
        return self.__mul__(other)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ScalarDivisionError("inverse of zero scalar")
        num, den = dict(self.den), dict(self.num)
        if den[_plead(den)] < 0:
            num, den = _pneg(num), _pneg(den)
        return Scalar(self.indets, num, den, _canonical=True)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ScalarDivisionError("division by zero scalar")
        return self.__mul__(other.inverse())

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return self.inverse().__mul__(other)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = Scalar.one(self.indets)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # -- equality / hashing --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other, self.indets)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.indets == other.indets and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.indets, frozenset(self.num.items()),
                     frozenset(self.den.items())))

    # -- evaluation / substitution -------------------------------------------

    def _occurring(self) -> tuple:
        used = [False] * len(self.indets)
        for poly in (self.num, self.den):
            for m in poly:
                for i, e in enumerate(m):
                    if e:
                        used[i] = True
        return tuple(name for name, u in zip(self.indets, used) if u)

    def eval(self, assignment: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Exact value at a rational point covering all occurring indeterminates."""
        for name in self._occurring():
            if name not in assignment:
                raise MissingIndeterminateError(name)
        values = tuple(Fraction(assignment.get(name, 0)) for name in self.indets)
        den = _peval(self.den, values)
        if den == 0:
            raise PoleError(f"denominator vanishes at {dict(assignment)}")
        return _peval(self.num, values) / den

    def subs(self, mapping: Mapping[str, "Scalar"]) -> "Scalar":
        """Substitute scalars for indeterminates (field composition)."""
        values = []
        for name in self.indets:
            v = mapping.get(name)
            values.append(v if v is not None else Scalar.variable(name, self.indets))
        def poly_val(p: PolyDict) -> Scalar:
            acc = Scalar.zero(self.indets)
            for m, c in p.items():
                term = Scalar.const(c, self.indets)
                for val, e in zip(values, m):
                    if e:
                        term = term * val ** e
                acc = acc + term
            return acc
        return poly_val(self.num) / poly_val(self.den)

    def bar(self, name: str = "q") -> "Scalar":
        """Image under ``name -> 1/name``."""
        return self.subs({name: Scalar.monomial(name, -1, self.indets)})

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        num_text = _poly_text(self.num, self.indets)
        if _is_unit_poly(self.den):
            return num_text
        den_text = _poly_text(self.den, self.indets)
        if len(self.num) <= 1 and len(self.den) == 1:
            return f"{num_text}/{den_text}"
        return f"({num_text})/({den_text})"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def denominator_lcm(values, indets=("q",)) -> Scalar:
    """Polynomial lcm of the denominators of the given scalars (as a Scalar)."""
    indets = tuple(indets)
    lcm: PolyDict = {(0,) * len(indets): 1}
    for v in values:
        g = _pgcd(lcm, v.den)
        lcm = _pmul(lcm, _pdivexact(v.den, g))
    if lcm[_plead(lcm)] < 0:
        lcm = _pneg(lcm)
    return Scalar(indets, lcm, {(0,) * len(indets): 1}, _canonical=True)
