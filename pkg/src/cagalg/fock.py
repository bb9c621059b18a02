"""Order-p occupation-number modules for the classical CAG relations.

The model realizes basis states as monomials x_0^{r_0} ... x_n^{r_n} of total
degree p, with e_{AB} acting as x_A d/dx_B.  The creation generator a_i^+
then acts as x_i d/dx_0 (coefficient r_0, one quantum moved from slot 0 to
slot i) and the annihilation generator a_i^- as x_0 d/dx_i.  Only this
single-row family of modules is constructed; reports say so.

Coefficients are integers (no inner-product normalization): the relation
sets are representation statements, not unitarity statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Dict, List, Mapping, Tuple

from .freealg import GenKind, GenSymbol, aminus, aplus
from .matrep import Matrix, MatrixRep, WordEvaluator
from .morphisms import apply_genmap, chevalley_from_cag_classical
from .scalars import Scalar

__all__ = ["FockState", "FockModule", "fock_module", "apply_cag",
           "fock_matrix_rep", "fock_dump"]

FAMILY_NOTE = "single-row (order-p) occupation modules only"


@dataclass(frozen=True)
class FockState:
    """Occupation vector (r_0, ..., r_n); the module fixes sum r_A = p."""

    occ: Tuple[int, ...]

    def __post_init__(self):
        if any(r < 0 for r in self.occ):
            raise ValueError("occupation numbers must be nonnegative")

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.occ) + ")"


@dataclass(frozen=True)
class FockModule:
    n: int
    p: int
    basis: Tuple[FockState, ...]
    index: Mapping[FockState, int]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vacuum(self) -> FockState:
        return self.basis[0]


def _compositions(slots: int, total: int) -> List[Tuple[int, ...]]:
    if slots == 1:
        return [(total,)]
    return [(first,) + rest
            for first in range(total, -1, -1)
            for rest in _compositions(slots - 1, total - first)]


def _states(n: int, p: int) -> List[Tuple[int, ...]]:
    return _compositions(n + 1, p)


def fock_module(n: int, p: int) -> FockModule:
    """Basis in descending lexicographic occupation order: r_0 first, then
    earlier slots before later ones; the vacuum (p, 0, ..., 0) leads and the
    order-1 module lines up with the defining representation."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    if p < 0:
        raise ValueError("order must be nonnegative")
    basis = tuple(FockState(occ) for occ in _states(n, p))
    assert len(basis) == comb(n + p, p)
    index = MappingProxyType({s: i for i, s in enumerate(basis)})
    return FockModule(n, p, basis, index)


def apply_cag(mod: FockModule, gen: GenSymbol, state: FockState):
    """Action of one CAG on a basis state: at most one (state, coefficient) pair.

    This is the differential-operator oracle itself; the matrix assembly below
    is checked against it.
    """
    if state not in mod.index:
        raise ValueError(f"state {state} is not in the order-{mod.p} module")
    if gen.kind not in (GenKind.APLUS, GenKind.AMINUS) or not 1 <= gen.index <= mod.n:
        raise ValueError(f"{gen.text()} is not a CAG of rank {mod.n}")
    i = gen.index
    occ = list(state.occ)
    if gen.kind is GenKind.APLUS:
        coeff = occ[0]
        if coeff == 0:
            return []
        occ[0] -= 1
        occ[i] += 1
    else:
        coeff = occ[i]
        if coeff == 0:
            return []
        occ[i] -= 1
        occ[0] += 1
    return [(FockState(tuple(occ)), Fraction(coeff))]


def fock_matrix_rep(mod: FockModule) -> MatrixRep:
    """MatrixRep over rational scalars; assigns the CAG alphabet and, through
    the classical conversion map, the classical Chevalley alphabet."""
    d = mod.dim
    zero = Scalar.zero(("q",))
    assignment: Dict[GenSymbol, Matrix] = {}
    for i in range(1, mod.n + 1):
        for gen in (aplus(i), aminus(i)):
            cols: Dict[int, Tuple[int, Scalar]] = {}
            for c, state in enumerate(mod.basis):
                for target, coeff in apply_cag(mod, gen, state):
                    cols[c] = (mod.index[target], Scalar.const(coeff, ("q",)))
            rows = [[zero] * d for _ in range(d)]
            for c, (r, val) in cols.items():
                rows[r][c] = val
            assignment[gen] = Matrix.from_rows(rows)
    cag_rep = MatrixRep(f"fock(n={mod.n},p={mod.p})", d, assignment)
    chev = chevalley_from_cag_classical(mod.n)
    ev = WordEvaluator(cag_rep)
    full = dict(assignment)
    for sym, image in chev.images.items():
        full[sym] = ev.eval_poly(image)
    return MatrixRep(cag_rep.rep_id, d, full)


def fock_dump(mod: FockModule, include_matrices: bool = False) -> dict:
    """JSON-able summary; sparse matrices as (row, col, value) triples."""
    out = {
        "n": mod.n,
        "p": mod.p,
        "dimension": mod.dim,
        "vacuum": list(mod.vacuum.occ),
        "family": FAMILY_NOTE,
        "basis": [list(s.occ) for s in mod.basis],
    }
    if include_matrices:
        rep = fock_matrix_rep(mod)
        matrices = {}
        for sym in sorted(rep.assignment):
            mat = rep.assignment[sym]
            triples = [[r, c, str(mat.entry(r, c))]
                       for r in range(mat.dim) for c in range(mat.dim)
                       if not mat.entry(r, c).is_zero()]
            matrices[sym.text()] = triples
        out["matrices"] = matrices
    return out
