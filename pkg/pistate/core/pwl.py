"""
Cellwise log-space representation of product functions and the deciders built on it.

On a cell, every positive coordinate is replaced by ``u_i = log t_i <= 0``.
Strong conjunction becomes ``+``, the lattice operations become ``min`` and
``max`` and implication becomes ``min(0, g - f)``. A product function restricted to a cell is either
identically zero or ``exp`` of a min-of-max of homogeneous integer linear
forms (a ``MinMaxTerm``).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .cells import CellIndex, cell_of_point, enumerate_sigma, interior_point
from .exceptions import ArityError, CombinationError, LoweringError
from .formula import (
    Bot,
    Conj,
    Formula,
    Impl,
    Join,
    Meet,
    Top,
    ValueTable,
    Var,
    check_arity,
    evaluate,
    neg,
    subformulas,
)
from .lp import cone_has_strict_negative

logger = logging.getLogger(__name__)

LinForm = tuple[int, ...]


# ----------------------------------------------------------------------
# Min-max terms
# ----------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class MinMaxTerm:
    """``min`` over branches of ``max`` over the forms of the branch, on ``{u <= 0}``."""
    dim: int
    branches: tuple[tuple[LinForm, ...], ...]

    def __post_init__(self):
        if not self.branches or any(not b for b in self.branches):
            raise LoweringError("a min-max term needs non-empty branches")
        if any(len(form) != self.dim for b in self.branches for form in b):
            raise LoweringError("form length does not match the term dimension")

    def forms(self) -> Iterator[LinForm]:
        for branch in self.branches:
            yield from branch

    def value(self, u: Sequence) -> Union[Fraction, float]:
        """Value in log space at a cone point."""
        return min(max(_dot(form, u) for form in branch) for branch in self.branches)

    def monomial_value(self, positive_coords: Sequence) -> Union[Fraction, float]:
        """``exp`` of the term at ``u = log t``, computed exactly from the positive coordinates."""
        return min(max(_monomial(form, positive_coords) for form in branch) for branch in self.branches)


def _dot(form: LinForm, u: Sequence):
    return sum(c * x for c, x in zip(form, u))


def _monomial(form: LinForm, coords: Sequence):
    value = 1
    for a, t in zip(form, coords):
        if a:
            value *= t ** a
    return value


def _sub(a: LinForm, b: LinForm) -> LinForm:
    return tuple(x - y for x, y in zip(a, b))


def _at_least(a: LinForm, b: LinForm) -> bool:
    """a >= b everywhere on the cone."""
    return all(x <= y for x, y in zip(a, b))


def _prune_branch(forms, dim: int) -> tuple[LinForm, ...]:
    unique = sorted(set(forms))
    kept = [b for b in unique if not any(a != b and _at_least(a, b) for a in unique)]
    if len(kept) > 2:
        i = 0
        while i < len(kept) and len(kept) > 1:
            b = kept[i]
            others = tuple(_sub(a, b) for j, a in enumerate(kept) if j != i)
            # b is redundant when it never strictly exceeds all the others
            if not cone_has_strict_negative(others, dim):
                kept.pop(i)
            else:
                i += 1
    return tuple(kept)


def _branch_leq(x: tuple[LinForm, ...], y: tuple[LinForm, ...], dim: int) -> bool:
    """max(x) <= max(y) everywhere on the cone."""
    for a in x:
        if any(_at_least(b, a) for b in y):
            continue
        if cone_has_strict_negative(tuple(_sub(b, a) for b in y), dim):
            return False
    return True


def _make_term(branches, dim: int) -> MinMaxTerm:
    candidates = sorted({_prune_branch(b, dim) for b in branches}, key=lambda b: (len(b), b))
    kept: list[tuple[LinForm, ...]] = []
    for y in candidates:
        if any(_branch_leq(x, y, dim) for x in kept):
            continue
        kept = [x for x in kept if not _branch_leq(y, x, dim)]
        kept.append(y)
    return MinMaxTerm(dim, tuple(sorted(kept)))


def zero_term(dim: int) -> MinMaxTerm:
    return MinMaxTerm(dim, (((0,) * dim,),))


def unit_term(dim: int, position: int) -> MinMaxTerm:
    return MinMaxTerm(dim, ((tuple(int(j == position) for j in range(dim)),),))


def term_add(s: MinMaxTerm, t: MinMaxTerm) -> MinMaxTerm:
    branches = [
        tuple(tuple(p + q for p, q in zip(a, b)) for a in x for b in y)
        for x in s.branches
        for y in t.branches
    ]
    return _make_term(branches, s.dim)


def term_min(s: MinMaxTerm, t: MinMaxTerm) -> MinMaxTerm:
    return _make_term(s.branches + t.branches, s.dim)


def term_max(s: MinMaxTerm, t: MinMaxTerm) -> MinMaxTerm:
    return _make_term([x + y for x in s.branches for y in t.branches], s.dim)


def term_negate(t: MinMaxTerm) -> MinMaxTerm:
    """-min_X max X = max_X min_{a in X} (-a), folded one branch at a time."""
    result: Optional[MinMaxTerm] = None
    for branch in t.branches:
        piece = _make_term([(tuple(-c for c in a),) for a in branch], t.dim)
        result = piece if result is None else term_max(result, piece)
    return result


# ----------------------------------------------------------------------
# Cellwise functions
# ----------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class CellFunc:
    """Restriction of a product function to one cell: ZERO when ``term`` is None."""
    term: Optional[MinMaxTerm] = None

    @property
    def is_zero(self) -> bool:
        return self.term is None

    def __str__(self) -> str:
        if self.term is None:
            return "ZERO"
        return "PWL(" + " min ".join(
            "max(" + ", ".join(str(list(f)) for f in branch) + ")" for branch in self.term.branches
        ) + ")"


ZERO = CellFunc()


def pwl(term: MinMaxTerm) -> CellFunc:
    return CellFunc(term)


@dataclass(frozen=True)
class CellwiseFunc:
    arity: int
    cells: dict[CellIndex, CellFunc] = field(default_factory=dict)

    def __getitem__(self, cell: CellIndex) -> CellFunc:
        return self.cells[cell]

    def items(self):
        return self.cells.items()

    @property
    def is_zero(self) -> bool:
        return all(cf.is_zero for cf in self.cells.values())


@lru_cache(maxsize=500_000)
def lower_on_cell(f: Formula, cell: CellIndex) -> CellFunc:
    """Structural lowering of ``f`` restricted to one cell."""
    dim = len(cell.positive)
    match f:
        case Bot():
            return ZERO
        case Top():
            return pwl(zero_term(dim))
        case Var(index):
            if index >= cell.arity:
                raise ArityError(f"x{index} does not exist in a cell of arity {cell.arity}")
            if cell.eps[index] == 1:
                return ZERO
            return pwl(unit_term(dim, cell.positive.index(index)))
        case Conj(left, right):
            lf, rf = lower_on_cell(left, cell), lower_on_cell(right, cell)
            if lf.is_zero or rf.is_zero:
                return ZERO
            return pwl(term_add(lf.term, rf.term))
        case Meet(left, right):
            lf, rf = lower_on_cell(left, cell), lower_on_cell(right, cell)
            if lf.is_zero or rf.is_zero:
                return ZERO
            return pwl(term_min(lf.term, rf.term))
        case Join(left, right):
            lf, rf = lower_on_cell(left, cell), lower_on_cell(right, cell)
            if lf.is_zero:
                return rf
            if rf.is_zero:
                return lf
            return pwl(term_max(lf.term, rf.term))
        case Impl(left, right):
            lf = lower_on_cell(left, cell)
            if lf.is_zero:
                return pwl(zero_term(dim))
            rf = lower_on_cell(right, cell)
            if rf.is_zero:
                return ZERO
            difference = term_add(rf.term, term_negate(lf.term))
            return pwl(term_min(zero_term(dim), difference))
    raise TypeError(f"not a product formula: {f!r}")


def lower(f: Formula, n: int) -> CellwiseFunc:
    """
    Per-cell representation of ``f`` as a function on [0,1]^n.

    Raises:
        ArityError: if ``f`` mentions a variable beyond x(n-1) or n < 1.
        LoweringError: if a coefficient exceeds the number of variable leaves.
    """
    if n < 1:
        raise ArityError(f"arity must be at least 1, got {n}")
    check_arity(f, n)
    bound = sum(1 for node in subformulas(f) if isinstance(node, Var))
    cells = {}
    for cell in enumerate_sigma(n):
        cf = lower_on_cell(f, cell)
        if cf.term is not None and any(abs(c) > bound for form in cf.term.forms() for c in form):
            raise LoweringError(f"coefficient above {bound} on cell {cell}")
        cells[cell] = cf
    return CellwiseFunc(n, cells)


def eval_cellwise(F: CellwiseFunc, point: Sequence) -> Union[Fraction, float]:
    """Evaluate the representation at a point through the monomial of its active piece."""
    if len(point) != F.arity:
        raise ArityError(f"point has {len(point)} coordinates, function has arity {F.arity}")
    exact = not any(isinstance(t, float) for t in point)
    if exact:
        point = tuple(Fraction(t) for t in point)
    cell = cell_of_point(point)
    cf = F[cell]
    if cf.is_zero:
        return Fraction(0) if exact else 0.0
    value = cf.term.monomial_value([point[i] for i in cell.positive])
    return Fraction(value) if exact else float(value)


# ----------------------------------------------------------------------
# Deciders
# ----------------------------------------------------------------------
@lru_cache(maxsize=64)
def _trial_points(n: int) -> tuple[tuple[Fraction, ...], ...]:
    points = []
    for cell in enumerate_sigma(n):
        points.append(interior_point(cell))
        for level in (Fraction(1, 3), Fraction(3, 4)):
            points.append(tuple(Fraction(0) if e == 1 else level for e in cell.eps))
    return tuple(points)


@lru_cache(maxsize=64)
def _trial_table(n: int) -> ValueTable:
    return ValueTable(_trial_points(n))


def _cell_is_one(cf: CellFunc) -> bool:
    if cf.is_zero:
        return False
    return not any(cone_has_strict_negative(branch, cf.term.dim) for branch in cf.term.branches)


@lru_cache(maxsize=200_000)
def is_tautology(f: Formula, n: int) -> bool:
    """
    Whether ``f`` takes the value 1 everywhere on [0,1]^n.

    A few exact trial points are tried first; a refuting point settles the
    answer. Otherwise every cell must be PWL and no branch may be strictly
    negative somewhere on the cone, which is an exact LP question.
    """
    check_arity(f, n)
    if any(v != 1 for v in _trial_table(n)(f)):
        return False
    return all(_cell_is_one(cf) for _, cf in lower(f, n).items())


def is_zero(f: Formula, n: int) -> bool:
    """Whether ``f`` is the bottom element, decided structurally."""
    return lower(f, n).is_zero


def implies(f: Formula, g: Formula, n: int) -> bool:
    return is_tautology(Impl(f, g), n)


def is_equivalent(f: Formula, g: Formula, n: int) -> bool:
    return implies(f, g, n) and implies(g, f, n)


def is_boolean(f: Formula, n: int) -> bool:
    return is_equivalent(neg(neg(f)), f, n)


def equivalent_on_cell(f: Formula, g: Formula, cell: CellIndex) -> bool:
    """
    Whether ``f`` and ``g`` agree on the cell.

    Same answer as ``is_equivalent(f & p_eps, g & p_eps)``, computed on the
    single cell involved.
    """
    lf, lg = lower_on_cell(f, cell), lower_on_cell(g, cell)
    if lf.is_zero or lg.is_zero:
        return lf.is_zero and lg.is_zero
    return _cell_is_one(lower_on_cell(Impl(f, g), cell)) and _cell_is_one(lower_on_cell(Impl(g, f), cell))


# ----------------------------------------------------------------------
# Linear combinations of product functions
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class LinearCombination:
    terms: tuple[tuple[Fraction, Formula], ...] = ()

    def __post_init__(self):
        terms = tuple((Fraction(c), f) for c, f in self.terms)
        if any(c == 0 for c, _ in terms):
            raise CombinationError("coefficients of a linear combination must be nonzero")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, pairs) -> "LinearCombination":
        """Build from ``(coefficient, formula)`` pairs, dropping zero coefficients."""
        return cls(tuple((Fraction(c), f) for c, f in pairs if c != 0))

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        return LinearCombination(self.terms + other.terms)

    def scale(self, factor) -> "LinearCombination":
        return LinearCombination.of((factor * c, f) for c, f in self.terms)

    def __rmul__(self, factor) -> "LinearCombination":
        return self.scale(factor)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def value_at(self, point: Sequence):
        return sum((c * evaluate(f, point) for c, f in self.terms), Fraction(0))


def normalize_combination(c: LinearCombination, cell: CellIndex) -> LinearCombination:
    """
    Unique representation of the combination restricted to a cell.

    Terms whose formulas agree on the cell are merged, terms that vanish on
    the cell are dropped, and so are merged coefficients that cancel.
    """
    groups: list[list] = []
    for coefficient, f in c.terms:
        check_arity(f, cell.arity)
        if lower_on_cell(f, cell).is_zero:
            continue
        for group in groups:
            if equivalent_on_cell(group[1], f, cell):
                group[0] += coefficient
                break
        else:
            groups.append([coefficient, f])
    return LinearCombination.of((coefficient, f) for coefficient, f in groups)
