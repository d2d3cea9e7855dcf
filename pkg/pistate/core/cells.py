"""
The Boolean skeleton of the free product algebra.

A cell index is a string over {1, 2}: position i is 1 when x_i vanishes and 2
when it is positive. The cells partition [0,1]^n, and the atom p_eps is the
Boolean formula that is 1 on its cell and 0 elsewhere.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exceptions import ArityError, PointError
from .formula import Formula, Var, join_all, meet_all, neg

Point = tuple[Fraction, ...]


@dataclass(frozen=True, order=True, slots=True)
class CellIndex:
    eps: tuple[int, ...]

    def __post_init__(self):
        if not self.eps:
            raise ArityError("a cell index needs at least one coordinate")
        if any(e not in (1, 2) for e in self.eps):
            raise ArityError(f"cell index entries must be 1 or 2, got {self.eps}")

    @property
    def arity(self) -> int:
        return len(self.eps)

    @property
    def positive(self) -> tuple[int, ...]:
        """Coordinates that are strictly positive on the cell."""
        return tuple(i for i, e in enumerate(self.eps) if e == 2)

    def __str__(self) -> str:
        return "".join(str(e) for e in self.eps)

    def __repr__(self) -> str:
        return f"CellIndex({self})"


def parse_cell(text: str) -> CellIndex:
    """Read the ``"12"`` form of a cell index."""
    text = text.strip()
    if not text or any(ch not in "12" for ch in text):
        raise ArityError(f"cell index must be a non-empty string over 1 and 2, got {text!r}")
    return CellIndex(tuple(int(ch) for ch in text))


def enumerate_sigma(n: int) -> list[CellIndex]:
    """All 2^n cell indices in lexicographic order."""
    if n < 1:
        raise ArityError(f"arity must be at least 1, got {n}")
    return [CellIndex(eps) for eps in product((1, 2), repeat=n)]


def atom_formula(cell: CellIndex) -> Formula:
    literals = [neg(Var(i)) if e == 1 else neg(neg(Var(i))) for i, e in enumerate(cell.eps)]
    return meet_all(literals)


def atom_join(n: int) -> Formula:
    return join_all([atom_formula(cell) for cell in enumerate_sigma(n)])


def cell_of_point(point: Sequence) -> CellIndex:
    for i, t in enumerate(point):
        if t < 0 or t > 1:
            raise PointError(f"coordinate {i} is {t}, outside [0, 1]")
    return CellIndex(tuple(1 if t == 0 else 2 for t in point))


def interior_point(cell: CellIndex) -> Point:
    return tuple(Fraction(0) if e == 1 else Fraction(1, 2) for e in cell.eps)


def in_slice(point: Sequence, cell: CellIndex, q) -> bool:
    """Membership in the compact slice of the cell whose positive coordinates are at least q."""
    if not 0 < q <= 1:
        raise PointError(f"slice level must lie in (0, 1], got {q}")
    if len(point) != cell.arity:
        raise ArityError(f"point has {len(point)} coordinates, cell has {cell.arity}")
    for t, e in zip(point, cell.eps):
        if e == 1 and t != 0:
            return False
        if e == 2 and not q <= t <= 1:
            return False
    return True
