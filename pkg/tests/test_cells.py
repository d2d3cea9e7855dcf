from fractions import Fraction

import pytest

from pistate.core import (
    CellIndex,
    atom_formula,
    atom_join,
    cell_of_point,
    enumerate_sigma,
    evaluate,
    in_slice,
    interior_point,
    is_tautology,
    parse_cell,
)
from pistate.core.exceptions import ArityError, PointError

half = Fraction(1, 2)


def test_enumeration_order():
    """
    Cells come in lexicographic order over {1, 2}^n.
    """
    assert [str(c) for c in enumerate_sigma(2)] == ["11", "12", "21", "22"]
    assert len(enumerate_sigma(3)) == 8


def test_enumeration_needs_positive_arity():
    """
    There is no cell of arity 0.
    """
    with pytest.raises(ArityError):
        enumerate_sigma(0)


def test_cell_index_validation():
    """
    Entries must be 1 or 2.
    """
    with pytest.raises(ArityError):
        CellIndex((1, 3))
    with pytest.raises(ArityError):
        parse_cell("1a")
    assert parse_cell("21") == CellIndex((2, 1))
    assert CellIndex((2, 1, 2)).positive == (0, 2)


def test_cell_of_point():
    """
    Zero coordinates give 1, positive ones give 2.
    """
    assert cell_of_point((Fraction(0), half)) == CellIndex((1, 2))
    assert cell_of_point((Fraction(1), Fraction(0))) == CellIndex((2, 1))
    with pytest.raises(PointError):
        cell_of_point((Fraction(-1, 2),))


def test_atoms_are_cell_indicators():
    """
    p_eps is 1 on its own cell and 0 on every other cell.
    """
    for cell in enumerate_sigma(2):
        atom = atom_formula(cell)
        for other in enumerate_sigma(2):
            expected = 1 if other == cell else 0
            assert evaluate(atom, interior_point(other)) == expected
            assert evaluate(atom, tuple(Fraction(0) if e == 1 else Fraction(1, 5) for e in other.eps)) == expected


def test_atoms_cover_the_cube():
    """
    The join of all atoms is the top element.
    """
    assert is_tautology(atom_join(2), 2)


def test_slices():
    """
    The slice at q keeps the positive coordinates at least q.
    """
    cell = CellIndex((1, 2))
    assert in_slice((Fraction(0), half), cell, Fraction(1, 4))
    assert not in_slice((Fraction(0), Fraction(1, 8)), cell, Fraction(1, 4))
    assert not in_slice((half, half), cell, Fraction(1, 4))
    with pytest.raises(PointError):
        in_slice((Fraction(0), half), cell, 0)
    with pytest.raises(ArityError):
        in_slice((half,), cell, half)
