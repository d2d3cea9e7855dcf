"""
Cell-conditional values of a state.
"""

from fractions import Fraction

from ..core.cells import CellIndex, atom_formula, enumerate_sigma
from ..core.exceptions import ArityError
from ..core.formula import Formula, Meet
from ..core.pwl import LinearCombination, normalize_combination
from .base import State, Value


def tau_epsilon(state: State, cell: CellIndex, c: LinearCombination) -> Value:
    """
    Conditional expectation of ``sum_i l_i * f_i`` given the cell.

    ``tau(c) = sum_i l_i * s(f_i & p_eps) / s(p_eps)`` over the terms of the
    normalised combination with ``s(f_i & p_eps) > 0``; an empty sum is 0.

    Args:
        state (State): any backend.
        cell (CellIndex): the conditioning cell, of the state's arity.
        c (LinearCombination): the combination; normalised here.

    Returns:
        Fraction | float: exact for exact backends.
    """
    if cell.arity != state.arity:
        raise ArityError(f"cell {cell} does not have arity {state.arity}")
    c = normalize_combination(c, cell)
    atom = atom_formula(cell)
    total = Fraction(0)
    mass = None
    for coefficient, f in c:
        weight = state.evaluate(Meet(f, atom))
        if weight <= 0:
            continue
        if mass is None:
            mass = state.evaluate(atom)
        if mass <= 0:
            break
        total += coefficient * weight / mass
    return total


def cell_decomposition_eval(state: State, formula: Formula) -> Value:
    """``sum_eps s(f & p_eps)``, which equals ``s(f)`` for every state."""
    state.check_arity(formula)
    return sum(
        (state.evaluate(Meet(formula, atom_formula(cell))) for cell in enumerate_sigma(state.arity)),
        Fraction(0),
    )
