import itertools
from fractions import Fraction

import numpy as np
import pytest

from pistate.core import (
    CellIndex,
    LinearCombination,
    Var,
    enumerate_sigma,
    equivalent_on_cell,
    eval_cellwise,
    evaluate,
    implies,
    is_boolean,
    is_equivalent,
    is_tautology,
    is_zero,
    lower,
    normalize_combination,
    parse_product,
)
from pistate.core.exceptions import ArityError, CombinationError
from pistate.core.generate import random_formula, random_point

x0 = Var(0)
POS = CellIndex((2,))
ZERO_CELL = CellIndex((1,))

PRODUCT_AXIOMS = [
    "~~x0 -> ((x1 * x0 -> x2 * x0) -> (x1 -> x2))",
    "~(x0 & ~x0)",
    "(x0 -> x1) | (x1 -> x0)",
    "x0 & x1 -> x0 * (x0 -> x1)",
    "x0 * (x0 -> x1) -> x0 & x1",
    "(x0 -> x1) -> ((x1 -> x2) -> (x0 -> x2))",
    "x0 * x1 -> x0",
    "x0 * x1 -> x1 * x0",
    "(x0 -> (x1 -> x2)) -> (x0 * x1 -> x2)",
    "(x0 * x1 -> x2) -> (x0 -> (x1 -> x2))",
    "((x0 -> x1) -> x2) -> (((x1 -> x0) -> x2) -> x2)",
    "0 -> x0",
    "x0 & x1 -> x1 & x0",
    "x0 | x1 -> x1 | x0",
]

NON_TAUTOLOGIES = ["x0 | ~x0", "~~x0 -> x0", "x0 -> x0 * x0", "x0 -> x1", "(x0 -> x1) -> x1"]


@pytest.fixture
def rng():
    """
    Seeded generator shared by the randomized checks.
    """
    return np.random.default_rng(7)


def _grid(n: int, steps: int):
    levels = [Fraction(k, steps) for k in range(steps + 1)]
    return itertools.product(levels, repeat=n)


def test_lowering_of_a_variable():
    """
    x0 vanishes on the zero cell and is exp(u) on the positive one.
    """
    lowered = lower(x0, 1)
    assert lowered[ZERO_CELL].is_zero
    assert lowered[POS].term.branches == (((1,),),)


def test_lowering_simplifies_residuum():
    """
    x0 -> x0^2 is t on (0, 1].
    """
    lowered = lower(parse_product("x0 -> x0^2", 1), 1)
    assert list(lowered[POS].term.forms()) == [(1,)]


def test_lowering_rejects_wrong_arity():
    """
    The arity must cover every variable.
    """
    with pytest.raises(ArityError):
        lower(parse_product("x0 * x1", 2), 1)
    with pytest.raises(ArityError):
        lower(x0, 0)


def test_cellwise_evaluation_matches_direct_evaluation(rng):
    """
    The lowered representation gives the same exact values as the formula.
    """
    for _ in range(40):
        phi = random_formula(rng, 2, 4)
        lowered = lower(phi, 2)
        for _ in range(10):
            point = random_point(rng, 2, 12, zero_probability=0.25)
            assert eval_cellwise(lowered, point) == evaluate(phi, point)


@pytest.mark.parametrize("text", PRODUCT_AXIOMS)
def test_product_axioms_are_tautologies(text):
    """
    Axioms of product logic and of basic logic hold everywhere.
    """
    assert is_tautology(parse_product(text, 3), 3)


@pytest.mark.parametrize("text", NON_TAUTOLOGIES)
def test_non_tautologies(text):
    """
    Formulas refuted somewhere are not tautologies.
    """
    assert not is_tautology(parse_product(text, 2), 2)


def test_tautologies_hold_on_a_dense_grid(rng):
    """
    Every formula declared a tautology is 1 on the grid of step 1/10.
    """
    for _ in range(150):
        phi = random_formula(rng, 2, 3)
        if is_tautology(phi, 2):
            assert all(evaluate(phi, p) == 1 for p in _grid(2, 10))


def test_one_variable_decisions_match_the_grid(rng):
    """
    In one variable a non-tautology is refuted on the grid of step 1/20.
    """
    for _ in range(150):
        phi = random_formula(rng, 1, 4)
        on_grid = all(evaluate(phi, p) == 1 for p in _grid(1, 20))
        assert is_tautology(phi, 1) == on_grid


def test_implication_and_equivalence():
    """
    t^2 <= t, but not conversely; triple negation collapses.
    """
    sq = parse_product("x0^2", 1)
    assert implies(sq, x0, 1)
    assert not implies(x0, sq, 1)
    assert is_equivalent(parse_product("~~~x0", 1), parse_product("~x0", 1), 1)
    assert is_equivalent(parse_product("x0 -> x0^2", 1), parse_product("x0 | ~x0", 1), 1)


def test_boolean_and_zero_elements():
    """
    Negations are Boolean, x0 is not; x0 & ~x0 is the bottom element.
    """
    assert is_boolean(parse_product("~x0", 1), 1)
    assert not is_boolean(x0, 1)
    assert is_zero(parse_product("x0 & ~x0", 1), 1)
    assert not is_zero(x0, 1)


def test_equivalence_on_a_cell():
    """
    x0 and x0 | ~x0 agree on (0, 1] and differ at 0.
    """
    f, g = x0, parse_product("x0 | ~x0", 1)
    assert equivalent_on_cell(f, g, POS)
    assert not equivalent_on_cell(f, g, ZERO_CELL)


def test_equivalence_on_cells_of_two_variables():
    """
    Both restrictions ZERO count as equal; ZERO against PWL does not.
    """
    f = parse_product("x0 * x1", 2)
    g = parse_product("x0 & x1 & ~x1", 2)
    for cell in enumerate_sigma(2):
        assert equivalent_on_cell(f, g, cell) == (cell != CellIndex((2, 2)))


def test_linear_combination_arithmetic():
    """
    Zero coefficients are rejected on construction and dropped by of().
    """
    with pytest.raises(CombinationError):
        LinearCombination(((0, x0),))
    c = LinearCombination.of([(1, x0), (0, x0)])
    assert len(c) == 1
    doubled = 2 * c
    assert list(doubled) == [(Fraction(2), x0)]
    assert (c + c).value_at((Fraction(1, 2),)) == 1
    assert len(c.scale(0)) == 0


def test_normalization_merges_equivalent_restrictions():
    """
    Terms equal on the cell merge, terms vanishing on it disappear.
    """
    c = LinearCombination.of([(1, x0), (2, parse_product("x0 | ~x0", 1))])
    merged = normalize_combination(c, POS)
    assert list(merged) == [(Fraction(3), x0)]
    assert len(normalize_combination(LinearCombination.of([(1, x0)]), ZERO_CELL)) == 0


def test_normalization_drops_cancelled_terms():
    """
    Coefficients that sum to zero after merging are removed.
    """
    c = LinearCombination.of([(1, x0), (-1, parse_product("~~x0 & x0", 1))])
    assert len(normalize_combination(c, POS)) == 0
