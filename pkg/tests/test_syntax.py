from fractions import Fraction

import numpy as np
import pytest

from pistate.core import (
    BOT,
    TOP,
    Atom,
    Conj,
    Impl,
    Join,
    LImpl,
    LNeg,
    Meet,
    Var,
    evaluate,
    evaluate_array,
    neg,
    oplus,
    lequiv,
    parse_modal,
    parse_product,
    print_formula,
    to_tree,
)
from pistate.core.exceptions import (
    ArityError,
    FormulaSyntaxError,
    NestedModalityError,
    PointError,
    UnknownVariableError,
)
from pistate.core.formula import Delta, ValueTable, formula_arity, power
from pistate.core.generate import random_formula, random_modal_formula, random_point

x0, x1 = Var(0), Var(1)


@pytest.fixture
def rng():
    """
    Seeded generator shared by the randomized checks.
    """
    return np.random.default_rng(2024)


def test_precedence_of_product_connectives():
    """
    Implication binds loosest, then join, meet and strong conjunction.
    """
    phi = parse_product("x0 * x1 & x0 | x1 -> x0", 2)
    assert phi == Impl(Join(Meet(Conj(x0, x1), x0), x1), x0)


def test_implication_is_right_associative():
    """
    a -> b -> c reads as a -> (b -> c).
    """
    assert parse_product("x0 -> x1 -> x0", 2) == Impl(x0, Impl(x1, x0))


def test_negation_and_power_are_desugared():
    """
    ~f becomes f -> 0 and f^3 a left-nested strong conjunction.
    """
    assert parse_product("~x0", 1) == Impl(x0, BOT)
    assert parse_product("x0^3", 1) == Conj(Conj(x0, x0), x0)
    assert parse_product("~x0^2", 1) == neg(power(x0, 2))


def test_constants():
    """
    0 and 1 are the bottom and top elements.
    """
    assert parse_product("1 -> 0", 1) == Impl(TOP, BOT)


@pytest.mark.parametrize(
    "text",
    ["(x0 -> x1) -> x0", "x0 * (x1 | x0)", "~(x0 & x1)", "~~x0 -> ((x1 * x0 -> x0 * x0) -> (x1 -> x0))"],
)
def test_printer_uses_grammar_precedence(text):
    """
    Printed formulas parse back to the same tree.
    """
    phi = parse_product(text, 2)
    assert parse_product(print_formula(phi), 2) == phi


def test_printer_drops_redundant_parentheses():
    """
    The printer only keeps the parentheses the grammar needs.
    """
    assert print_formula(parse_product("((x0) * (x1)) | (x0)", 2)) == "x0 * x1 | x0"
    assert print_formula(neg(neg(x0))) == "~~x0"


def test_unknown_variable_is_rejected():
    """
    Variables must lie below the declared arity.
    """
    with pytest.raises(UnknownVariableError):
        parse_product("x0 * x1", 1)


@pytest.mark.parametrize("text", ["x0 ->", "x0 ** x0", "(x0", "x0^0", "2", ""])
def test_malformed_text_is_rejected(text):
    """
    Malformed input raises FormulaSyntaxError.
    """
    with pytest.raises(FormulaSyntaxError):
        parse_product(text, 1)


def test_nested_modality_is_rejected():
    """
    P(...) may not occur inside an event.
    """
    with pytest.raises(NestedModalityError):
        parse_product("P(x0) -> x0", 1)


def test_modal_parsing():
    """
    The modal layer desugars its derived connectives.
    """
    a = Atom(x0)
    assert parse_modal("P(x0) <=> !P(x0)", 1) == lequiv(a, LNeg(a))
    assert parse_modal("P(x0) (+) P(~x0)", 1) == oplus(a, Atom(neg(x0)))
    assert parse_modal("D(P(x0)) => P(x0^2)", 1) == LImpl(Delta(a), Atom(power(x0, 2)))


def test_modal_printer_round_trip():
    """
    Modal formulas print in a form the parser reads back.
    """
    phi = parse_modal("D(!P(x0)) => !P(~~x0)", 1)
    assert print_formula(phi) == "D(!P(x0)) => !P(~~x0)"
    assert parse_modal(print_formula(phi), 1) == phi


def test_to_tree():
    """
    Trees are nested dictionaries of operator names.
    """
    assert to_tree(parse_product("x0 -> 0", 1)) == {"op": "impl", "args": [{"var": 0}, 0]}
    assert to_tree(Atom(TOP)) == {"op": "P", "args": [1]}


def test_product_truth_functions():
    """
    Strong conjunction multiplies, implication is the residuum.
    """
    half = (Fraction(1, 2),)
    assert evaluate(parse_product("x0 -> x0^2", 1), half) == Fraction(1, 2)
    assert evaluate(parse_product("x0^2 -> x0", 1), half) == 1
    assert evaluate(neg(x0), (Fraction(0),)) == 1
    assert evaluate(neg(x0), half) == 0
    assert evaluate(Conj(x0, x1), (Fraction(1, 2), Fraction(1, 3))) == Fraction(1, 6)


def test_float_points_give_floats():
    """
    A float coordinate switches evaluation to floating point.
    """
    value = evaluate(Conj(x0, x0), (0.5,))
    assert isinstance(value, float)
    assert value == 0.25


def test_evaluation_rejects_bad_points():
    """
    Coordinates must lie in [0, 1] and cover every variable.
    """
    with pytest.raises(PointError):
        evaluate(x0, (Fraction(3, 2),))
    with pytest.raises(ArityError):
        evaluate(x1, (Fraction(1, 2),))


def test_vectorised_evaluation_matches_pointwise(rng):
    """
    evaluate_array agrees with evaluate row by row, faces included.
    """
    for _ in range(30):
        phi = random_formula(rng, 2, 4)
        points = [random_point(rng, 2, 8, zero_probability=0.3) for _ in range(20)]
        samples = np.array([[float(t) for t in p] for p in points])
        expected = [float(evaluate(phi, p)) for p in points]
        assert np.allclose(evaluate_array(phi, samples), expected)


@pytest.mark.parametrize("arity", [1, 2, 3, 4])
def test_printed_formulas_parse_back(rng, arity):
    """
    parse(print(f)) rebuilds every random product formula exactly.
    """
    for depth in range(7):
        for _ in range(25):
            f = random_formula(rng, arity, depth)
            assert parse_product(print_formula(f), arity) == f


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_printed_modal_formulas_parse_back(rng, arity):
    """
    parse_modal(print(phi)) rebuilds every random modal formula exactly.
    """
    for depth in range(5):
        for _ in range(25):
            phi = random_modal_formula(rng, arity, depth, event_depth=3)
            assert parse_modal(print_formula(phi), arity) == phi


def test_equal_trees_hash_alike():
    """
    Separately built copies of a formula are equal, hash alike and keep their arity.
    """
    f = Impl(Meet(x0, Var(2)), neg(x1))
    g = Impl(Meet(x0, Var(2)), neg(x1))
    assert f == g and hash(f) == hash(g)
    assert f != Impl(Meet(x0, Var(2)), neg(x0))
    assert Meet(x0, x1) != Join(x0, x1)
    assert formula_arity(f) == 3
    assert len({f, g, Meet(x0, Var(2))}) == 2


def test_long_chains_compare_and_evaluate():
    """
    A 3000-fold power compares and evaluates without deep recursion.
    """
    chain = power(x0, 3000)
    assert chain == power(x0, 3000)
    assert formula_arity(chain) == 1
    table = ValueTable([(Fraction(1),), (Fraction(0),)])
    assert table(Impl(chain, x0)) == (1, 1)
    assert table(chain) == (1, 0)


def test_value_table_reuses_subformulas(rng):
    """
    Composite queries only add their own node; values match pointwise evaluation.
    """
    points = [random_point(rng, 2, 8) for _ in range(5)]
    table = ValueTable(points)
    f, g = random_formula(rng, 2, 4), random_formula(rng, 2, 4)
    table(f)
    table(g)
    before = len(table)
    values = table(Meet(f, g))
    assert len(table) == before + 1
    assert values == tuple(evaluate(Meet(f, g), p) for p in points)
    assert table(Impl(f, g)) == tuple(evaluate(Impl(f, g), p) for p in points)
