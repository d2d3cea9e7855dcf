"""Seeded generators for random formulas and rational points."""

from fractions import Fraction
from typing import Optional

import numpy as np

from .formula import (
    BOT,
    MONE,
    MZERO,
    TOP,
    Atom,
    Conj,
    Delta,
    Formula,
    Impl,
    Join,
    LImpl,
    LNeg,
    Meet,
    ModalFormula,
    Var,
    neg,
)

_BINARY = (Conj, Impl, Meet, Join)


def random_formula(
    rng: np.random.Generator, arity: int, depth: int, leaf_probability: float = 0.25
) -> Formula:
    """
    Draw a product formula of depth at most ``depth`` over x0..x(arity-1).

    Leaves are variables nine times out of ten and constants otherwise.
    Inner nodes are the four binary connectives or a negation.
    """
    if depth <= 0 or rng.random() < leaf_probability:
        if rng.random() < 0.9:
            return Var(int(rng.integers(arity)))
        return TOP if rng.random() < 0.5 else BOT
    choice = int(rng.integers(len(_BINARY) + 1))
    if choice == len(_BINARY):
        return neg(random_formula(rng, arity, depth - 1, leaf_probability))
    op = _BINARY[choice]
    return op(
        random_formula(rng, arity, depth - 1, leaf_probability),
        random_formula(rng, arity, depth - 1, leaf_probability),
    )


def random_formulas(
    rng: np.random.Generator, count: int, arity: int, depth: int
) -> list[Formula]:
    return [random_formula(rng, arity, depth) for _ in range(count)]


def random_modal_formula(
    rng: np.random.Generator, arity: int, depth: int, event_depth: int = 2
) -> ModalFormula:
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.9:
            return Atom(random_formula(rng, arity, event_depth))
        return MONE if roll < 0.95 else MZERO
    choice = int(rng.integers(3))
    if choice == 0:
        return LNeg(random_modal_formula(rng, arity, depth - 1, event_depth))
    if choice == 1:
        return Delta(random_modal_formula(rng, arity, depth - 1, event_depth))
    return LImpl(
        random_modal_formula(rng, arity, depth - 1, event_depth),
        random_modal_formula(rng, arity, depth - 1, event_depth),
    )


def random_rational(rng: np.random.Generator, denominator: int, zero_probability: float = 0.0) -> Fraction:
    if zero_probability and rng.random() < zero_probability:
        return Fraction(0)
    return Fraction(int(rng.integers(denominator + 1)), denominator)


def random_point(
    rng: np.random.Generator,
    arity: int,
    denominator: int = 16,
    zero_probability: float = 0.0,
) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng, denominator, zero_probability) for _ in range(arity))


def random_cell_point(
    rng: np.random.Generator, eps: tuple[int, ...], denominator: int = 16
) -> tuple[Fraction, ...]:
    """A random rational point of the cell with the given index."""
    return tuple(
        Fraction(0) if e == 1 else Fraction(int(rng.integers(1, denominator + 1)), denominator)
        for e in eps
    )


def random_weights(rng: np.random.Generator, count: int, denominator: Optional[int] = None) -> list[Fraction]:
    """Positive rationals summing exactly to one."""
    denominator = denominator or 8 * count
    cuts = sorted(int(c) for c in rng.choice(np.arange(1, denominator), size=count - 1, replace=False))
    bounds = [0, *cuts, denominator]
    return [Fraction(b - a, denominator) for a, b in zip(bounds, bounds[1:])]
