"""
Truth values of modal statements.

The outer connectives are Łukasiewicz logic with the projection ``Delta``:

    !a       = 1 - a
    a => b   = min(1, 1 - a + b)
    D(a)     = 1 if a == 1 else 0
    a (+) b  = min(1, a + b)
    a (-) b  = max(0, a - b)

and ``P(f)`` takes the value the state gives to the event ``f``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..core.exceptions import ArityError, ModalError
from ..core.formula import (
    BINARY,
    Atom,
    Bot,
    Delta,
    Formula,
    LImpl,
    LNeg,
    ModalFormula,
    MOne,
    MZero,
    Top,
    Var,
    evaluate,
    modal_arity,
)
from ..core.rational import as_fractions
from ..states.base import State, Value


# ----------------------------------------------------------------------
# Łukasiewicz truth functions
# ----------------------------------------------------------------------
def luk_neg(a: Value) -> Value:
    return 1 - a


def luk_impl(a: Value, b: Value) -> Value:
    return min(1, 1 - a + b)


def luk_oplus(a: Value, b: Value) -> Value:
    return min(1, a + b)


def luk_ominus(a: Value, b: Value) -> Value:
    return max(0, a - b)


def luk_conj(a: Value, b: Value) -> Value:
    return max(0, a + b - 1)


def luk_delta(a: Value) -> Value:
    return 1 if a == 1 else 0


def eval_modal(sigma: State, phi: ModalFormula) -> Value:
    """
    Value of a modal statement under a state; exact when the state is.

    Raises:
        ArityError: if an event mentions a variable the state does not have.
    """
    if modal_arity(phi) > sigma.arity:
        raise ArityError(f"statement needs arity {modal_arity(phi)}, the state has {sigma.arity}")
    return _eval(sigma, phi, {})


def _eval(sigma: State, phi: ModalFormula, cache: dict) -> Value:
    match phi:
        case MZero():
            return Fraction(0)
        case MOne():
            return Fraction(1)
        case Atom(event):
            if event not in cache:
                cache[event] = sigma.evaluate(event)
            return cache[event]
        case LNeg(arg):
            return luk_neg(_eval(sigma, arg, cache))
        case LImpl(left, right):
            return luk_impl(_eval(sigma, left, cache), _eval(sigma, right, cache))
        case Delta(arg):
            return Fraction(luk_delta(_eval(sigma, arg, cache)))
    raise TypeError(f"not a modal formula: {phi!r}")


def _is_product(phi) -> bool:
    return isinstance(phi, (Bot, Top, Var, *BINARY))


@dataclass
class Interpretation:
    """
    A propositional evaluation ``e`` together with a state ``sigma``.

    Product formulas are judged by ``e`` and modal statements by ``sigma``.
    """

    sigma: State
    e: Optional[Sequence] = None

    def __post_init__(self):
        if self.e is not None:
            self.e = as_fractions(self.e)
            if len(self.e) != self.sigma.arity:
                raise ArityError("evaluation and state have different arities")

    def value(self, phi: Union[Formula, ModalFormula]) -> Value:
        if _is_product(phi):
            if self.e is None:
                raise ModalError("judging a product formula needs a propositional evaluation")
            return evaluate(phi, self.e)
        return eval_modal(self.sigma, phi)

    def satisfies(self, phi: Union[Formula, ModalFormula]) -> bool:
        return self.value(phi) == 1

    def models(self, gamma: Sequence[ModalFormula]) -> bool:
        return all(self.satisfies(phi) for phi in gamma)
