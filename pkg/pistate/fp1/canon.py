"""
Canonical forms of the free product algebra on one generator.

Every one-variable product function is determined by its value at 0 (0 or 1)
and by its restriction to (0, 1], which is either 0 or a power ``t^e``
(``e = 0`` being the constant 1). The eight shapes

    0, 1, x, ~x, ~~x, x^n, x^n | ~x

are exactly the pairs ``(at_zero, exponent)`` with ``exponent=None`` meaning
zero on (0, 1].
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from ..core.cells import CellIndex
from ..core.exceptions import ArityError, CanonicalFormError
from ..core.formula import (
    BOT,
    TOP,
    Bot,
    Conj,
    Formula,
    Impl,
    Join,
    Meet,
    Top,
    Var,
    evaluate,
    formula_arity,
    neg,
    power,
)
from ..core.pwl import lower_on_cell

_X = Var(0)
_POSITIVE = CellIndex((2,))


@dataclass(frozen=True, slots=True)
class Fp1Canon:
    at_zero: int
    exponent: Optional[int]

    def __post_init__(self):
        if self.at_zero not in (0, 1):
            raise CanonicalFormError(f"value at 0 must be 0 or 1, got {self.at_zero}")
        if self.exponent is not None and self.exponent < 0:
            raise CanonicalFormError(f"negative exponent {self.exponent}")

    def __str__(self) -> str:
        pos = "Z" if self.exponent is None else f"Pow {self.exponent}"
        return f"({self.at_zero}, {pos})"


ZERO_CANON = Fp1Canon(0, None)
ONE_CANON = Fp1Canon(1, 0)
X_CANON = Fp1Canon(0, 1)


def canonicalize(f: Formula) -> Fp1Canon:
    """
    Canonical shape of a one-variable formula.

    Raises:
        ArityError: if the formula mentions x1 or beyond.
        CanonicalFormError: if the positive-cell term is not a single power.
    """
    if formula_arity(f) > 1:
        raise ArityError("canonical forms exist only for formulas in x0")
    at_zero = int(evaluate(f, (Fraction(0),)))
    cf = lower_on_cell(f, _POSITIVE)
    if cf.is_zero:
        return Fp1Canon(at_zero, None)
    forms = list(cf.term.forms())
    if len(forms) != 1 or forms[0][0] < 0:
        raise CanonicalFormError(f"unexpected one-variable term {cf}")
    return Fp1Canon(at_zero, forms[0][0])


# ----------------------------------------------------------------------
# Connectives on shapes
# ----------------------------------------------------------------------
def canon_conj(a: Fp1Canon, b: Fp1Canon) -> Fp1Canon:
    if a.exponent is None or b.exponent is None:
        return Fp1Canon(a.at_zero * b.at_zero, None)
    return Fp1Canon(a.at_zero * b.at_zero, a.exponent + b.exponent)


def canon_meet(a: Fp1Canon, b: Fp1Canon) -> Fp1Canon:
    if a.exponent is None or b.exponent is None:
        return Fp1Canon(min(a.at_zero, b.at_zero), None)
    return Fp1Canon(min(a.at_zero, b.at_zero), max(a.exponent, b.exponent))


def canon_join(a: Fp1Canon, b: Fp1Canon) -> Fp1Canon:
    at_zero = max(a.at_zero, b.at_zero)
    if a.exponent is None:
        return Fp1Canon(at_zero, b.exponent)
    if b.exponent is None:
        return Fp1Canon(at_zero, a.exponent)
    return Fp1Canon(at_zero, min(a.exponent, b.exponent))


def canon_impl(a: Fp1Canon, b: Fp1Canon) -> Fp1Canon:
    at_zero = 1 if a.at_zero <= b.at_zero else 0
    if a.exponent is None:
        return Fp1Canon(at_zero, 0)
    if b.exponent is None:
        return Fp1Canon(at_zero, None)
    return Fp1Canon(at_zero, max(0, b.exponent - a.exponent))


def canon_neg(a: Fp1Canon) -> Fp1Canon:
    return canon_impl(a, ZERO_CANON)


def canon_fold(f: Formula) -> Fp1Canon:
    """Shape of ``f`` computed bottom-up with the connectives on shapes."""
    match f:
        case Bot():
            return ZERO_CANON
        case Top():
            return ONE_CANON
        case Var(index):
            if index != 0:
                raise ArityError("canonical forms exist only for formulas in x0")
            return X_CANON
        case Conj(left, right):
            return canon_conj(canon_fold(left), canon_fold(right))
        case Meet(left, right):
            return canon_meet(canon_fold(left), canon_fold(right))
        case Join(left, right):
            return canon_join(canon_fold(left), canon_fold(right))
        case Impl(left, right):
            return canon_impl(canon_fold(left), canon_fold(right))
    raise TypeError(f"not a product formula: {f!r}")


# ----------------------------------------------------------------------
# Representatives, values, order
# ----------------------------------------------------------------------
def canon_to_formula(c: Fp1Canon) -> Formula:
    """The representative among 0, 1, x^n, ~x, ~~x and x^n | ~x."""
    if c.exponent is None:
        return neg(_X) if c.at_zero else BOT
    if c.exponent == 0:
        return TOP if c.at_zero else neg(neg(_X))
    body = power(_X, c.exponent)
    return Join(body, neg(_X)) if c.at_zero else body


def canon_eval(c: Fp1Canon, t) -> Fraction:
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"{t} is outside [0, 1]")
    if t == 0:
        return Fraction(c.at_zero)
    if c.exponent is None:
        return Fraction(0)
    return t ** c.exponent


def canon_leq(a: Fp1Canon, b: Fp1Canon) -> bool:
    """Pointwise order of the functions."""
    if a.at_zero > b.at_zero:
        return False
    if a.exponent is None:
        return True
    return b.exponent is not None and b.exponent <= a.exponent


def canonical_elements(horizon: int) -> Iterator[Fp1Canon]:
    """Every shape with exponent at most ``horizon``."""
    for at_zero in (0, 1):
        yield Fp1Canon(at_zero, None)
        for e in range(horizon + 1):
            yield Fp1Canon(at_zero, e)
