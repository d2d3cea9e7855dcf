"""
Abstract syntax of product-logic events and of modal statements over them.

Product formulas use six primitive constructors. Negation and powers are
derived and never stored: ``neg(f)`` is ``Impl(f, Bot)`` and ``power(f, k)``
is a left-nested ``Conj`` chain. Modal formulas likewise keep only
``MZero``, ``MOne``, ``Atom``, ``LNeg``, ``LImpl`` and ``Delta``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence, Union

import numpy as np

from .exceptions import ArityError, PointError


# ----------------------------------------------------------------------
# Product formulas
# ----------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Var:
    index: int


class _Binary:
    """
    Hash and arity of a binary node are computed once from its children, so
    hashing, equality and arity checks cost O(1) on shared subtrees.
    """

    __slots__ = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.left, self.right)))
        object.__setattr__(self, "_arity", max(formula_arity(self.left), formula_arity(self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b):
                return False
            if isinstance(a, _Binary):
                if a._hash != b._hash:
                    return False
                stack.append((a.right, b.right))
                stack.append((a.left, b.left))
            elif a != b:
                return False
        return True


@dataclass(frozen=True, slots=True, eq=False)
class Conj(_Binary):
    """Strong conjunction, the product t-norm."""
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)
    _arity: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True, eq=False)
class Impl(_Binary):
    """Residuum of the product t-norm."""
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)
    _arity: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True, eq=False)
class Meet(_Binary):
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)
    _arity: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, slots=True, eq=False)
class Join(_Binary):
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)
    _arity: int = field(init=False, repr=False, compare=False)



Formula = Union[Bot, Top, Var, Conj, Impl, Meet, Join]
BINARY = (Conj, Impl, Meet, Join)

BOT = Bot()
TOP = Top()


def neg(f: Formula) -> Formula:
    return Impl(f, BOT)


def power(f: Formula, k: int) -> Formula:
    if k < 1:
        raise ValueError(f"power exponent must be >= 1, got {k}")
    result = f
    for _ in range(k - 1):
        result = Conj(result, f)
    return result


def biconditional(f: Formula, g: Formula) -> Formula:
    return Meet(Impl(f, g), Impl(g, f))


def meet_all(formulas: Sequence[Formula]) -> Formula:
    return reduce(Meet, formulas) if formulas else TOP


def join_all(formulas: Sequence[Formula]) -> Formula:
    return reduce(Join, formulas) if formulas else BOT


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, BINARY):
            stack.append(node.right)
            stack.append(node.left)


def formula_arity(f: Formula) -> int:
    """One more than the largest variable index, 0 for closed formulas."""
    if isinstance(f, Var):
        return f.index + 1
    if isinstance(f, BINARY):
        return f._arity
    return 0


def check_arity(f: Formula, n: int) -> None:
    used = formula_arity(f)
    if used > n:
        raise ArityError(f"formula uses x{used - 1} but the arity is {n}")


# ----------------------------------------------------------------------
# Truth-functional evaluation in the standard product algebra
# ----------------------------------------------------------------------
def _check_point(point: Sequence) -> None:
    for i, t in enumerate(point):
        if t < 0 or t > 1:
            raise PointError(f"coordinate {i} is {t}, outside [0, 1]")


def _product_impl(a, b):
    if a <= b:
        return 1
    if b == 0:
        return 0
    return b / a


def _evaluate(f: Formula, point: Sequence):
    match f:
        case Bot():
            return 0
        case Top():
            return 1
        case Var(index):
            return point[index]
        case Conj(left, right):
            return _evaluate(left, point) * _evaluate(right, point)
        case Impl(left, right):
            return _product_impl(_evaluate(left, point), _evaluate(right, point))
        case Meet(left, right):
            return min(_evaluate(left, point), _evaluate(right, point))
        case Join(left, right):
            return max(_evaluate(left, point), _evaluate(right, point))
    raise TypeError(f"not a product formula: {f!r}")


def evaluate(f: Formula, point: Sequence) -> Union[Fraction, float]:
    """
    Evaluate a product formula at a point of [0,1]^n.

    Exact rational points give a Fraction, floating points give a float.

    Raises:
        ArityError: if the formula mentions a variable beyond the point.
        PointError: if a coordinate lies outside [0, 1].
    """
    check_arity(f, len(point))
    _check_point(point)
    if any(isinstance(t, float) for t in point):
        return float(_evaluate(f, point))
    return Fraction(_evaluate(f, tuple(Fraction(t) for t in point)))


_COMBINE = {
    Conj: lambda xs, ys: tuple(a * b for a, b in zip(xs, ys)),
    Impl: lambda xs, ys: tuple(map(_product_impl, xs, ys)),
    Meet: lambda xs, ys: tuple(map(min, xs, ys)),
    Join: lambda xs, ys: tuple(map(max, xs, ys)),
}


class ValueTable:
    """
    Exact values of formulas at a fixed list of points, memoised per subformula.

    Repeated queries on formulas that share subtrees (``f``, ``g``, ``f & g``,
    ``f -> g``, ...) only combine the stored vectors of the children. The walk
    is iterative, so chains such as ``x0^3000`` are fine. The memo is dropped
    once it holds ``limit`` entries.
    """

    def __init__(self, points: Sequence[Sequence[Fraction]], limit: int = 1 << 16) -> None:
        self.points = tuple(tuple(p) for p in points)
        self.limit = limit
        self._memo: dict[Formula, tuple] = {}

    def __len__(self) -> int:
        return len(self._memo)

    def _leaf(self, f: Formula) -> tuple:
        match f:
            case Bot():
                return (0,) * len(self.points)
            case Top():
                return (1,) * len(self.points)
            case Var(index):
                return tuple(p[index] for p in self.points)
        raise TypeError(f"not a product formula: {f!r}")

    def __call__(self, f: Formula) -> tuple:
        memo = self._memo
        if f in memo:
            return memo[f]
        if len(memo) >= self.limit:
            memo.clear()
        stack = [f]
        while stack:
            node = stack[-1]
            if node in memo:
                stack.pop()
                continue
            if isinstance(node, BINARY):
                pending = [c for c in (node.left, node.right) if c not in memo]
                if pending:
                    stack.extend(pending)
                    continue
                memo[node] = _COMBINE[type(node)](memo[node.left], memo[node.right])
            else:
                memo[node] = self._leaf(node)
            stack.pop()
        return memo[f]


def evaluate_array(f: Formula, samples: np.ndarray) -> np.ndarray:
    """Vectorised evaluation over the rows of a ``(N, n)`` sample matrix."""
    if samples.ndim != 2:
        raise ArityError("samples must be a two-dimensional array")
    check_arity(f, samples.shape[1])
    return _evaluate_array(f, samples)


def _evaluate_array(f: Formula, samples: np.ndarray) -> np.ndarray:
    match f:
        case Bot():
            return np.zeros(samples.shape[0])
        case Top():
            return np.ones(samples.shape[0])
        case Var(index):
            return samples[:, index].astype(float)
        case Conj(left, right):
            return _evaluate_array(left, samples) * _evaluate_array(right, samples)
        case Impl(left, right):
            a = _evaluate_array(left, samples)
            b = _evaluate_array(right, samples)
            ratio = np.divide(b, a, out=np.ones_like(a), where=a > b)
            return np.where(a <= b, 1.0, ratio)
        case Meet(left, right):
            return np.minimum(_evaluate_array(left, samples), _evaluate_array(right, samples))
        case Join(left, right):
            return np.maximum(_evaluate_array(left, samples), _evaluate_array(right, samples))
    raise TypeError(f"not a product formula: {f!r}")


# ----------------------------------------------------------------------
# Modal formulas
# ----------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class MZero:
    pass


@dataclass(frozen=True, slots=True)
class MOne:
    pass


@dataclass(frozen=True, slots=True)
class Atom:
    """The probability of a product event, written P(event)."""
    event: Formula


@dataclass(frozen=True, slots=True)
class LNeg:
    arg: "ModalFormula"


@dataclass(frozen=True, slots=True)
class LImpl:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True, slots=True)
class Delta:
    arg: "ModalFormula"


ModalFormula = Union[MZero, MOne, Atom, LNeg, LImpl, Delta]

MZERO = MZero()
MONE = MOne()


def oplus(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    """Bounded sum, min(1, a + b)."""
    return LImpl(LNeg(a), b)


def ominus(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    """Truncated difference, max(0, a - b)."""
    return LNeg(LImpl(a, b))


def lconj(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    """Łukasiewicz strong conjunction, max(0, a + b - 1)."""
    return LNeg(LImpl(a, LNeg(b)))


def lequiv(a: ModalFormula, b: ModalFormula) -> ModalFormula:
    """Łukasiewicz biconditional, 1 - |a - b|."""
    return lconj(LImpl(a, b), LImpl(b, a))


def modal_subformulas(phi: ModalFormula) -> Iterator[ModalFormula]:
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        match node:
            case LNeg(arg) | Delta(arg):
                stack.append(arg)
            case LImpl(left, right):
                stack.append(right)
                stack.append(left)


def events(formulas: Sequence[ModalFormula]) -> tuple[Formula, ...]:
    """Distinct payloads of P, in order of first occurrence."""
    seen: dict[Formula, None] = {}
    for phi in formulas:
        for node in modal_subformulas(phi):
            if isinstance(node, Atom):
                seen.setdefault(node.event, None)
    return tuple(seen)


def modal_arity(phi: ModalFormula) -> int:
    return max((formula_arity(e) for e in events([phi])), default=0)
