"""
Parser and printer for product formulas and modal formulas.

Product operators, loosest first: ``->`` (right-assoc), ``|``, ``&``, ``*``,
then ``~`` and the postfix power ``^k``. Modal operators, loosest first:
``<=>``, ``=>`` (right-assoc), ``(+)`` and ``(-)`` (left-assoc), then ``!``
and ``D(...)``. Derived connectives are expanded while the tree is built, so
every parse returns a tree of primitive constructors.
"""

from typing import Any, Union

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from .exceptions import FormulaSyntaxError, NestedModalityError, UnknownVariableError
from .formula import (
    BOT,
    MONE,
    MZERO,
    TOP,
    Atom,
    Bot,
    Conj,
    Delta,
    Formula,
    Impl,
    Join,
    LImpl,
    LNeg,
    Meet,
    ModalFormula,
    MOne,
    MZero,
    Top,
    Var,
    lequiv,
    neg,
    ominus,
    oplus,
    power,
)

GRAMMAR = r"""
    product: impl
    modal: mequiv

    ?impl: join
         | join "->" impl               -> implication
    ?join: meet
         | join "|" meet                -> lattice_join
    ?meet: conj
         | meet "&" conj                -> lattice_meet
    ?conj: unary
         | conj "*" unary               -> strong_conj
    ?unary: postfix
          | "~" unary                   -> negation
    ?postfix: atom
            | postfix "^" NAT           -> repeated
    ?atom: NAT                          -> constant
         | VAR                          -> variable
         | "P" "(" impl ")"             -> nested_modality
         | "(" impl ")"

    ?mequiv: mimpl
           | mequiv "<=>" mimpl         -> modal_equiv
    ?mimpl: madd
          | madd "=>" mimpl             -> modal_impl
    ?madd: munary
         | madd "(+)" munary            -> modal_plus
         | madd "(-)" munary            -> modal_minus
    ?munary: matom
           | "!" munary                 -> modal_neg
           | "D" "(" mequiv ")"         -> modal_delta
    ?matom: NAT                         -> modal_constant
          | "P" "(" impl ")"            -> probability
          | "(" mequiv ")"

    VAR: /x[0-9]+/
    NAT: /[0-9]+/

    %import common.WS
    %ignore WS
"""

_PARSER = Lark(GRAMMAR, start=["product", "modal"], parser="lalr")


class _TreeBuilder(Transformer):
    """Turns lark parse trees into desugared formula trees."""

    def __init__(self, arity: int):
        super().__init__()
        self.arity = arity

    # -------------------------------------------------------
    # product layer
    # -------------------------------------------------------
    def product(self, items):
        return items[0]

    def constant(self, items):
        return _constant(items[0], BOT, TOP)

    def variable(self, items):
        token: Token = items[0]
        index = int(token[1:])
        if index >= self.arity:
            raise UnknownVariableError(
                f"variable {token} at position {token.start_pos} is outside x0..x{self.arity - 1}"
            )
        return Var(index)

    def nested_modality(self, items):
        raise NestedModalityError("the modality P cannot occur inside a product formula")

    def implication(self, items):
        return Impl(items[0], items[1])

    def lattice_join(self, items):
        return Join(items[0], items[1])

    def lattice_meet(self, items):
        return Meet(items[0], items[1])

    def strong_conj(self, items):
        return Conj(items[0], items[1])

    def negation(self, items):
        return neg(items[0])

    def repeated(self, items):
        base, exponent = items
        k = int(exponent)
        if k < 1:
            raise FormulaSyntaxError(
                f"exponent at position {exponent.start_pos} must be at least 1", exponent.start_pos
            )
        return power(base, k)

    # -------------------------------------------------------
    # modal layer
    # -------------------------------------------------------
    def modal(self, items):
        return items[0]

    def modal_constant(self, items):
        return _constant(items[0], MZERO, MONE)

    def probability(self, items):
        return Atom(items[0])

    def modal_neg(self, items):
        return LNeg(items[0])

    def modal_delta(self, items):
        return Delta(items[0])

    def modal_impl(self, items):
        return LImpl(items[0], items[1])

    def modal_plus(self, items):
        return oplus(items[0], items[1])

    def modal_minus(self, items):
        return ominus(items[0], items[1])

    def modal_equiv(self, items):
        return lequiv(items[0], items[1])


def _constant(token: Token, zero, one):
    if token == "0":
        return zero
    if token == "1":
        return one
    raise FormulaSyntaxError(
        f"truth constant at position {token.start_pos} must be 0 or 1, got {token}", token.start_pos
    )


def _parse(text: str, arity: int, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
    except UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        raise FormulaSyntaxError(
            f"syntax error at line {e.line}, column {e.column}:\n{e.get_context(text)}", position
        ) from e
    try:
        return _TreeBuilder(arity).transform(tree)
    except VisitError as e:
        raise e.orig_exc from e


def parse_product(text: str, arity: int) -> Formula:
    """
    Parse a product formula over the variables x0..x(arity-1).

    Raises:
        FormulaSyntaxError: on malformed text, with the offending position.
        UnknownVariableError: when a variable index is not below ``arity``.
        NestedModalityError: when the text contains P(...).
    """
    return _parse(text, arity, "product")


def parse_modal(text: str, arity: int) -> ModalFormula:
    """Parse a modal formula whose P-payloads are product formulas of the given arity."""
    return _parse(text, arity, "modal")


# ----------------------------------------------------------------------
# Printing
# ----------------------------------------------------------------------
# binding strength, larger binds tighter
_IMPL, _JOIN, _MEET, _CONJ, _UNARY, _ATOM = range(1, 7)


def _product_level(f: Formula) -> int:
    match f:
        case Impl(_, Bot()):
            return _UNARY
        case Impl():
            return _IMPL
        case Join():
            return _JOIN
        case Meet():
            return _MEET
        case Conj():
            return _CONJ
    return _ATOM


def _wrap(text: str, level: int, required: int) -> str:
    return f"({text})" if level < required else text


def _print_product(f: Formula, required: int = _IMPL) -> str:
    level = _product_level(f)
    match f:
        case Bot():
            text = "0"
        case Top():
            text = "1"
        case Var(index):
            text = f"x{index}"
        case Impl(arg, Bot()):
            text = "~" + _print_product(arg, _UNARY)
        case Impl(left, right):
            text = f"{_print_product(left, _JOIN)} -> {_print_product(right, _IMPL)}"
        case Join(left, right):
            text = f"{_print_product(left, _JOIN)} | {_print_product(right, _MEET)}"
        case Meet(left, right):
            text = f"{_print_product(left, _MEET)} & {_print_product(right, _CONJ)}"
        case Conj(left, right):
            text = f"{_print_product(left, _CONJ)} * {_print_product(right, _UNARY)}"
        case _:
            raise TypeError(f"not a product formula: {f!r}")
    return _wrap(text, level, required)


_M_IMPL, _M_UNARY = 1, 3


def _print_modal(phi: ModalFormula, required: int = _M_IMPL) -> str:
    match phi:
        case MZero():
            return "0"
        case MOne():
            return "1"
        case Atom(event):
            return f"P({_print_product(event)})"
        case LNeg(arg):
            return "!" + _print_modal(arg, _M_UNARY)
        case Delta(arg):
            return f"D({_print_modal(arg)})"
        case LImpl(left, right):
            text = f"{_print_modal(left, _M_UNARY)} => {_print_modal(right, _M_IMPL)}"
            return _wrap(text, _M_IMPL, required)
    raise TypeError(f"not a modal formula: {phi!r}")


def print_formula(phi: Union[Formula, ModalFormula]) -> str:
    """
    Render a formula with the fewest parentheses the grammar allows.

    Negation is printed as ``~``; every other derived connective is shown in
    primitive form, so ``parse(print_formula(phi))`` rebuilds ``phi`` exactly.
    """
    if isinstance(phi, (MZero, MOne, Atom, LNeg, LImpl, Delta)):
        return _print_modal(phi)
    return _print_product(phi)


def to_tree(phi: Union[Formula, ModalFormula]) -> Any:
    """JSON-friendly nested rendering of a formula tree."""
    match phi:
        case Bot() | MZero():
            return 0
        case Top() | MOne():
            return 1
        case Var(index):
            return {"var": index}
        case Atom(event):
            return {"op": "P", "args": [to_tree(event)]}
        case LNeg(arg):
            return {"op": "lneg", "args": [to_tree(arg)]}
        case Delta(arg):
            return {"op": "delta", "args": [to_tree(arg)]}
        case LImpl(left, right):
            return {"op": "limpl", "args": [to_tree(left), to_tree(right)]}
        case Conj(left, right) | Impl(left, right) | Meet(left, right) | Join(left, right):
            return {"op": type(phi).__name__.lower(), "args": [to_tree(left), to_tree(right)]}
    raise TypeError(f"not a formula: {phi!r}")
