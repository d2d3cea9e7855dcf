"""
Countermodel search over finitely supported mixtures.

A candidate support ``t_1..t_m`` turns every atomic value into a linear form
in the mixture weights, ``sigma(f) = sum_j w_j f(t_j)``. Once every
``D``-subformula is fixed to 0 or 1 and every implication whose value is
needed as a number is fixed to saturated or not, each constraint on a
statement becomes a set of linear inequalities, and one exact LP over
``w >= 0, sum w = 1`` decides the pattern.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from ..config import settings
from ..core.cells import enumerate_sigma, interior_point
from ..core.exceptions import ModalError
from ..core.formula import (
    Atom,
    Delta,
    Formula,
    LImpl,
    LNeg,
    ModalFormula,
    MOne,
    MZero,
    evaluate,
    modal_subformulas,
)
from ..core.generate import random_point
from ..core.lp import find_feasible_point
from ..core.rational import format_number
from ..core.syntax import print_formula
from ..states.mixture import MixtureState
from .problem import SatProblem
from .semantics import eval_modal

logger = logging.getLogger(__name__)


class SearchStatus(str, Enum):
    SAT = "SAT"
    NO_WITNESS_FOUND = "NO_WITNESS_FOUND"
    COUNTERMODEL = "COUNTERMODEL"
    HOLDS_ON_BUDGET = "HOLDS_ON_BUDGET"


@dataclass
class SearchResult:
    status: SearchStatus
    witness: Optional[MixtureState] = None
    trace: dict[str, object] = field(default_factory=dict)
    diagnostics: dict[str, int] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None


# ----------------------------------------------------------------------
# Linear encoding
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class _Lin:
    """``coeffs . w + const``."""

    coeffs: tuple[Fraction, ...]
    const: Fraction

    def __add__(self, other: "_Lin") -> "_Lin":
        return _Lin(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.const + other.const)

    def __neg__(self) -> "_Lin":
        return _Lin(tuple(-a for a in self.coeffs), -self.const)

    def __sub__(self, other: "_Lin") -> "_Lin":
        return self + (-other)


class _NeedsCase(Exception):
    def __init__(self, node: LImpl):
        self.node = node


class _Encoder:
    """
    Collects rows ``a . w <= b`` for one support and one case pattern.

    ``delta_bits`` fixes every D-subformula, ``impl_bits`` fixes the
    implications met in value position; an implication without a bit stops the
    encoding with ``_NeedsCase``.
    """

    def __init__(self, atoms: dict[Formula, tuple[Fraction, ...]], m: int, delta: Fraction,
                 delta_bits: dict[Delta, int], impl_bits: dict[LImpl, int]):
        self.atoms = atoms
        self.m = m
        self.delta = delta
        self.delta_bits = delta_bits
        self.impl_bits = impl_bits
        self.a_ub: list[tuple[Fraction, ...]] = []
        self.b_ub: list[Fraction] = []

    def constant(self, c) -> _Lin:
        return _Lin((Fraction(0),) * self.m, Fraction(c))

    def leq(self, expr: _Lin, bound) -> None:
        self.a_ub.append(expr.coeffs)
        self.b_ub.append(Fraction(bound) - expr.const)

    # value position
    def value(self, phi: ModalFormula) -> _Lin:
        match phi:
            case MZero():
                return self.constant(0)
            case MOne():
                return self.constant(1)
            case Atom(event):
                return _Lin(self.atoms[event], Fraction(0))
            case LNeg(arg):
                return self.constant(1) - self.value(arg)
            case Delta():
                return self.constant(self.delta_bits[phi])
            case LImpl(left, right):
                if phi not in self.impl_bits:
                    raise _NeedsCase(phi)
                y, z = self.value(left), self.value(right)
                if self.impl_bits[phi]:
                    self.leq(y - z, 0)
                    return self.constant(1)
                self.leq(z - y, 0)
                return self.constant(1) - y + z
        raise TypeError(f"not a modal formula: {phi!r}")

    # threshold position
    def at_least(self, phi: ModalFormula, c: Fraction) -> None:
        if c <= 0:
            return
        match phi:
            case LNeg(arg):
                self.at_most(arg, 1 - c)
            case LImpl(left, right):
                self.leq(self.value(left) - self.value(right), 1 - c)
            case _:
                self.leq(-self.value(phi), -c)

    def at_most(self, phi: ModalFormula, c: Fraction) -> None:
        if c >= 1:
            return
        match phi:
            case LNeg(arg):
                self.at_least(arg, 1 - c)
            case LImpl(left, right):
                self.leq(self.value(right) - self.value(left), c - 1)
            case _:
                self.leq(self.value(phi), c)

    def pin_deltas(self) -> None:
        for node, bit in self.delta_bits.items():
            if bit:
                self.at_least(node.arg, Fraction(1))
            else:
                self.at_most(node.arg, 1 - self.delta)


# ----------------------------------------------------------------------
# Supports
# ----------------------------------------------------------------------
def structural_points(arity: int, grid_max_arity: int) -> list[tuple[Fraction, ...]]:
    """Interior points of every cell, plus the grid ``{0, 1/2, 1}^n`` for small arities."""
    points = [interior_point(cell) for cell in enumerate_sigma(arity)]
    if arity <= grid_max_arity:
        levels = (Fraction(0), Fraction(1, 2), Fraction(1))
        points.extend(itertools.product(levels, repeat=arity))
    return list(dict.fromkeys(points))


def _supports(problem: SatProblem, n_events: int):
    budget = problem.budget
    size = budget.support_size(n_events)
    base = structural_points(problem.arity, budget.grid_max_arity)
    rng = np.random.default_rng(budget.seed)
    for _ in range(math.ceil(budget.samples / size)):
        drawn = [random_point(rng, problem.arity, budget.denominator) for _ in range(size)]
        yield list(dict.fromkeys(base + drawn))


# ----------------------------------------------------------------------
# Search
# ----------------------------------------------------------------------
def _delta_nodes(statements) -> list[Delta]:
    seen: dict[Delta, None] = {}
    for phi in statements:
        for node in modal_subformulas(phi):
            if isinstance(node, Delta):
                seen.setdefault(node, None)
    return list(seen)


def _verify(problem: SatProblem, witness: MixtureState) -> bool:
    if any(eval_modal(witness, phi) != 1 for phi in problem.gamma):
        return False
    return problem.target is None or eval_modal(witness, problem.target) < 1


def _trace(problem: SatProblem, witness: MixtureState) -> dict[str, object]:
    digits = settings.float_digits
    trace: dict[str, object] = {
        "events": {print_formula(e): format_number(witness.evaluate(e), digits) for e in problem.events},
        "gamma": [format_number(eval_modal(witness, phi), digits) for phi in problem.gamma],
    }
    if problem.target is not None:
        trace["target"] = format_number(eval_modal(witness, problem.target), digits)
    return trace


def sat_search(problem: SatProblem) -> SearchResult:
    """
    Look for a finite mixture giving every premise the value 1 (and the
    target, when present, a value below 1).

    Witnesses are verified exactly before they are returned. Failure is
    reported as ``NO_WITNESS_FOUND``, never as unsatisfiability.
    """
    budget = problem.budget
    statements = problem.statements
    evs = problem.events
    deltas = _delta_nodes(statements)
    diagnostics = {"supports": 0, "patterns": 0, "lp_calls": 0}

    for support in _supports(problem, len(evs)):
        diagnostics["supports"] += 1
        m = len(support)
        atoms = {e: tuple(evaluate(e, t) for t in support) for e in evs}
        for bits in itertools.product((1, 0), repeat=len(deltas)):
            delta_bits = dict(zip(deltas, bits))
            stack: list[dict[LImpl, int]] = [{}]
            while stack:
                impl_bits = stack.pop()
                encoder = _Encoder(atoms, m, budget.delta, delta_bits, impl_bits)
                try:
                    encoder.pin_deltas()
                    for phi in problem.gamma:
                        encoder.at_least(phi, Fraction(1))
                    if problem.target is not None:
                        encoder.at_most(problem.target, 1 - budget.delta)
                except _NeedsCase as case:
                    # saturated first
                    stack.append({**impl_bits, case.node: 0})
                    stack.append({**impl_bits, case.node: 1})
                    continue
                diagnostics["patterns"] += 1
                diagnostics["lp_calls"] += 1
                weights = find_feasible_point(
                    encoder.a_ub, encoder.b_ub, [[Fraction(1)] * m], [Fraction(1)], m
                )
                if weights is None:
                    continue
                witness = MixtureState.merged(support, weights)
                if _verify(problem, witness):
                    logger.info("witness %s after %s", witness, diagnostics)
                    return SearchResult(SearchStatus.SAT, witness, _trace(problem, witness), diagnostics)
                logger.debug("LP point failed exact verification: %s", witness)
    logger.info("no witness within budget: %s", diagnostics)
    return SearchResult(SearchStatus.NO_WITNESS_FOUND, diagnostics=diagnostics)


def entails(problem: SatProblem) -> SearchResult:
    """
    Search for a countermodel: premises at 1 and target below 1.

    ``HOLDS_ON_BUDGET`` only says that no countermodel was found.
    """
    if problem.target is None:
        raise ModalError("entailment needs a target")
    result = sat_search(problem)
    if result.found:
        result.status = SearchStatus.COUNTERMODEL
    else:
        result.status = SearchStatus.HOLDS_ON_BUDGET
    return result
