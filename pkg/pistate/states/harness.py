"""
Checks of the state axioms and their consequences on finite formula suites.

Exact backends are compared with exact equality. Approximate backends get a
band of ``tol`` plus three combined standard errors of the values involved.
"""

import logging
import math
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence, Union

from pydantic import BaseModel, Field

from ..config import settings
from ..core.cells import atom_formula, enumerate_sigma
from ..core.formula import BOT, TOP, Conj, Formula, Impl, Join, Meet, Var, biconditional, neg
from ..core.pwl import implies, is_tautology, is_zero, lower, lower_on_cell
from ..core.rational import format_number
from ..core.syntax import print_formula
from .base import State, Value

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------
class Violation(BaseModel):
    axiom: str
    formulas: list[str]
    values: list[Union[str, float]] = Field(default_factory=list)
    message: str = ""


class AxiomReport(BaseModel):
    state: str
    checked: dict[str, int] = Field(default_factory=dict)
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violated(self, axiom: str) -> bool:
        return any(v.axiom == axiom for v in self.violations)

    def count(self, axiom: str) -> None:
        self.checked[axiom] = self.checked.get(axiom, 0) + 1


class IdentityCheck(BaseModel):
    name: str
    applicable: bool
    holds: bool = True
    lhs: Union[str, float, None] = None
    rhs: Union[str, float, None] = None


class IdentityReport(BaseModel):
    state: str
    checks: list[IdentityCheck] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)

    def get(self, name: str) -> IdentityCheck:
        return next(c for c in self.checks if c.name == name)


# ----------------------------------------------------------------------
# Cached evaluation with statistical bands
# ----------------------------------------------------------------------
class CachedValues:
    def __init__(self, state: State, tol: float):
        self.state = state
        self.tol = tol
        self._cache: dict[Formula, tuple[Value, float]] = {}

    def __call__(self, f: Formula) -> Value:
        return self._get(f)[0]

    def _get(self, f: Formula) -> tuple[Value, float]:
        if f not in self._cache:
            self._cache[f] = tuple(self.state.estimate(f))
        return self._cache[f]

    def band(self, *formulas: Formula) -> Value:
        if self.state.exact:
            return 0
        return self.tol + 3 * math.sqrt(sum(self._get(f)[1] ** 2 for f in formulas))

    def close(self, a: Value, b: Value, *formulas: Formula) -> bool:
        return abs(a - b) <= self.band(*formulas)

    def fmt(self, *values: Value) -> list:
        return [format_number(v, settings.float_digits) for v in values]


def _arity(state: State, formulas: Iterable[Formula]) -> int:
    for f in formulas:
        state.check_arity(f)
    return state.arity


# ----------------------------------------------------------------------
# Axioms
# ----------------------------------------------------------------------
def check_state_axioms(state: State, formulas: Sequence[Formula], tol: float = 0.0) -> AxiomReport:
    """
    Check normalisation, lattice additivity, monotonicity and the double-negation condition.

    S1 is checked on the constants, S2 on every pair of the sample, S3 on every
    ordered pair whose implication is a tautology and S4 on every formula that
    is not the bottom element.

    Args:
        state (State): the map under test.
        formulas: the sample.
        tol (float): extra slack for approximate backends; ignored by exact ones.

    Returns:
        AxiomReport: every violated instance.
    """
    n = _arity(state, formulas)
    s = CachedValues(state, tol)
    report = AxiomReport(state=str(state))
    formulas = list(dict.fromkeys(formulas))

    report.count("S1")
    if not s.close(s(TOP), 1, TOP) or not s.close(s(BOT), 0, BOT):
        report.violations.append(
            Violation(axiom="S1", formulas=["1", "0"], values=s.fmt(s(TOP), s(BOT)),
                      message="s(1) must be 1 and s(0) must be 0")
        )

    for f, g in combinations(formulas, 2):
        report.count("S2")
        lhs = s(Meet(f, g)) + s(Join(f, g))
        rhs = s(f) + s(g)
        if not s.close(lhs, rhs, Meet(f, g), Join(f, g), f, g):
            report.violations.append(
                Violation(axiom="S2", formulas=[print_formula(f), print_formula(g)],
                          values=s.fmt(lhs, rhs), message="s(f&g) + s(f|g) != s(f) + s(g)")
            )

    for f, g in permutations(formulas, 2):
        if not implies(f, g, n):
            continue
        report.count("S3")
        if s(f) > s(g) + s.band(f, g):
            report.violations.append(
                Violation(axiom="S3", formulas=[print_formula(f), print_formula(g)],
                          values=s.fmt(s(f), s(g)), message="f -> g is a tautology but s(f) > s(g)")
            )

    for f in formulas:
        if is_tautology(neg(f), n):
            continue
        report.count("S4")
        nnf = neg(neg(f))
        if abs(s(f)) <= s.band(f) and s(nnf) > s.band(nnf):
            report.violations.append(
                Violation(axiom="S4", formulas=[print_formula(f)], values=s.fmt(s(f), s(nnf)),
                          message="f != 0 and s(f) = 0 but s(~~f) > 0")
            )

    logger.info("%s: %d violations over %s", state, len(report.violations), report.checked)
    return report


def check_s4_prime(state: State, formulas: Sequence[Formula], tol: float = 0.0) -> AxiomReport:
    """For every formula and cell where ``f & p_eps != 0``: ``s(f & p_eps) = 0`` forces ``s(p_eps) = 0``."""
    _arity(state, formulas)
    s = CachedValues(state, tol)
    report = AxiomReport(state=str(state))
    for f in dict.fromkeys(formulas):
        for cell in enumerate_sigma(state.arity):
            if lower_on_cell(f, cell).is_zero:
                continue
            report.count("S4'")
            atom = atom_formula(cell)
            restricted = Meet(f, atom)
            if abs(s(restricted)) <= s.band(restricted) and s(atom) > s.band(atom):
                report.violations.append(
                    Violation(axiom="S4'", formulas=[print_formula(f), str(cell)],
                              values=s.fmt(s(restricted), s(atom)),
                              message="s(f & p_eps) = 0 but s(p_eps) > 0")
                )
    return report


def close_under_atoms(formulas: Sequence[Formula], n: int) -> list[Formula]:
    """The sample together with ``f & p_eps`` for every member and cell."""
    atoms = [atom_formula(cell) for cell in enumerate_sigma(n)]
    closed = list(formulas) + [Meet(f, a) for f in formulas for a in atoms]
    return list(dict.fromkeys(closed))


# ----------------------------------------------------------------------
# Derived identities
# ----------------------------------------------------------------------
def derived_identities(state: State, f: Formula, g: Formula, tol: float = 0.0) -> IdentityReport:
    """
    Consequences of the axioms on one pair:

    - ``iv``: s(~h) + s(~~h) = 1 for h = f and h = g;
    - ``ii``: s(f|g) = s(f) + s(g) when f & g = 0;
    - ``iii``: s(f&g) = s(f) + s(g) - 1 when f | g = 1;
    - ``iii-biconditional``: s(f<->g) = s(f->g) + s(g->f) - 1, always;
    - ``i-partition``: the atoms carry total mass 1;
    - ``i-additive``: s(~~h) is the mass of the atoms of the cells where h > 0.
    """
    n = _arity(state, [f, g])
    s = CachedValues(state, tol)
    report = IdentityReport(state=str(state))

    def record(name, applicable, lhs=None, rhs=None, *formulas):
        if not applicable:
            report.checks.append(IdentityCheck(name=name, applicable=False))
            return
        lhs_text, rhs_text = s.fmt(lhs, rhs)
        report.checks.append(
            IdentityCheck(name=name, applicable=True, holds=s.close(lhs, rhs, *formulas),
                          lhs=lhs_text, rhs=rhs_text)
        )

    for label, h in (("f", f), ("g", g)):
        record(f"iv:{label}", True, s(neg(h)) + s(neg(neg(h))), 1, neg(h), neg(neg(h)))

    disjoint = is_zero(Meet(f, g), n)
    record("ii", disjoint, s(Join(f, g)), s(f) + s(g), Join(f, g), f, g)

    covering = is_tautology(Join(f, g), n)
    record("iii", covering, s(Meet(f, g)), s(f) + s(g) - 1, Meet(f, g), f, g)

    bic = biconditional(f, g)
    record("iii-biconditional", True, s(bic), s(Impl(f, g)) + s(Impl(g, f)) - 1, bic, Impl(f, g), Impl(g, f))

    cells = enumerate_sigma(n)
    atoms = {cell: atom_formula(cell) for cell in cells}
    record("i-partition", True, sum((s(a) for a in atoms.values()), Fraction(0)), 1, *atoms.values())

    for label, h in (("f", f), ("g", g)):
        support = [atoms[cell] for cell, cf in lower(h, n).items() if not cf.is_zero]
        mass = sum((s(a) for a in support), Fraction(0))
        record(f"i-additive:{label}", True, s(neg(neg(h))), mass, neg(neg(h)), *support)

    return report


# ----------------------------------------------------------------------
# Homomorphisms
# ----------------------------------------------------------------------
def _product_residuum(a: Value, b: Value) -> Value:
    return 1 if a <= b else b / a


def check_homomorphism(state: State, pairs: Sequence[tuple[Formula, Formula]], tol: float = 0.0) -> AxiomReport:
    """Check that the state commutes with every connective on the given pairs."""
    _arity(state, [h for pair in pairs for h in pair])
    s = CachedValues(state, tol)
    report = AxiomReport(state=str(state))
    for f, g in pairs:
        a, b = s(f), s(g)
        expected = {
            "conj": (Conj(f, g), a * b),
            "meet": (Meet(f, g), min(a, b)),
            "join": (Join(f, g), max(a, b)),
            "impl": (Impl(f, g), _product_residuum(a, b)),
        }
        for name, (composite, value) in expected.items():
            report.count(name)
            if not s.close(s(composite), value, composite, f, g):
                report.violations.append(
                    Violation(axiom=name, formulas=[print_formula(f), print_formula(g)],
                              values=s.fmt(s(composite), value),
                              message=f"s does not commute with {name}")
                )
    return report


class MultiplicativityWitness(BaseModel):
    formula: str
    value: Union[str, float]
    squared: Union[str, float]


def find_multiplicativity_witness(state: State) -> Optional[MultiplicativityWitness]:
    """
    Look for ``x_i * x_i`` with ``s(x_i * x_i) != s(x_i)^2``.

    A mixture whose support points differ in coordinate i has a strictly
    positive variance there, so the search succeeds on every non-Dirac mixture.
    """
    for i in range(state.arity):
        x = Var(i)
        square = state.evaluate(Conj(x, x))
        expected = state.evaluate(x) ** 2
        if square != expected:
            return MultiplicativityWitness(
                formula=print_formula(Conj(x, x)),
                value=format_number(square, settings.float_digits),
                squared=format_number(expected, settings.float_digits),
            )
    return None
