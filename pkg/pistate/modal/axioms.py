"""
Instances of the probability axioms and a soundness check against a state.

    P1  P(1), and !P(~1)
    P2  P(f | g) <=> P(f) (+) (P(g) (-) P(f & g))
    P3  P(f) => P(g)              when f -> g is a tautology
    P4  D(!P(f)) => !P(~~f)       when ~f is not a tautology
"""

import logging
from typing import Optional, Sequence, Union

from pydantic import BaseModel, Field

from ..config import settings
from ..core.formula import (
    TOP,
    Atom,
    Delta,
    Formula,
    Join,
    LImpl,
    LNeg,
    Meet,
    ModalFormula,
    formula_arity,
    lequiv,
    neg,
    ominus,
    oplus,
)
from ..core.pwl import implies, is_tautology
from ..core.rational import format_number
from ..core.syntax import print_formula
from ..states.base import State
from .semantics import eval_modal

logger = logging.getLogger(__name__)


def axiom_instances(f: Formula, g: Formula, arity: Optional[int] = None) -> list[tuple[str, ModalFormula]]:
    """
    Every axiom instance for the pair ``(f, g)`` whose side condition holds.

    Args:
        f (Formula): first event.
        g (Formula): second event.
        arity (int | None): arity for the side conditions; the arity the
            events need by default.
    """
    n = arity or max(formula_arity(f), formula_arity(g), 1)
    instances = [
        ("P1", Atom(TOP)),
        ("P1", LNeg(Atom(neg(TOP)))),
        ("P2", lequiv(Atom(Join(f, g)), oplus(Atom(f), ominus(Atom(g), Atom(Meet(f, g)))))),
    ]
    if implies(f, g, n):
        instances.append(("P3", LImpl(Atom(f), Atom(g))))
    if not is_tautology(neg(f), n):
        instances.append(("P4", LImpl(Delta(LNeg(Atom(f))), LNeg(Atom(neg(neg(f)))))))
    return instances


class SoundnessViolation(BaseModel):
    axiom: str
    instance: str
    value: Union[str, float]


class SoundnessReport(BaseModel):
    state: str
    checked: int = 0
    violations: list[SoundnessViolation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_soundness(
    sigma: State,
    instances: Sequence[Union[ModalFormula, tuple[str, ModalFormula]]],
    tol: float = 0.0,
) -> SoundnessReport:
    """
    Every instance must take the value 1: exactly for exact states, within
    ``tol`` for approximate ones.
    """
    report = SoundnessReport(state=str(sigma))
    for item in instances:
        name, phi = item if isinstance(item, tuple) else ("instance", item)
        value = eval_modal(sigma, phi)
        report.checked += 1
        holds = value == 1 if sigma.exact else value >= 1 - tol
        if not holds:
            report.violations.append(
                SoundnessViolation(
                    axiom=name,
                    instance=print_formula(phi),
                    value=format_number(value, settings.float_digits),
                )
            )
    logger.info("soundness of %d instances under %s: %d violations", report.checked, sigma, len(report.violations))
    return report
