"""
Maps that are not (necessarily) states.

``LimitState`` is the pointwise limit of the Dirac states at ``t + h*d`` as
``h -> 0+``. Limits of states keep normalisation, lattice additivity and
monotonicity, but the double-negation condition can fail when the path starts
on a face where some coordinate is 0: the limit sees ``x`` as 0 while ``~~x``
stays 1. ``MapState`` wraps an arbitrary callable.
"""

from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..core.cells import CellIndex
from ..core.exceptions import StateDefinitionError
from ..core.formula import Formula
from ..core.pwl import LinForm, lower_on_cell
from ..core.rational import as_fractions
from .base import State, Value


class LimitState(State):
    def __init__(self, point: Sequence, direction: Sequence) -> None:
        try:
            t = as_fractions(point)
            d = as_fractions(direction)
        except ValueError as e:
            raise StateDefinitionError(str(e)) from e
        if len(t) != len(d):
            raise StateDefinitionError("point and direction have different lengths")
        for i, (ti, di) in enumerate(zip(t, d)):
            if not 0 <= ti <= 1:
                raise StateDefinitionError(f"coordinate {i} is {ti}, outside [0, 1]")
            if (ti == 0 and di < 0) or (ti == 1 and di > 0):
                raise StateDefinitionError(f"direction leaves the unit cube at coordinate {i}")
        super().__init__(len(t))
        self.point = t
        self.direction = d
        # cell of t + h*d for all small h > 0
        self.cell = CellIndex(tuple(2 if ti > 0 or di > 0 else 1 for ti, di in zip(t, d)))

    def _key(self, form: LinForm) -> tuple[int, Fraction]:
        # along the path, u_i = log t_i + o(1) when t_i > 0 and u_i = log h + log d_i otherwise
        slope = 0
        value = Fraction(1)
        for a, i in zip(form, self.cell.positive):
            if not a:
                continue
            if self.point[i] == 0:
                slope += a
                value *= self.direction[i] ** a
            else:
                value *= self.point[i] ** a
        # a larger slope drives the form to -infinity faster
        return -slope, value

    def _evaluate(self, formula: Formula) -> Fraction:
        cf = lower_on_cell(formula, self.cell)
        if cf.is_zero:
            return Fraction(0)
        key = min(max(self._key(form) for form in branch) for branch in cf.term.branches)
        neg_slope, value = key
        return Fraction(0) if neg_slope < 0 else value

    def __str__(self) -> str:
        t = ", ".join(str(x) for x in self.point)
        d = ", ".join(str(x) for x in self.direction)
        return f"Limit(({t}) + h*({d}))"


class MapState(State):
    """Any callable from formulas to [0, 1], presented through the State interface."""

    def __init__(
        self,
        arity: int,
        fn: Callable[[Formula], Value],
        exact: bool = True,
        name: Optional[str] = None,
    ) -> None:
        super().__init__(arity)
        self.fn = fn
        self.exact = exact
        self.name = name or "map"

    def _evaluate(self, formula: Formula) -> Value:
        return self.fn(formula)

    def __str__(self) -> str:
        return f"MapState<{self.name}>"
