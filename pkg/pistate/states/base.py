from abc import ABC, abstractmethod
from fractions import Fraction
from typing import NamedTuple, Union

from ..core.exceptions import ArityError
from ..core.formula import Formula, formula_arity

Value = Union[Fraction, float]


class Estimate(NamedTuple):
    value: Value
    stderr: float


class State(ABC):
    """
    Base class for a state of the free product algebra on ``arity`` generators.

    A state maps product formulas to [0, 1]. Concrete backends decide how:
    - exact backends return Fractions and report zero error;
    - approximate backends return floats together with a standard error.

    Subclasses must implement ``_evaluate``; ``evaluate`` adds the arity check.
    Evaluation is semantic, so logically equivalent formulas get the same value.
    """

    exact: bool = True

    def __init__(self, arity: int) -> None:
        if arity < 1:
            raise ArityError(f"a state needs arity >= 1, got {arity}")
        self.arity = arity

    # -------------------------------------------------------
    # Abstract API
    # -------------------------------------------------------
    @abstractmethod
    def _evaluate(self, formula: Formula) -> Value:
        """
        Value of the state on a formula already known to fit the arity.

        Args:
            formula (Formula): A product formula.

        Returns:
            Fraction | float: The value in [0, 1].
        """
        pass

    # -------------------------------------------------------
    # Public API
    # -------------------------------------------------------
    def check_arity(self, formula: Formula) -> None:
        used = formula_arity(formula)
        if used > self.arity:
            raise ArityError(f"formula uses x{used - 1} but the state has arity {self.arity}")

    def evaluate(self, formula: Formula) -> Value:
        self.check_arity(formula)
        return self._evaluate(formula)

    __call__ = evaluate

    def estimate(self, formula: Formula) -> Estimate:
        """Value together with its standard error, zero for exact backends."""
        return Estimate(self.evaluate(formula), 0.0)

    # -------------------------------------------------------
    # Representation
    # -------------------------------------------------------
    def __str__(self) -> str:
        return f"{type(self).__name__}<arity={self.arity}>"

    __repr__ = __str__


def state_eval(state: State, formula: Formula) -> Value:
    return state.evaluate(formula)
