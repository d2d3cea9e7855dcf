"""
Satisfiability and entailment problems, and their JSON files.

    {"arity": 1, "gamma": ["D(P(~x0))"], "target": "P(x0)",
     "budget": {"support": 6, "samples": 200, "delta": "1/100", "seed": 7}}
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..config import settings
from ..core.exceptions import ModalError, SearchBudgetError
from ..core.formula import ModalFormula, events, modal_arity
from ..core.rational import Rational, to_fraction
from ..core.syntax import parse_modal


def _default_delta() -> Fraction:
    return to_fraction(settings.search_delta)


class SearchBudget(BaseModel):
    """
    Limits of the countermodel search.

    ``support`` is the number of random candidate points per support set
    (2k+2 for k events when unset); ``samples`` is the total number of random
    points drawn over all support sets.
    """

    support: Optional[int] = None
    samples: int = Field(default_factory=lambda: settings.search_samples)
    delta: Rational = Field(default_factory=_default_delta)
    seed: int = Field(default_factory=lambda: settings.default_seed)
    denominator: int = Field(default_factory=lambda: settings.search_denominator)
    grid_max_arity: int = Field(default_factory=lambda: settings.search_grid_max_arity)

    @model_validator(mode="after")
    def _check(self):
        if self.support is not None and self.support < 1:
            raise SearchBudgetError(f"support must be positive, got {self.support}")
        if self.samples < 1:
            raise SearchBudgetError(f"samples must be positive, got {self.samples}")
        if not 0 < self.delta < 1:
            raise SearchBudgetError(f"delta must lie in (0, 1), got {self.delta}")
        if self.denominator < 2:
            raise SearchBudgetError("denominator must be at least 2")
        if self.seed < 0:
            raise SearchBudgetError("seed must be non-negative")
        return self

    def support_size(self, n_events: int) -> int:
        return self.support if self.support is not None else 2 * n_events + 2


class ProblemFile(BaseModel):
    arity: int
    gamma: list[str] = Field(default_factory=list)
    target: Optional[str] = None
    budget: SearchBudget = Field(default_factory=SearchBudget)


@dataclass(frozen=True)
class SatProblem:
    """Premises that must take the value 1 and, optionally, a target that must stay below 1."""

    arity: int
    gamma: tuple[ModalFormula, ...] = ()
    target: Optional[ModalFormula] = None
    budget: SearchBudget = field(default_factory=SearchBudget)

    def __post_init__(self):
        if self.arity < 1:
            raise ModalError(f"arity must be at least 1, got {self.arity}")
        for phi in self.statements:
            if modal_arity(phi) > self.arity:
                raise ModalError(f"a statement needs arity {modal_arity(phi)}, the problem has {self.arity}")

    @property
    def statements(self) -> tuple[ModalFormula, ...]:
        return self.gamma + ((self.target,) if self.target is not None else ())

    @property
    def events(self):
        return events(self.statements)

    @classmethod
    def from_file(cls, desc: ProblemFile) -> "SatProblem":
        return cls(
            arity=desc.arity,
            gamma=tuple(parse_modal(text, desc.arity) for text in desc.gamma),
            target=parse_modal(desc.target, desc.arity) if desc.target is not None else None,
            budget=desc.budget,
        )


def parse_problem(data: dict) -> SatProblem:
    try:
        desc = ProblemFile.model_validate(data)
    except ValidationError as e:
        raise ModalError(f"invalid problem description: {e}") from e
    return SatProblem.from_file(desc)


def load_problem(path: Union[str, Path]) -> SatProblem:
    return parse_problem(json.loads(Path(path).read_text(encoding="utf-8")))
