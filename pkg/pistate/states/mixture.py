from fractions import Fraction
from typing import Sequence

import numpy as np

from ..core.exceptions import PointError, StateDefinitionError
from ..core.formula import Formula, ValueTable
from ..core.generate import random_point, random_weights
from ..core.rational import as_fractions
from .base import State
from .limit import MapState


class MixtureState(State):
    """
    Finite convex combination of point evaluations.

    ``s(f) = sum_j w_j f(t_j)`` with exact rational weights and points. Every
    state is a limit of these, and the countermodel search returns them.
    """

    def __init__(
        self,
        points: Sequence[Sequence],
        weights: Sequence,
        strict: bool = True,
    ) -> None:
        """
        Args:
            points: support points, each a sequence of rationals in [0, 1].
            weights: one positive rational per point.
            strict (bool): check that the weights sum exactly to 1. Turn off
                only to build deliberately broken maps.

        Raises:
            StateDefinitionError: on empty support, mismatched lengths,
                non-positive weights or (when strict) a total other than 1.
            PointError: on a coordinate outside [0, 1].
        """
        if not points:
            raise StateDefinitionError("a mixture needs at least one support point")
        if len(points) != len(weights):
            raise StateDefinitionError(f"{len(points)} points but {len(weights)} weights")
        try:
            pts = [as_fractions(p) for p in points]
            ws = list(as_fractions(weights))
        except ValueError as e:
            raise StateDefinitionError(str(e)) from e
        arity = len(pts[0])
        if any(len(p) != arity for p in pts):
            raise StateDefinitionError("support points have different arities")
        for p in pts:
            for i, t in enumerate(p):
                if not 0 <= t <= 1:
                    raise PointError(f"coordinate {i} of support point is {t}, outside [0, 1]")
        if any(w <= 0 for w in ws):
            raise StateDefinitionError("mixture weights must be positive")
        if strict and sum(ws) != 1:
            raise StateDefinitionError(f"mixture weights sum to {sum(ws)}, not 1")

        super().__init__(arity)
        self.points: tuple[tuple[Fraction, ...], ...] = tuple(pts)
        self.weights: tuple[Fraction, ...] = tuple(ws)
        self._values = ValueTable(self.points)

    def _evaluate(self, formula: Formula) -> Fraction:
        values = self._values(formula)
        return sum((w * v for w, v in zip(self.weights, values) if v), Fraction(0))

    def components(self):
        return zip(self.weights, self.points)

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        arity: int,
        max_support: int = 5,
        denominator: int = 16,
        zero_probability: float = 0.25,
    ) -> "MixtureState":
        size = int(rng.integers(1, max_support + 1))
        points = [random_point(rng, arity, denominator, zero_probability) for _ in range(size)]
        return cls.merged(points, random_weights(rng, size))

    @classmethod
    def merged(cls, points, weights, strict: bool = True) -> "MixtureState":
        """Build a mixture after merging repeated points and dropping zero weights."""
        total: dict[tuple[Fraction, ...], Fraction] = {}
        for p, w in zip(points, weights):
            p = as_fractions(p)
            total[p] = total.get(p, Fraction(0)) + Fraction(w)
        kept = [(p, w) for p, w in total.items() if w != 0]
        return cls([p for p, _ in kept], [w for _, w in kept], strict=strict)

    def __str__(self) -> str:
        parts = ", ".join(
            f"{w}@({', '.join(str(t) for t in p)})" for w, p in zip(self.weights, self.points)
        )
        return f"Mixture({parts})"


class DiracState(MixtureState):
    """Point evaluation ``f -> f(t)``; exactly the homomorphisms into [0,1] with the product t-norm."""

    def __init__(self, point: Sequence) -> None:
        super().__init__([point], [1])

    @property
    def point(self) -> tuple[Fraction, ...]:
        return self.points[0]

    def __str__(self) -> str:
        return f"Dirac(({', '.join(str(t) for t in self.point)}))"


def convex_combination(a: State, b: State, lam) -> State:
    """
    The state ``lam * a + (1 - lam) * b``.

    Mixtures combine into a mixture; any other pair is wrapped in a MapState.
    """
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise StateDefinitionError(f"combination weight must lie in [0, 1], got {lam}")
    if a.arity != b.arity:
        raise StateDefinitionError("cannot combine states of different arities")
    if isinstance(a, MixtureState) and isinstance(b, MixtureState):
        points = list(a.points) + list(b.points)
        weights = [lam * w for w in a.weights] + [(1 - lam) * w for w in b.weights]
        return MixtureState.merged(points, weights)

    return MapState(
        a.arity,
        lambda f: lam * a.evaluate(f) + (1 - lam) * b.evaluate(f),
        exact=a.exact and b.exact,
        name=f"{lam}*{a} + {1 - lam}*{b}",
    )
