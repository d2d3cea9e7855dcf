"""
Distributions on the spectrum of the one-generator free algebra, and the
bijection between them and states.

The spectrum has the points ``<~x>``, ``<~~x>`` and the chain
``<x> >= <x^2> >= ...``, plus one extra limit point below the whole chain
that carries ``lim_n s(x^n)``. A state ``s`` gives the distribution

    d(<~x>)   = s(~x)
    d(<~~x>)  = s(~~x) - s(x)
    d(<x^n>)  = s(x^n) - s(x^(n+1))
    d(limit)  = lim_n s(x^n)

and a distribution gives back ``s_d(z)``, the mass of the points below ``z``.
Chain masses are stored as an explicit prefix followed by finitely many
geometric tails ``c * r^n``, which is exactly what finite mixtures produce.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..core.exceptions import ArityError, DistributionError
from ..core.formula import BOT, TOP, Formula, Join, Var, neg, power
from ..core.generate import random_rational
from ..core.rational import Rational, format_number
from ..core.syntax import print_formula
from ..states.base import State, Value
from ..states.harness import AxiomReport, Violation, CachedValues
from ..states.mixture import MixtureState
from .canon import Fp1Canon, canonicalize

logger = logging.getLogger(__name__)

_X = Var(0)


# ----------------------------------------------------------------------
# Distributions
# ----------------------------------------------------------------------
class GeometricTail(BaseModel):
    """Chain masses ``c * r^n`` beyond the prefix."""

    model_config = ConfigDict(frozen=True)

    c: Rational
    r: Rational

    @model_validator(mode="after")
    def _check(self):
        if self.c <= 0:
            raise DistributionError(f"tail coefficient must be positive, got {self.c}")
        if not 0 < self.r < 1:
            raise DistributionError(f"tail ratio must lie in (0, 1), got {self.r}")
        return self


class SpectrumDist(BaseModel):
    model_config = ConfigDict(frozen=True)

    neg: Rational = Fraction(0)
    nn: Rational = Fraction(0)
    prefix: tuple[Rational, ...] = ()
    tails: tuple[GeometricTail, ...] = ()
    limit: Rational = Fraction(0)

    @model_validator(mode="after")
    def _check_signs(self):
        for name, value in (("neg", self.neg), ("nn", self.nn), ("limit", self.limit)):
            if value < 0:
                raise DistributionError(f"mass {name} is negative: {value}")
        if any(m < 0 for m in self.prefix):
            raise DistributionError("prefix masses must be non-negative")
        return self

    # -------------------------------------------------------
    # Masses
    # -------------------------------------------------------
    @property
    def cutoff(self) -> int:
        return len(self.prefix)

    def chain_mass(self, n: int) -> Fraction:
        """Mass at ``<x^n>``, n >= 1."""
        if n < 1:
            raise ValueError("the chain starts at <x^1>")
        if n <= self.cutoff:
            return self.prefix[n - 1]
        return sum((t.c * t.r ** n for t in self.tails), Fraction(0))

    def chain_tail_sum(self, n: int) -> Fraction:
        """Mass of ``{<x^m> : m >= n}``."""
        n = max(n, 1)
        start = max(n, self.cutoff + 1)
        head = sum(self.prefix[n - 1:], Fraction(0))
        return head + sum((t.c * t.r ** start / (1 - t.r) for t in self.tails), Fraction(0))

    def total_mass(self) -> Fraction:
        return self.neg + self.nn + self.chain_tail_sum(1) + self.limit

    def value(self, c: Fp1Canon) -> Fraction:
        """``s_d`` on a canonical shape."""
        total = self.neg if c.at_zero else Fraction(0)
        if c.exponent is None:
            return total
        if c.exponent == 0:
            return total + self.nn + self.chain_tail_sum(1) + self.limit
        return total + self.chain_tail_sum(c.exponent) + self.limit

    # -------------------------------------------------------
    # Invariants
    # -------------------------------------------------------
    def validate_invariants(self) -> "SpectrumDist":
        """
        Raises:
            DistributionError: if the total mass is not 1 or condition (D) fails.
        """
        total = self.total_mass()
        if total != 1:
            raise DistributionError(f"total mass is {total}, not 1")
        if not check_condition_D(self):
            raise DistributionError("zeros of the chain are not upward closed")
        return self

    def normalized(self) -> "SpectrumDist":
        """Same distribution with tails of equal ratio merged and sorted by decreasing ratio."""
        merged: dict[Fraction, Fraction] = {}
        for t in self.tails:
            merged[t.r] = merged.get(t.r, Fraction(0)) + t.c
        tails = tuple(GeometricTail(c=c, r=r) for r, c in sorted(merged.items(), reverse=True))
        return self.model_copy(update={"tails": tails})

    def scaled(self, factor) -> "SpectrumDist":
        factor = Fraction(factor)
        return SpectrumDist(
            neg=self.neg * factor,
            nn=self.nn * factor,
            prefix=tuple(m * factor for m in self.prefix),
            tails=tuple(GeometricTail(c=t.c * factor, r=t.r) for t in self.tails),
            limit=self.limit * factor,
        )

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        max_prefix: int = 5,
        max_tails: int = 3,
        denominator: int = 8,
        limit_probability: float = 0.3,
    ) -> "SpectrumDist":
        """A random distribution of total mass 1 satisfying condition (D)."""
        neg_mass = random_rational(rng, denominator, zero_probability=0.3)
        limit = random_rational(rng, denominator) if rng.random() < limit_probability else Fraction(0)
        if rng.random() < 0.2:
            raw = cls(neg=neg_mass or Fraction(1), limit=limit)
        else:
            length = int(rng.integers(0, max_prefix + 1))
            zeros = int(rng.integers(0, length + 2))
            chain = [
                Fraction(0) if k < zeros else Fraction(int(rng.integers(1, denominator + 1)), denominator)
                for k in range(length + 1)
            ]
            tails = tuple(
                GeometricTail(
                    c=Fraction(int(rng.integers(1, denominator + 1)), denominator),
                    r=Fraction(int(rng.integers(1, denominator)), denominator),
                )
                for _ in range(int(rng.integers(1, max_tails + 1)))
            )
            raw = cls(neg=neg_mass, nn=chain[0], prefix=tuple(chain[1:]), tails=tails, limit=limit)
        return raw.scaled(1 / raw.total_mass()).normalized()


def check_condition_D(d: SpectrumDist) -> bool:
    """
    Zeros of ``<~~x>, <x>, <x^2>, ...`` must be upward closed: the sequence of
    masses is some zeros followed only by positive entries. Masses beyond the
    prefix are positive exactly when there is a tail. The limit point is not
    part of the check.
    """
    beyond = Fraction(1) if d.tails else Fraction(0)
    masses = [d.nn, *d.prefix, beyond]
    seen_positive = False
    for m in masses:
        if m > 0:
            seen_positive = True
        elif seen_positive:
            return False
    return True


def parse_dist(data: dict) -> SpectrumDist:
    try:
        return SpectrumDist.model_validate(data)
    except ValidationError as e:
        raise DistributionError(f"invalid distribution: {e}") from e


def load_dist(path: Union[str, Path]) -> SpectrumDist:
    return parse_dist(json.loads(Path(path).read_text(encoding="utf-8")))


# ----------------------------------------------------------------------
# States from distributions
# ----------------------------------------------------------------------
class SpectrumState(State):
    """The state ``s_d`` of a distribution."""

    def __init__(self, dist: SpectrumDist) -> None:
        super().__init__(1)
        self.dist = dist

    def _evaluate(self, formula: Formula) -> Fraction:
        return self.dist.value(canonicalize(formula))

    def __str__(self) -> str:
        return f"SpectrumState({self.dist.model_dump(mode='json')})"


def state_from_dist(d: SpectrumDist) -> SpectrumState:
    """
    Raises:
        DistributionError: if the distribution is not a valid state distribution.
    """
    return SpectrumState(d.validate_invariants())


@dataclass
class ApproximateSpectrum:
    """Distribution read off a black-box state up to a horizon."""

    neg: Value
    nn: Value
    prefix: list[Value] = field(default_factory=list)
    unresolved: Value = 0

    def to_dict(self, digits: int = 12) -> dict:
        return {
            "neg": format_number(self.neg, digits),
            "nn": format_number(self.nn, digits),
            "prefix": [format_number(m, digits) for m in self.prefix],
            "unresolved": format_number(self.unresolved, digits),
        }


def _mixture_dist(state: MixtureState) -> SpectrumDist:
    neg_mass = nn = limit = Fraction(0)
    tails = []
    for w, (t,) in state.components():
        if t == 0:
            neg_mass += w
        elif t == 1:
            limit += w
        else:
            nn += w * (1 - t)
            tails.append(GeometricTail(c=w * (1 - t), r=t))
    return SpectrumDist(neg=neg_mass, nn=nn, tails=tuple(tails), limit=limit).normalized()


def _spectrum_dist(state: SpectrumState) -> SpectrumDist:
    # masses up to the cutoff are read from values; tails and the limit come with the state
    known = state.dist
    x_powers = [state.evaluate(power(_X, n)) for n in range(1, known.cutoff + 2)]
    prefix = tuple(a - b for a, b in zip(x_powers, x_powers[1:]))
    derived = SpectrumDist(
        neg=state.evaluate(neg(_X)),
        nn=state.evaluate(neg(neg(_X))) - x_powers[0],
        prefix=prefix,
        tails=known.tails,
        limit=known.limit,
    )
    return derived.normalized().validate_invariants()


def dist_from_state(state: State, horizon: int = 20) -> Union[SpectrumDist, ApproximateSpectrum]:
    """
    Distribution of a one-variable state.

    Mixtures and spectrum states give an exact ``SpectrumDist``; anything else
    gives an ``ApproximateSpectrum`` with the prefix up to ``horizon`` and the
    mass ``s(x^(horizon+1))`` left unresolved.

    Raises:
        ArityError: if the state does not have arity 1.
    """
    if state.arity != 1:
        raise ArityError(f"spectrum distributions need arity 1, got {state.arity}")
    if isinstance(state, MixtureState):
        return _mixture_dist(state)
    if isinstance(state, SpectrumState):
        return _spectrum_dist(state)
    values = [state.evaluate(power(_X, n)) for n in range(1, horizon + 2)]
    logger.debug("approximate spectrum of %s up to x^%d", state, horizon)
    return ApproximateSpectrum(
        neg=state.evaluate(neg(_X)),
        nn=state.evaluate(neg(neg(_X))) - values[0],
        prefix=[a - b for a, b in zip(values, values[1:])],
        unresolved=values[-1],
    )


# ----------------------------------------------------------------------
# Characterisation of one-variable states
# ----------------------------------------------------------------------
def check_fp1_conditions(state: State, horizon: int = 10, tol: float = 0.0) -> AxiomReport:
    """
    Check the conditions that characterise states of the one-generator algebra:

    - ``normalization``: s(1) = 1 and s(0) = 0;
    - ``negation-sum``: s(~x) + s(~~x) = 1;
    - ``chain-positivity``: s(~~x), s(x), s(x^2), ... are all 0 or all positive;
    - ``chain-monotone``: s(x^n) <= s(x^m) whenever n >= m;
    - ``join-additivity``: s(x^n | ~x) = s(x^n) + s(~x).

    Powers are checked up to ``horizon``.
    """
    if state.arity != 1:
        raise ArityError(f"expected a state of arity 1, got {state.arity}")
    s = CachedValues(state, tol)
    report = AxiomReport(state=str(state))

    def violation(axiom: str, formulas: Sequence[Formula], values: Sequence[Value], message: str):
        report.violations.append(
            Violation(axiom=axiom, formulas=[print_formula(f) for f in formulas],
                      values=s.fmt(*values), message=message)
        )

    report.count("normalization")
    if not s.close(s(TOP), 1, TOP) or not s.close(s(BOT), 0, BOT):
        violation("normalization", [TOP, BOT], [s(TOP), s(BOT)], "s(1) must be 1 and s(0) must be 0")

    nx, nnx = neg(_X), neg(neg(_X))
    report.count("negation-sum")
    if not s.close(s(nx) + s(nnx), 1, nx, nnx):
        violation("negation-sum", [nx, nnx], [s(nx), s(nnx)], "s(~x) + s(~~x) != 1")

    chain = [nnx] + [power(_X, n) for n in range(1, horizon + 1)]
    zero = [abs(s(f)) <= s.band(f) for f in chain]
    report.count("chain-positivity")
    if any(zero) and not all(zero):
        violation("chain-positivity", chain, [s(f) for f in chain], "chain values mix zeros and positives")

    for m in range(1, horizon + 1):
        for n in range(m + 1, horizon + 1):
            report.count("chain-monotone")
            xn, xm = power(_X, n), power(_X, m)
            if s(xn) > s(xm) + s.band(xn, xm):
                violation("chain-monotone", [xn, xm], [s(xn), s(xm)], "s(x^n) > s(x^m) with n > m")

    for n in range(1, horizon + 1):
        report.count("join-additivity")
        xn = power(_X, n)
        joined = Join(xn, nx)
        if not s.close(s(joined), s(xn) + s(nx), joined, xn, nx):
            violation("join-additivity", [joined], [s(joined), s(xn) + s(nx)], "s(x^n | ~x) != s(x^n) + s(~x)")

    return report
