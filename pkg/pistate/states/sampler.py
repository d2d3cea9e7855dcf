"""
Monte-Carlo states: ``s(f)`` as the sample mean of ``f`` under a law on [0,1]^n.

Each evaluation draws from its own stream, derived from the seed and a
stable digest of the printed formula, so results do not depend on the order
of evaluation. ``shared_stream=True`` reuses one sample for every formula,
which makes lattice identities hold sample by sample.
"""

import hashlib
import logging
from abc import ABC, abstractmethod
from typing import Optional, Sequence, Union

import numpy as np

from ..config import settings
from ..core.exceptions import SamplerError, StateDefinitionError
from ..core.formula import Formula, evaluate_array
from ..core.syntax import print_formula
from .base import Estimate, State

logger = logging.getLogger(__name__)

_MAX_REDRAWS = 64


# ----------------------------------------------------------------------
# Laws
# ----------------------------------------------------------------------
class Law(ABC):
    """A probability law on [0,1]^n that can be sampled."""

    name: str = "law"

    @abstractmethod
    def _draw(self, rng: np.random.Generator, size: int, arity: int) -> np.ndarray:
        pass

    def draw(self, rng: np.random.Generator, size: int, arity: int) -> np.ndarray:
        """
        Draw ``size`` rows. Continuous laws put no mass on faces, so rows with an
        exact zero are drawn again.
        """
        samples = self._draw(rng, size, arity)
        for _ in range(_MAX_REDRAWS):
            bad = np.any(samples == 0.0, axis=1)
            if not bad.any():
                return samples
            samples[bad] = self._draw(rng, int(bad.sum()), arity)
        raise SamplerError(f"{self.name} kept producing zero coordinates")


class UniformLaw(Law):
    name = "uniform"

    def _draw(self, rng, size, arity):
        return rng.random((size, arity))


class ProductBetaLaw(Law):
    name = "product-beta"

    def __init__(self, params: Sequence[tuple[float, float]]):
        if not params:
            raise StateDefinitionError("product-beta needs at least one (alpha, beta) pair")
        if any(a <= 0 or b <= 0 for a, b in params):
            raise StateDefinitionError("beta parameters must be positive")
        self.params = [(float(a), float(b)) for a, b in params]

    def _draw(self, rng, size, arity):
        params = self.params * arity if len(self.params) == 1 else self.params
        if len(params) != arity:
            raise StateDefinitionError(f"{len(params)} beta pairs for arity {arity}")
        return np.column_stack([rng.beta(a, b, size) for a, b in params])


class AtomMixLaw(Law):
    """Finite mixture of laws and point atoms; atoms may sit on faces."""

    name = "atom-mix"

    def __init__(self, components: Sequence[tuple[float, Union[Law, Sequence[float]]]]):
        if not components:
            raise StateDefinitionError("atom-mix needs at least one component")
        weights = np.array([float(w) for w, _ in components])
        if np.any(weights <= 0) or not np.isclose(weights.sum(), 1.0):
            raise StateDefinitionError("atom-mix weights must be positive and sum to 1")
        self.weights = weights / weights.sum()
        self.components = [c for _, c in components]

    def _draw(self, rng, size, arity):
        which = rng.choice(len(self.components), size=size, p=self.weights)
        samples = np.empty((size, arity))
        for k, component in enumerate(self.components):
            rows = which == k
            count = int(rows.sum())
            if not count:
                continue
            if isinstance(component, Law):
                samples[rows] = component.draw(rng, count, arity)
            else:
                point = np.asarray(component, dtype=float)
                if point.shape != (arity,):
                    raise StateDefinitionError(f"atom {list(component)} does not have arity {arity}")
                samples[rows] = point
        return samples

    def draw(self, rng, size, arity):
        # faces are allowed here: continuous components already redraw their own zeros
        return self._draw(rng, size, arity)


# ----------------------------------------------------------------------
# State
# ----------------------------------------------------------------------
def formula_digest(formula: Formula) -> int:
    digest = hashlib.blake2b(print_formula(formula).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


class SamplerState(State):
    """
    Approximate state ``s(f) = (1/N) sum_k f(X_k)`` with ``X_k`` drawn from a law.

    Deterministic for a fixed (law, N, seed).
    """

    exact = False

    def __init__(
        self,
        law: Law,
        arity: int,
        n_samples: Optional[int] = None,
        seed: Optional[int] = None,
        shared_stream: bool = False,
    ) -> None:
        super().__init__(arity)
        self.law = law
        self.n_samples = settings.sampler_samples if n_samples is None else n_samples
        if self.n_samples < 2:
            raise StateDefinitionError("a sampler needs at least two samples")
        self.seed = settings.default_seed if seed is None else seed
        if self.seed < 0:
            raise StateDefinitionError("sampler seeds must be non-negative")
        self.shared_stream = shared_stream
        self._shared: Optional[np.ndarray] = None

    def samples_for(self, formula: Formula) -> np.ndarray:
        if self.shared_stream:
            if self._shared is None:
                self._shared = self.law.draw(np.random.default_rng(self.seed), self.n_samples, self.arity)
            return self._shared
        rng = np.random.default_rng([self.seed, formula_digest(formula)])
        return self.law.draw(rng, self.n_samples, self.arity)

    def estimate(self, formula: Formula) -> Estimate:
        self.check_arity(formula)
        values = evaluate_array(formula, self.samples_for(formula))
        mean = float(np.mean(values))
        stderr = float(np.std(values, ddof=1) / np.sqrt(values.size))
        logger.debug("sampled %s: %.6f +/- %.6f", print_formula(formula), mean, stderr)
        return Estimate(mean, stderr)

    def _evaluate(self, formula: Formula) -> float:
        values = evaluate_array(formula, self.samples_for(formula))
        return float(np.mean(values))

    def __str__(self) -> str:
        return f"Sampler<{self.law.name}, n={self.n_samples}, seed={self.seed}>"
