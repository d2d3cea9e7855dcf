import numpy as np
import pytest

from pistate.core import Var, parse_product
from pistate.core.exceptions import StateDefinitionError
from pistate.states import (
    AtomMixLaw,
    ProductBetaLaw,
    SamplerState,
    UniformLaw,
    check_state_axioms,
)

x0 = Var(0)


@pytest.fixture(scope="module")
def uniform():
    """
    Uniform sampler on [0, 1] with 10^5 samples.
    """
    return SamplerState(UniformLaw(), 1, n_samples=100_000, seed=42)


def test_uniform_moments(uniform):
    """
    E[t] = 1/2 and E[t^2] = 1/3 under the uniform law.
    """
    assert abs(uniform(x0) - 0.5) < 0.01
    assert abs(uniform(parse_product("x0 * x0", 1)) - 1 / 3) < 0.01


def test_uniform_puts_no_mass_on_zero(uniform):
    """
    ~~x0 is 1 on every sample drawn from a continuous law.
    """
    assert uniform(parse_product("~~x0", 1)) == 1.0
    assert uniform(parse_product("~x0", 1)) == 0.0


def test_estimates_carry_a_standard_error(uniform):
    """
    The standard error of the mean of t is about 0.29 / sqrt(N).
    """
    value, stderr = uniform.estimate(x0)
    assert value == uniform(x0)
    assert 0.0005 < stderr < 0.002


def test_evaluation_is_reproducible():
    """
    The same law, size and seed give the same value in any order.
    """
    f, g = x0, parse_product("x0 -> x0 * x0", 1)
    a = SamplerState(UniformLaw(), 1, n_samples=500, seed=5)
    b = SamplerState(UniformLaw(), 1, n_samples=500, seed=5)
    first = (a(f), a(g))
    assert (b(g), b(f)) == (first[1], first[0])


def test_atom_mix_puts_mass_on_the_face():
    """
    Half the mass at 0 halves s(~~x0).
    """
    law = AtomMixLaw([(0.5, UniformLaw()), (0.5, [0.0])])
    s = SamplerState(law, 1, n_samples=20_000, seed=1)
    assert abs(s(parse_product("~~x0", 1)) - 0.5) < 0.02


def test_product_beta_mean():
    """
    Beta(2, 5) has mean 2/7.
    """
    s = SamplerState(ProductBetaLaw([(2, 5)]), 1, n_samples=50_000, seed=3)
    assert abs(s(x0) - 2 / 7) < 0.01


def test_sampler_validation():
    """
    Bad sizes, seeds and laws are rejected.
    """
    with pytest.raises(StateDefinitionError):
        SamplerState(UniformLaw(), 1, n_samples=1)
    with pytest.raises(StateDefinitionError):
        SamplerState(UniformLaw(), 1, seed=-1)
    with pytest.raises(StateDefinitionError):
        ProductBetaLaw([(0, 1)])
    with pytest.raises(StateDefinitionError):
        AtomMixLaw([(0.3, UniformLaw())])


def test_shared_stream_sampler_passes_the_axioms():
    """
    With one sample for all formulas the axioms hold within the statistical band.
    """
    s = SamplerState(UniformLaw(), 2, n_samples=5_000, seed=8, shared_stream=True)
    formulas = [x0, Var(1), parse_product("x0 * x1", 2), parse_product("x0 -> x1", 2)]
    report = check_state_axioms(s, formulas, tol=1e-9)
    assert report.ok, report.violations
