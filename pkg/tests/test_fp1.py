from fractions import Fraction

import numpy as np
import pytest

from pistate.core import Var, evaluate, implies, parse_product
from pistate.core.exceptions import ArityError, DistributionError
from pistate.core.generate import random_formula
from pistate.fp1 import (
    ApproximateSpectrum,
    Fp1Canon,
    GeometricTail,
    SpectrumDist,
    SpectrumState,
    canon_eval,
    canon_fold,
    canon_leq,
    canon_to_formula,
    canonical_elements,
    canonicalize,
    check_condition_D,
    check_fp1_conditions,
    dist_from_state,
    parse_dist,
    state_from_dist,
)
from pistate.states import DiracState, LimitState, MixtureState, SamplerState, UniformLaw

F = Fraction
x0 = Var(0)


@pytest.fixture
def rng():
    """
    Seeded generator shared by the randomized checks.
    """
    return np.random.default_rng(5)


@pytest.mark.parametrize(
    "text, at_zero, exponent",
    [
        ("~(x0 * x0)", 1, None),
        ("x0^2 | ~x0", 1, 2),
        ("x0 -> x0^2", 1, 1),
        ("~~x0", 0, 0),
        ("x0 & ~x0", 0, None),
        ("x0^2 * x0", 0, 3),
        ("1", 1, 0),
    ],
)
def test_canonical_forms(text, at_zero, exponent):
    """
    Shapes of familiar one-variable formulas.
    """
    assert canonicalize(parse_product(text, 1)) == Fp1Canon(at_zero, exponent)


def test_canonical_form_rejects_two_variables():
    """
    Only formulas in x0 have a one-variable shape.
    """
    with pytest.raises(ArityError):
        canonicalize(parse_product("x0 * x1", 2))


def test_fold_agrees_with_lowering(rng):
    """
    Computing shapes connective by connective gives the lowered shape.
    """
    for _ in range(100):
        f = random_formula(rng, 1, 4)
        assert canon_fold(f) == canonicalize(f)


def test_shapes_evaluate_like_their_formulas(rng):
    """
    A shape and its formula take the same value on a grid.
    """
    grid = [F(k, 8) for k in range(9)]
    for _ in range(50):
        f = random_formula(rng, 1, 4)
        c = canonicalize(f)
        assert all(canon_eval(c, t) == evaluate(f, (t,)) for t in grid)


def test_representatives_and_order():
    """
    Representatives have their own shape; the shape order is implication.
    """
    elements = list(canonical_elements(4))
    assert len(elements) == 12
    for c in elements:
        assert canonicalize(canon_to_formula(c)) == c
    for a in elements:
        for b in elements:
            assert canon_leq(a, b) == implies(canon_to_formula(a), canon_to_formula(b), 1)


def test_distribution_of_a_dirac_state():
    """
    The Dirac state at 1/2 puts 1/2 on <~~x> and (1/2)^(n+1) on <x^n>.
    """
    d = dist_from_state(DiracState([F(1, 2)]))
    assert d.model_dump(mode="json") == {
        "neg": "0",
        "nn": "1/2",
        "prefix": [],
        "tails": [{"c": "1/2", "r": "1/2"}],
        "limit": "0",
    }
    assert d.chain_mass(2) == F(1, 8)


def test_distributions_of_the_endpoints():
    """
    The Dirac state at 1 sits at the limit point, the one at 0 at <~x>.
    """
    one = dist_from_state(DiracState([1]))
    assert one.limit == 1 and one.total_mass() == 1
    zero = dist_from_state(DiracState([0]))
    assert zero.neg == 1 and not zero.tails


def test_condition_D():
    """
    Zeros of the chain must come before every positive mass.
    """
    assert check_condition_D(SpectrumDist(nn=F(0), prefix=(F(0), F(1, 2)), tails=(GeometricTail(c=F(1, 2), r=F(1, 2)),)))
    assert not check_condition_D(SpectrumDist(nn=F(0), prefix=(F(1, 2),), limit=F(1, 2)))
    assert not check_condition_D(SpectrumDist(nn=F(1, 2), prefix=(F(0),), tails=(GeometricTail(c=F(1, 4), r=F(1, 2)),)))
    assert check_condition_D(SpectrumDist(neg=F(1, 2), limit=F(1, 2)))


def test_invalid_distributions_are_rejected():
    """
    Negative masses, bad tails and a total other than 1 raise DistributionError.
    """
    with pytest.raises(DistributionError):
        parse_dist({"neg": "-1/2"})
    with pytest.raises(DistributionError):
        GeometricTail(c=F(1, 2), r=F(1))
    with pytest.raises(DistributionError):
        state_from_dist(SpectrumDist(neg=F(1, 2)))
    with pytest.raises(DistributionError):
        state_from_dist(SpectrumDist(nn=F(0), prefix=(F(1, 2),), limit=F(1, 2)))
    with pytest.raises(DistributionError):
        parse_dist({"prefix": "many"})


def test_mixture_values_are_recovered_from_the_distribution(rng):
    """
    s_d of the distribution of a mixture is the mixture itself.
    """
    for _ in range(10):
        s = MixtureState.random(rng, 1, zero_probability=0.2)
        recovered = state_from_dist(dist_from_state(s))
        for c in canonical_elements(6):
            f = canon_to_formula(c)
            assert recovered(f) == s(f)


def test_distributions_survive_the_state_round_trip(rng):
    """
    A valid distribution is read back exactly from its state.
    """
    for _ in range(50):
        d = SpectrumDist.random(rng)
        assert d.total_mass() == 1
        derived = dist_from_state(state_from_dist(d))
        assert derived.total_mass() == 1
        assert derived.model_dump() == d.model_dump()


def test_small_mixtures_agree_with_their_distribution(rng):
    """
    Mixtures of at most three Dirac states give the same values through their
    distribution on the first canonical shapes.
    """
    shapes = list(canonical_elements(20))
    for _ in range(50):
        s = MixtureState.random(rng, 1, max_support=3)
        d = dist_from_state(s)
        assert d.total_mass() == 1
        for c in shapes:
            assert d.value(c) == s(canon_to_formula(c))


def test_spectrum_state_with_lost_mass_is_rejected():
    """
    Reading the distribution back from a state of total mass 1/2 fails.
    """
    with pytest.raises(DistributionError):
        dist_from_state(SpectrumState(SpectrumDist(neg=F(1, 2))))


def test_spectrum_states_satisfy_the_one_variable_conditions(rng):
    """
    States built from distributions pass every characterising condition.
    """
    for _ in range(5):
        assert check_fp1_conditions(state_from_dist(SpectrumDist.random(rng))).ok


def test_limit_state_fails_chain_positivity():
    """
    s(~~x) = 1 while s(x) = 0 for the limit at 0 from above.
    """
    report = check_fp1_conditions(LimitState([0], [1]), horizon=3)
    assert report.violated("chain-positivity")
    assert not report.violated("negation-sum")


def test_black_box_states_give_approximate_spectra():
    """
    Samplers are read up to the horizon with the rest left unresolved.
    """
    s = SamplerState(UniformLaw(), 1, n_samples=20_000, seed=4)
    d = dist_from_state(s, horizon=3)
    assert isinstance(d, ApproximateSpectrum)
    assert len(d.prefix) == 3
    assert abs(d.nn - 0.5) < 0.02
    assert set(d.to_dict()) == {"neg", "nn", "prefix", "unresolved"}


def test_distributions_need_arity_one():
    """
    Only one-variable states have a spectrum distribution.
    """
    with pytest.raises(ArityError):
        dist_from_state(DiracState([0, 0]))
