from .base import Estimate, State, Value, state_eval
from .mixture import DiracState, MixtureState, convex_combination
from .limit import LimitState, MapState
from .sampler import AtomMixLaw, Law, ProductBetaLaw, SamplerState, UniformLaw
from .harness import (
    AxiomReport,
    IdentityReport,
    Violation,
    check_state_axioms,
    check_s4_prime,
    check_homomorphism,
    close_under_atoms,
    derived_identities,
    find_multiplicativity_witness,
)
from .conditional import tau_epsilon, cell_decomposition_eval
from .schema import load_state, parse_state, state_from_description, state_to_description


__all__ = [
    "Estimate",
    "State",
    "Value",
    "state_eval",
    "DiracState",
    "MixtureState",
    "convex_combination",
    "LimitState",
    "MapState",
    "Law",
    "UniformLaw",
    "ProductBetaLaw",
    "AtomMixLaw",
    "SamplerState",
    "AxiomReport",
    "IdentityReport",
    "Violation",
    "check_state_axioms",
    "check_s4_prime",
    "check_homomorphism",
    "close_under_atoms",
    "derived_identities",
    "find_multiplicativity_witness",
    "tau_epsilon",
    "cell_decomposition_eval",
    "load_state",
    "parse_state",
    "state_from_description",
    "state_to_description",
]
