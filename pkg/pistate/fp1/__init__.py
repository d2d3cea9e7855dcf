from .canon import (
    Fp1Canon,
    canonicalize,
    canon_conj,
    canon_impl,
    canon_meet,
    canon_join,
    canon_neg,
    canon_fold,
    canon_to_formula,
    canon_eval,
    canon_leq,
    canonical_elements,
)
from .spectrum import (
    GeometricTail,
    SpectrumDist,
    SpectrumState,
    ApproximateSpectrum,
    check_condition_D,
    check_fp1_conditions,
    dist_from_state,
    state_from_dist,
    parse_dist,
    load_dist,
)


__all__ = [
    "Fp1Canon",
    "canonicalize",
    "canon_conj",
    "canon_impl",
    "canon_meet",
    "canon_join",
    "canon_neg",
    "canon_fold",
    "canon_to_formula",
    "canon_eval",
    "canon_leq",
    "canonical_elements",
    "GeometricTail",
    "SpectrumDist",
    "SpectrumState",
    "ApproximateSpectrum",
    "check_condition_D",
    "check_fp1_conditions",
    "dist_from_state",
    "state_from_dist",
    "parse_dist",
    "load_dist",
]
