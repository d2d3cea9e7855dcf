from .semantics import (
    Interpretation,
    eval_modal,
    luk_neg,
    luk_impl,
    luk_oplus,
    luk_ominus,
    luk_conj,
    luk_delta,
)
from .axioms import SoundnessReport, axiom_instances, check_soundness
from .problem import ProblemFile, SatProblem, SearchBudget, load_problem, parse_problem
from .search import SearchResult, SearchStatus, entails, sat_search, structural_points


__all__ = [
    "Interpretation",
    "eval_modal",
    "luk_neg",
    "luk_impl",
    "luk_oplus",
    "luk_ominus",
    "luk_conj",
    "luk_delta",
    "SoundnessReport",
    "axiom_instances",
    "check_soundness",
    "ProblemFile",
    "SatProblem",
    "SearchBudget",
    "load_problem",
    "parse_problem",
    "SearchResult",
    "SearchStatus",
    "entails",
    "sat_search",
    "structural_points",
]
