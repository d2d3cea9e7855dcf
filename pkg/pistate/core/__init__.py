from .exceptions import (
    PiStateException,
    FormulaSyntaxError,
    UnknownVariableError,
    NestedModalityError,
    FormulaDepthError,
    ArityError,
    PointError,
    LoweringError,
    CombinationError,
    StateError,
    StateDefinitionError,
    SamplerError,
    DistributionError,
    CanonicalFormError,
    ModalError,
    SearchBudgetError,
    UsageError
)
from .formula import (
    Formula,
    ModalFormula,
    Bot,
    Top,
    Var,
    Conj,
    Impl,
    Meet,
    Join,
    MZero,
    MOne,
    Atom,
    LNeg,
    LImpl,
    Delta,
    BOT,
    TOP,
    MZERO,
    MONE,
    neg,
    power,
    biconditional,
    oplus,
    ominus,
    lconj,
    lequiv,
    evaluate,
    evaluate_array,
    events,
    ValueTable,
)
from .syntax import parse_product, parse_modal, print_formula, to_tree
from .cells import (
    CellIndex,
    Point,
    enumerate_sigma,
    atom_formula,
    atom_join,
    cell_of_point,
    interior_point,
    in_slice,
    parse_cell,
)
from .pwl import (
    LinForm,
    MinMaxTerm,
    CellFunc,
    CellwiseFunc,
    LinearCombination,
    ZERO,
    lower,
    eval_cellwise,
    is_tautology,
    is_zero,
    implies,
    is_equivalent,
    is_boolean,
    equivalent_on_cell,
    normalize_combination,
)


__all__ = [
    "PiStateException",
    "FormulaSyntaxError",
    "UnknownVariableError",
    "NestedModalityError",
    "FormulaDepthError",
    "ArityError",
    "PointError",
    "LoweringError",
    "CombinationError",
    "StateError",
    "StateDefinitionError",
    "SamplerError",
    "DistributionError",
    "CanonicalFormError",
    "ModalError",
    "SearchBudgetError",
    "UsageError",
    "Formula",
    "ModalFormula",
    "Bot",
    "Top",
    "Var",
    "Conj",
    "Impl",
    "Meet",
    "Join",
    "MZero",
    "MOne",
    "Atom",
    "LNeg",
    "LImpl",
    "Delta",
    "BOT",
    "TOP",
    "MZERO",
    "MONE",
    "neg",
    "power",
    "biconditional",
    "oplus",
    "ominus",
    "lconj",
    "lequiv",
    "evaluate",
    "evaluate_array",
    "events",
    "ValueTable",
    "parse_product",
    "parse_modal",
    "print_formula",
    "to_tree",
    "CellIndex",
    "Point",
    "enumerate_sigma",
    "atom_formula",
    "atom_join",
    "cell_of_point",
    "interior_point",
    "in_slice",
    "parse_cell",
    "LinForm",
    "MinMaxTerm",
    "CellFunc",
    "CellwiseFunc",
    "LinearCombination",
    "ZERO",
    "lower",
    "eval_cellwise",
    "is_tautology",
    "is_zero",
    "implies",
    "is_equivalent",
    "is_boolean",
    "equivalent_on_cell",
    "normalize_combination",
]
