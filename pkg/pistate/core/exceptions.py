from typing import Optional


# -------------------------
# Base Exception
# -------------------------
class PiStateException(Exception):
    """Base exception class for the pistate library."""
    pass


# -------------------------
# Syntax Exceptions
# -------------------------
class FormulaSyntaxError(PiStateException):
    """Raised when formula text does not conform to the grammar."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class UnknownVariableError(PiStateException):
    """Raised when a formula mentions a variable outside x0..x(arity-1)."""
    pass


class NestedModalityError(PiStateException):
    """Raised when the modality P occurs inside a product formula."""
    pass


class FormulaDepthError(PiStateException):
    """Raised when a formula nests deeper than the recursive passes can follow."""
    pass


# -------------------------
# Semantic Exceptions
# -------------------------
class ArityError(PiStateException):
    """Raised when a formula, point, cell or state disagree on the number of variables."""
    pass


class PointError(PiStateException):
    """Raised when a coordinate (or slice level) lies outside its admissible range."""
    pass


class LoweringError(PiStateException):
    """Raised when the cellwise representation of a formula breaks one of its invariants."""
    pass


class CombinationError(PiStateException):
    """Raised when a linear combination of formulas is malformed."""
    pass


# -------------------------
# State Exceptions
# -------------------------
class StateError(PiStateException):
    """Base exception for state backends."""
    pass


class StateDefinitionError(StateError):
    """Raised when a state is built from invalid data (bad weights, bad law, bad file)."""
    pass


class SamplerError(StateError):
    """Raised when a Monte-Carlo law cannot produce admissible samples."""
    pass


# -------------------------
# One-variable duality Exceptions
# -------------------------
class DistributionError(PiStateException):
    """Raised when a spectrum distribution violates total mass, sign or zero-set conditions."""
    pass


class CanonicalFormError(PiStateException):
    """Raised when a one-variable function does not reduce to a canonical shape."""
    pass


# -------------------------
# Modal Exceptions
# -------------------------
class ModalError(PiStateException):
    """Base exception for the modal layer."""
    pass


class SearchBudgetError(ModalError):
    """Raised when a countermodel search is given a non-positive budget."""
    pass


# -------------------------
# Command-line Exceptions
# -------------------------
class UsageError(PiStateException):
    """Raised when a command receives unusable flags or unreadable input files."""

    def __init__(self, message: str, flag: Optional[str] = None):
        super().__init__(message)
        self.flag = flag
