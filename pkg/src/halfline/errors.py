"""Exception hierarchy shared by all halfline modules.

The CLI maps these onto exit codes: invalid input (including malformed
files and insufficient data) exits 1, numeric failures exit 2, and
verification failures exit 3.
"""


class HalflineError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(HalflineError):
    """Bad argument: mismatched lattices, malformed JSON, violated precondition."""


class InsufficientDataError(InvalidInputError):
    """Input data too short for the requested tolerance.

    Carries ``required`` — the minimal data length that would suffice.
    """

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class DomainError(InvalidInputError):
    """Evaluation point outside the declared domain of an analytic map."""


class NumericError(HalflineError):
    """A numerical procedure failed to reach its tolerance."""


class NearSingularityError(NumericError):
    """Evaluation point too close to a detected zero of a denominator."""


class IdentityViolationError(HalflineError):
    """An exact identity that is a theorem failed: indicates a library bug."""
