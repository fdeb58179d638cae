"""Error types shared across the library.

Every domain error carries a short stable ``code`` so the CLI can map it
to a machine-readable JSON error object.
"""


class RotagraphError(Exception):
    """Base class for all domain errors raised by this library."""

    code = "error"

    def __init__(self, detail=""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code


class DivisionByZeroError(RotagraphError):
    code = "division-by-zero"


class OutOfRangeError(RotagraphError):
    code = "out-of-range"


class ZeroPolynomialError(RotagraphError):
    code = "zero-polynomial"


class ZeroVectorError(RotagraphError):
    code = "zero-vector"


class InfeasibleError(RotagraphError):
    code = "infeasible"


class PreconditionError(RotagraphError):
    code = "precondition"


class BoundExceededError(RotagraphError):
    code = "bound-exceeded"


class SearchExhaustedError(RotagraphError):
    code = "search-exhausted"


class InternalConsistencyError(RotagraphError):
    """A condition that is mathematically guaranteed failed to hold."""

    code = "internal-inconsistency"


class ParseError(RotagraphError):
    code = "parse-error"
