"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`SmoothkitError`.  The CLI maps each family to an exit code.
"""


class SmoothkitError(Exception):
    """Base class for all package errors."""

    kind = "error"


class SpecError(SmoothkitError, ValueError):
    """Malformed function spec or invalid user parameters."""

    kind = "spec"


class ParseError(SpecError):
    """Syntax error in an expression string; ``offset`` is the character index."""

    kind = "syntax"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ParseError):
    kind = "unknown-identifier"


class NonConstantExponentError(ParseError):
    kind = "non-constant-exponent"


class DomainError(SpecError):
    """A point or parameter lies outside the function's domain."""

    kind = "domain"


class RequirementError(SpecError):
    """The function does not meet the minimal smoothing requirements."""

    kind = "requirement"


class NumericError(SmoothkitError, ArithmeticError):
    kind = "numeric"


class SingularityError(NumericError):
    """Derivatives requested where they are infinite or undefined."""

    kind = "singularity"


class ConvergenceError(NumericError):
    """An iterative method hit its iteration cap."""

    kind = "convergence"


class InconsistencyError(NumericError):
    """A licensed theorem conclusion disagrees with the sampled data."""

    kind = "inconsistency"


class LicenseError(SmoothkitError):
    """The hypothesis justifying a monotone search was not certified."""

    kind = "license"


class UnreachableError(SmoothkitError):
    """The requested target cannot be reached inside the search range."""

    kind = "unreachable"
