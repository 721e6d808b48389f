"""Exception hierarchy for exact continued-fraction arithmetic and verification."""


class OstrowskiError(Exception):
    """Base class for every error raised by this package."""


class InvalidSurd(OstrowskiError):
    """(P + sqrt(D))/Q does not describe a quadratic irrational."""


class InsufficientQuotients(OstrowskiError):
    """A finite partial-quotient head was exhausted before the requested index."""


class InsufficientPrecision(OstrowskiError):
    """The available continued-fraction data cannot certify the requested value.

    Raised by enclosure-backed alphas when the convergent supply runs out before
    the enclosure becomes unambiguous; extend the head to fix.
    """


class RangeExceeded(OstrowskiError):
    """An argument lies outside the range the available quotients can resolve."""


class IndexOutOfRange(OstrowskiError):
    """A convergent index past the end of the available expansion."""


class DegenerateModulus(OstrowskiError):
    """Exceptional-index structure collapses for q_i <= 3."""


class DegenerateDenominator(OstrowskiError):
    """A reduced argument hit an exact zero where an irrational was expected."""


class BudgetExceeded(OstrowskiError):
    """Requested computation is larger than the configured evaluation budget."""


class DomainError(OstrowskiError, ValueError):
    """Argument outside a function's mathematical domain."""


class ParseError(OstrowskiError, ValueError):
    """Malformed alpha-spec string; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PerfectSquareError(ParseError):
    """sqrt:D or surd:P,D,Q with a perfect-square D is rational, not a surd."""
