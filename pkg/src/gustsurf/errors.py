"""Exception hierarchy.

Every error carries a class name that the command line prints on stderr, so
callers can dispatch on it without parsing messages.
"""


class GustSurfError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class InvalidParameter(GustSurfError, ValueError):
    """An input violates a documented invariant."""


class DomainError(InvalidParameter):
    pass


class NegativeTime(InvalidParameter):
    pass


class StepTooLarge(InvalidParameter):
    pass


class InvalidRange(InvalidParameter):
    pass


class DimensionMismatch(InvalidParameter):
    pass


class DegenerateColumn(InvalidParameter):
    pass


class TooFewSamples(InvalidParameter):
    pass


class TooFewPoints(InvalidParameter):
    pass


class EmptyHistory(InvalidParameter):
    pass


class StationMismatch(InvalidParameter):
    pass


class ZeroReference(InvalidParameter):
    pass


class ParseError(InvalidParameter):
    """Malformed input file; ``row`` and ``column`` locate the offending cell."""

    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class NumericalError(GustSurfError, ArithmeticError):
    exit_code = 3


class RankDeficient(NumericalError):
    pass


class UnstableModel(NumericalError):
    pass


class DegreesOfFreedomExhausted(NumericalError):
    pass
