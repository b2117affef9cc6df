"""Exception hierarchy shared across the package."""


class RDematelError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(RDematelError, ValueError):
    pass


class ShapeError(RDematelError, ValueError):
    pass


class IntervalOrderError(RDematelError):
    """An operation produced (or was given) an interval with lower > upper."""


class DivisionByZeroError(RDematelError, ZeroDivisionError):
    pass


class DegenerateInputError(RDematelError, ValueError):
    pass


class SingularMatrixError(RDematelError):
    """(I - D) could not be inverted; carries the offending pivot info."""


class InsufficientExpertsError(RDematelError, ValueError):
    """Fewer than two experts: rough aggregation is undefined, use the crisp method."""


class ParseError(RDematelError, ValueError):
    """Malformed input file; message names the offending row/column."""


class BundleValidationError(RDematelError, ValueError):
    """Study bundle failed validation; ``errors`` lists every violation found."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
