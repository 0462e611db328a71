"""Exception hierarchy.

Every error raised by the library derives from :class:`OperTorsorError`.
The CLI maps :class:`ParseError` to exit code 2 and every
:class:`DomainError` to exit code 3.
"""


class OperTorsorError(Exception):
    """Base class for all library errors."""

    #: short machine-readable tag used by the CLI on stderr
    code = "error"


class ParseError(OperTorsorError):
    code = "parse"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class DomainError(OperTorsorError):
    code = "domain"


class RingMismatchError(DomainError):
    code = "ring-mismatch"


class CompositionDomainError(DomainError):
    code = "composition-domain"


class OrderError(DomainError):
    code = "order"


class NotAutomorphismError(DomainError):
    code = "not-automorphism"


class NonUnitError(DomainError):
    code = "non-unit"


class PointOutsideChartError(DomainError):
    code = "point-outside-chart"


class InvalidCoordinateError(DomainError):
    code = "invalid-coordinate"


class NotInAlgebraError(DomainError):
    code = "not-in-algebra"


class RealizationError(DomainError):
    code = "invalid-realization"


class NotAnOperError(DomainError):
    code = "not-an-oper"


class TorusObstructionError(DomainError):
    code = "torus-obstruction"
