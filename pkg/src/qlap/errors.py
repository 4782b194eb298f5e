"""Exception hierarchy shared by every qlap module."""


class QlapError(Exception):
    """Base class for all library errors."""


class ParameterError(QlapError, ValueError):
    """An argument is outside the domain of an operation."""


class ConstructionError(QlapError, ValueError):
    """A graph could not be built from the given data."""

    def __init__(self, message: str, where: object = None):
        super().__init__(message if where is None else f"{message} ({where})")
        self.reason = message


class SizeError(ParameterError):
    """A graph is too large for the requested exact method."""


class PreconditionError(QlapError, ValueError):
    """A documented precondition on the input graph does not hold."""


class ConvergenceError(QlapError, ArithmeticError):
    """The eigensolver hit its sweep cap before reaching tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


class GraphParseError(QlapError, ValueError):
    """Malformed graph6 or edge-list input; ``position`` locates the failure."""

    def __init__(self, message: str, position: int | str):
        super().__init__(f"{message} at {position}")
        self.reason = message
        self.position = position


class BoundViolation(QlapError, AssertionError):
    """A proven inequality failed on concrete data."""
