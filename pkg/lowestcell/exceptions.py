from typing import Any, Optional


class LowestCellError(Exception):
    """
    Base class for every error raised by this package.
    """

    pass


class ConfigurationError(LowestCellError, ValueError):
    """
    Raised when a configuration value, or a combination of arguments, is invalid.

    Arguments:
        message {str} -- Human-readable description of the problem.
        field {str, optional} -- Dotted path of the offending configuration field.
    """

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class DomainError(LowestCellError, ValueError):
    """
    Raised when an argument lies outside the domain of an operation,
    e.g. an element outside the lowest cell or an invalid torus point.
    """

    pass


class TruncationError(LowestCellError):
    """
    Raised when a computation cannot be completed inside the configured ball.

    Arguments:
        message {str} -- Human-readable description of the problem.
        radius {int} -- The radius of the ball that was available.
        required_radius {int, optional} -- The minimal sufficient radius, when it is known.
    """

    def __init__(self, message: str, radius: int, required_radius: Optional[int] = None):
        self.radius = radius
        self.required_radius = required_radius
        if required_radius is not None:
            message = f"{message} (radius {radius}, needs at least {required_radius})"
        else:
            message = f"{message} (radius {radius})"
        super().__init__(message)


class ResourceError(LowestCellError):
    """
    Raised when a request is infeasible at desk scale.

    Arguments:
        message {str} -- Human-readable description of the problem.
        limit {Any, optional} -- The quantity that made the request infeasible.
    """

    def __init__(self, message: str, limit: Any = None):
        self.limit = limit
        super().__init__(message)


class VerificationError(LowestCellError, AssertionError):
    """
    Raised when an identity that is checked on the fly fails.

    Arguments:
        message {str} -- Human-readable description of the failed identity.
        witness {Any, optional} -- The data that violates the identity.
    """

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)
