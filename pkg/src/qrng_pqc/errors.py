"""Exception types shared across the package."""


class QrngError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(QrngError, ValueError):
    """An argument is outside the domain an operation accepts."""


class InvariantError(QrngError, ValueError):
    """A data invariant (normalization, unitarity, shape) does not hold."""


class EntropyError(QrngError):
    """An entropy source could not serve a request."""


class PartialDataError(QrngError):
    """Collection aborted after some, but not all, sessions completed."""

    def __init__(self, message, completed):
        super().__init__(message)
        self.completed = completed


class InsufficientDataError(QrngError):
    """Input holds fewer bits than the requested analysis needs."""
