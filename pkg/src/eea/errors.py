"""Exception hierarchy shared by every module."""


class EEAError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(EEAError, ValueError):
    pass


class DimensionMismatchError(EEAError, ValueError):
    pass


class PreconditionError(EEAError, ValueError):
    """An operation was called on an input that violates a named precondition."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class ResourceCapError(EEAError, RuntimeError):
    """A configured resource cap (bit length, enumeration size, closure size) was hit."""


class EnumerationCapError(ResourceCapError):
    pass


class ConvergenceError(EEAError, RuntimeError):
    pass


class InconclusiveError(EEAError):
    """Spectral bounds straddle the requested threshold and exact enumeration is capped."""

    def __init__(self, msg, lower=None, upper=None):
        super().__init__(msg)
        self.lower = lower
        self.upper = upper
