class OperadError(ValueError):
    """Base class for precondition and input errors."""


class FieldMismatchError(OperadError):
    pass


class SpaceMismatchError(OperadError):
    pass


class DegreeError(OperadError):
    pass


class SlotError(OperadError):
    pass


class SizeGuardError(OperadError):
    pass


class NotCoassociativeError(OperadError):
    """Raised when an operation requires a coassociative comultiplication."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class DegenerateTraceError(OperadError):
    """The traced cogravity equation admits no solution (d = 2 in the field)."""
