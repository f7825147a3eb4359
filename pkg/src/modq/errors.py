"""Exception hierarchy shared by every modq module."""


class ModqError(Exception):
    """Base class for all library errors."""


class InvalidField(ModqError):
    pass


class ModulusSearchFailure(ModqError):
    pass


class NoSuchRoot(ModqError):
    pass


class ParseError(ModqError, ValueError):
    pass


class NotInvertible(ModqError):
    pass


class RingMismatch(ModqError):
    pass


class BudgetExceeded(ModqError):
    """A configured work limit was hit; carries optional partial diagnostics."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedRegime(ModqError):
    pass


class RegimeMismatch(ModqError):
    pass


class InvalidWeight(ModqError):
    pass


class ObstructionFound(ModqError):
    pass


class UnsupportedShape(ModqError):
    pass


class NotPolynomialCount(ModqError):
    pass
