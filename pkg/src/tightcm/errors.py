"""Exception hierarchy.

Everything raised for bad input derives from :class:`CMError`; the CLI maps
those to exit status 1.  :class:`InvariantViolation` signals a bug (a computed
witness failed its own check) and maps to exit status 2.
"""


class CMError(Exception):
    """Base class for invalid-input errors."""


class TruncationMismatch(CMError):
    pass


class NotAUnit(CMError):
    pass


class NotDivisible(CMError):
    pass


class NotTight(CMError):
    pass


class BadParameters(CMError):
    pass


class CornerNotAdmissible(CMError):
    pass


class ConditionsViolated(CMError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"divisibility condition {index} fails")


class OddFlipParity(CMError):
    pass


class GuardExceeded(CMError):
    pass


class InvariantViolation(Exception):
    """A computed object failed a self-check.  Not an input error."""
