"""Exceptions raised by the calculus.

Every error is a ``CalculusError`` so callers (CLI, HTTP routes) can catch
the whole family at once and map it to an exit status or a status code.
"""


class CalculusError(ValueError):
    """Base class for every error raised by the library."""


class InputError(CalculusError):
    """A user payload could not be parsed."""


class CapMismatch(CalculusError):
    pass


class TruncationLoss(CalculusError):
    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class IndexOutOfCap(CalculusError):
    pass


class KExceedsN(CalculusError):
    pass


class NotAdmissible(CalculusError):
    pass


class MissingParameter(CalculusError):
    pass


class GuardBandExceeded(CalculusError):
    def __init__(self, message: str, requested: int | None = None, allowed: int | None = None):
        super().__init__(message)
        self.requested = requested
        self.allowed = allowed


class NotInvertible(CalculusError):
    pass


class NotComposable(CalculusError):
    pass


class PsiMismatch(CalculusError):
    pass


class NotDegreeLowering(CalculusError):
    pass


class ZeroSubdiagonal(CalculusError):
    pass


class NotDeltaOperator(CalculusError):
    pass


class CapExceeded(CalculusError):
    pass


class SingularSystem(CalculusError):
    pass


class BasisMismatch(CalculusError):
    pass


class NotShiftInvariant(CalculusError):
    pass


class BadResidue(CalculusError):
    pass


class BadSample(CalculusError):
    pass


class RootOfUnity(CalculusError):
    pass


class ZeroDenominator(CalculusError):
    pass


class IdentityFailure(CalculusError):
    """A post-construction verification did not hold."""
