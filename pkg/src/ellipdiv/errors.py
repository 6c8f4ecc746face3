"""Exception hierarchy.

Three families, mirroring the CLI exit codes: bad input (2), a broken
internal invariant (1), and factorization trouble (3).
"""


class EllipDivError(Exception):
    pass


class InputError(EllipDivError, ValueError):
    """The caller handed us something the math does not accept."""


class InvariantViolation(EllipDivError, AssertionError):
    """An identity that must hold exactly did not; this is a bug, not bad input."""


class SingularCurve(InputError):
    pass


class NotOnCurve(InputError):
    pass


class NonSquareDenominator(InputError):
    pass


class IdentityPoint(InputError):
    pass


class InvalidSeed(InputError):
    pass


class NonIntegralStep(InputError):
    pass


class InsufficientSamples(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class PreconditionError(InputError):
    pass


class TorsionPoint(PreconditionError):
    pass


class NotApplicable(PreconditionError):
    pass


class DivisibilityViolation(InvariantViolation):
    pass


class NonIntegerResult(InvariantViolation):
    pass


class SearchBoundExceeded(InvariantViolation):
    pass


class DivisionByZero(EllipDivError, ZeroDivisionError):
    pass


class FactorizationFailure(EllipDivError):
    pass
