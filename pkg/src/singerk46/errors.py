"""Exception hierarchy.

Every error carries a stable ``reason`` (its class name) so the CLI can
report failures in machine-readable form.
"""


class SingerError(Exception):
    """Base class for all library errors."""

    @property
    def reason(self) -> str:
        return type(self).__name__


# field core
class NonPrime(SingerError, ValueError):
    pass


class ReduciblePoly(SingerError, ValueError):
    pass


class DegreeMismatch(SingerError, ValueError):
    pass


class NotMonic(SingerError, ValueError):
    pass


class MixedContexts(SingerError, TypeError):
    pass


class DivisionByZero(SingerError, ZeroDivisionError):
    pass


class ZeroElement(SingerError, ValueError):
    pass


class BoundExceeded(SingerError):
    pass


class NotASquare(SingerError, ValueError):
    pass


class NoCompatibleRoot(SingerError):
    pass


# difference sets
class BadIndex(SingerError, ValueError):
    pass


class IdentityElement(SingerError, ValueError):
    pass


class NotNormOne(SingerError, ValueError):
    pass


class ElementOutsideGroup(SingerError, ValueError):
    pass


class BijectionFailure(SingerError):
    pass


class BadBasisDimension(SingerError, ValueError):
    pass


class ElementInBaseField(SingerError, ValueError):
    pass


# norm systems
class OracleMismatch(SingerError):
    pass


class BoundViolation(SingerError):
    pass


class DuplicateShifts(SingerError, ValueError):
    pass


class EvenCharacteristic(SingerError, ValueError):
    pass


class MultipleRepresentations(SingerError):
    pass


class NotAMember(SingerError, ValueError):
    pass


class PreconditionFailed(SingerError, ValueError):
    pass


class NotChar3(SingerError, ValueError):
    pass


class ExhaustedWithoutWitness(SingerError):
    pass


class IdentityViolated(SingerError):
    pass


class NoWitness(SingerError):
    pass


class LiftVerificationFailed(SingerError):
    pass


# norm graph
class VerificationFailed(SingerError):
    pass


class NoGoodShift(SingerError):
    pass


class BudgetExceeded(SingerError):
    pass


class CertificateError(SingerError, ValueError):
    """A certificate file is malformed or fails re-verification."""
