"""Exception hierarchy shared by every ecx module."""


class EcxError(Exception):
    """Base class for all errors raised by ecx."""


class NotPrime(EcxError, ValueError):
    pass


class NotIrreducible(EcxError, ValueError):
    pass


class FieldMismatch(EcxError, ValueError):
    pass


class DivisionByZero(EcxError, ZeroDivisionError):
    pass


class SingularCurve(EcxError, ValueError):
    pass


class NotOnCurve(EcxError, ValueError):
    pass


class CurveMismatch(EcxError, ValueError):
    pass


class EnumerationTooLarge(EcxError, RuntimeError):
    """An exhaustive computation would exceed its configured cap."""


class InvalidK(EcxError, ValueError):
    pass


class AbscissaUndefined(EcxError, ValueError):
    """The point at infinity has no x-coordinate."""


class EmptyDistribution(EcxError, ValueError):
    pass


class TrivialCharacter(EcxError, ValueError):
    pass


class DerivationFailed(EcxError, RuntimeError):
    """Key derivation hit the point at infinity; re-randomize the secrets."""


class UnsupportedField(EcxError, ValueError):
    """Characteristic outside the supported range (5 < p < 2**62)."""
