"""Domain errors. The CLI prints the class name on stderr and exits 1."""


class DomainError(Exception):
    """Base class for every error raised on mathematically invalid input."""


class IncompatibleRadicands(DomainError):
    pass


class MismatchedR(DomainError):
    pass


class NegativeGamma(DomainError):
    pass


class OddR(DomainError):
    pass


class EvenR(DomainError):
    pass


class NotSquareZero(DomainError):
    pass


class OnEigenRay(DomainError):
    pass


class InnerBundle(DomainError):
    pass


class NonPositiveBundle(DomainError):
    pass


class InvalidSetup(DomainError):
    pass


class OutOfRangeE(DomainError):
    pass


class NotCertified(DomainError):
    pass


class WindowTooSmall(DomainError):
    pass
