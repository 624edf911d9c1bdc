"""Exception types shared across the package."""


class K3CuspsError(Exception):
    """Base class for all errors raised by this package."""


class NotSymmetric(K3CuspsError):
    pass


class NotSquare(K3CuspsError):
    pass


class RankDeficient(K3CuspsError):
    pass


class UnknownName(K3CuspsError):
    pass


class NotIntegral(K3CuspsError):
    pass


class NotDefinite(K3CuspsError):
    pass


class NotEven(K3CuspsError):
    pass


class Degenerate(K3CuspsError):
    pass


class BudgetExceeded(K3CuspsError):
    pass


class NotASubgroup(K3CuspsError):
    pass


class NotIsotropic(K3CuspsError):
    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class NonIntegralResult(K3CuspsError):
    pass


class NotCoprime(K3CuspsError):
    pass


class BadCharacteristic(K3CuspsError):
    pass


class NoWeight9Word(K3CuspsError):
    pass


class WrongSize(K3CuspsError):
    pass


class NonRationalTrace(K3CuspsError):
    pass


class BadPRank(K3CuspsError):
    pass


class InvalidComponent(K3CuspsError):
    pass
