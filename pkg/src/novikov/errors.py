"""Exception hierarchy shared by all modules."""


class NovikovError(Exception):
    """Base class for every error raised by this package."""


class NotInR(NovikovError, ArithmeticError):
    """A fraction whose reduced denominator is not of the form +-z^k (1 + z Z[z])."""


class DivisionNotInR(NotInR):
    pass


class DivisionByZero(NovikovError, ZeroDivisionError):
    pass


class ZeroElement(NovikovError, ValueError):
    pass


class ZeroDivisor(NovikovError, ZeroDivisionError):
    pass


class ContextMismatch(NovikovError, ValueError):
    pass


class DimensionMismatch(NovikovError, ValueError):
    pass


class NotInvertible(NovikovError, ArithmeticError):
    pass


class InvalidComplex(NovikovError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotSplit(NovikovError, ValueError):
    pass


class NotUpperTriangular(NovikovError, ValueError):
    pass


class SchemaError(NovikovError, ValueError):
    pass


class ValidationError(NovikovError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnknownExample(NovikovError, KeyError):
    pass


class InternalDefect(NovikovError, AssertionError):
    """Raised when a machine-checked theorem fails; always a bug, never bad input."""


class IdentityFailure(InternalDefect):
    pass


class OracleMismatch(InternalDefect):
    pass
