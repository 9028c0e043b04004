"""Exception types shared across the package."""


class FaclrError(Exception):
    """Base class for all package errors."""


class NotDivisible(FaclrError, ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


class UnassignedVariable(FaclrError, KeyError):
    pass


class OutOfWindow(FaclrError, IndexError):
    """A variable index outside the declared a/b window was requested."""


class NotContained(FaclrError, ValueError):
    pass


class TooLong(FaclrError, ValueError):
    """A partition has more rows than there are x-variables."""


class SizeMismatch(FaclrError, ValueError):
    pass


class IndexOutOfRange(FaclrError, IndexError):
    pass


class ZeroDenominator(FaclrError, ZeroDivisionError):
    """A specialization made a denominator vanish."""


class NotSymmetric(FaclrError, ValueError):
    pass


class NonTerminating(FaclrError, RuntimeError):
    pass


class NonIntegerResult(FaclrError, ArithmeticError):
    pass


class EngineMismatch(FaclrError, AssertionError):
    """Two routes that must agree produced different values."""
