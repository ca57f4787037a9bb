"""Exception hierarchy.  Every error raised on purpose derives from InvBundlesError."""


class InvBundlesError(Exception):
    pass


class NonPrime(InvBundlesError, ValueError):
    pass


class PrimeTooSmall(InvBundlesError, ValueError):
    pass


class IndexOutOfRange(InvBundlesError, IndexError):
    pass


class TableMismatch(InvBundlesError, ValueError):
    pass


class NotACharacter(InvBundlesError, ValueError):
    pass


class NonIntegralMultiplicity(InvBundlesError, ArithmeticError):
    pass


class NonIntegralCoefficient(InvBundlesError, ArithmeticError):
    pass


class NotExpandable(InvBundlesError, ValueError):
    pass


class NotHyperbolic(InvBundlesError, ValueError):
    pass


class NonIntegralCanonicalExponent(InvBundlesError, ArithmeticError):
    pass


class NonIntegralGenus(InvBundlesError, ArithmeticError):
    pass


class PrimeNotSixNPlusMinusOne(InvBundlesError, ValueError):
    pass


class BelowCanonicalRange(InvBundlesError, ValueError):
    pass


class NotPerfect(InvBundlesError, ValueError):
    pass


class NonIntegralB(InvBundlesError, ArithmeticError):
    pass


class CensusMismatch(InvBundlesError, AssertionError):
    pass


class AngleOutOfRange(InvBundlesError, ValueError):
    pass


class NoSolution(InvBundlesError, ValueError):
    pass


class DimensionMismatch(InvBundlesError, ValueError):
    pass


class NotSquare(InvBundlesError, ValueError):
    pass


class NotAntisymmetric(InvBundlesError, ValueError):
    pass


class OddDimension(InvBundlesError, ValueError):
    pass


class UnknownVariable(InvBundlesError, KeyError):
    pass


class FixtureMissing(InvBundlesError, FileNotFoundError):
    pass
