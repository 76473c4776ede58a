"""Exception hierarchy shared by all witt_charge modules."""


class WittChargeError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(WittChargeError, ZeroDivisionError):
    pass


class IncompatibleModulus(WittChargeError, ValueError):
    pass


class NotADivisor(WittChargeError, ValueError):
    pass


class NotReal(WittChargeError, ValueError):
    pass


class NotARootOfUnity(WittChargeError, ValueError):
    pass


class PrecisionExhausted(WittChargeError, ArithmeticError):
    """Raised when certified evaluation hits the precision cap.

    Exact zero is tested before any numeric work, so reaching the cap on a
    nonzero element almost always means a bug upstream.
    """


class EvenModulus(WittChargeError, ValueError):
    pass


class BadResidue(WittChargeError, ValueError):
    pass


class NotCoprime(WittChargeError, ValueError):
    pass


class ZeroElement(WittChargeError, ValueError):
    pass


class OutOfRange(WittChargeError, ValueError):
    pass


class RankMismatch(WittChargeError, ValueError):
    pass


class InconsistentForm(WittChargeError, ValueError):
    pass


class Degenerate(WittChargeError, ValueError):
    pass


class ZeroGaussSum(WittChargeError, ValueError):
    pass


class NotOddPrime(WittChargeError, ValueError):
    pass


class UnknownLabel(WittChargeError, KeyError):
    pass


class UnsupportedGaloisElement(WittChargeError, ValueError):
    pass


class NoCanonicalCubeRoot(WittChargeError, ValueError):
    pass


class ConductorTooLarge(WittChargeError, ValueError):
    pass


class NoOddExponent(WittChargeError, ValueError):
    pass


class InvariantViolation(WittChargeError, AssertionError):
    """A build-time consistency check failed; indicates an internal bug."""
