"""Exception types shared across the package."""


class HolodiophError(Exception):
    """Base class for all domain errors raised by this package."""


# exact arithmetic
class BothZero(HolodiophError, ValueError):
    pass


class ZeroDenominator(HolodiophError, ZeroDivisionError):
    pass


class DivisionByZero(HolodiophError, ZeroDivisionError):
    pass


class PoleAtPoint(HolodiophError, ValueError):
    pass


class NotIrreducible(HolodiophError, ValueError):
    pass


class ParseError(HolodiophError, ValueError):
    pass


# holomorphy rings
class NotInRing(HolodiophError, ValueError):
    pass


class InvalidPlaceSet(HolodiophError, ValueError):
    pass


class UnsupportedRing(HolodiophError, ValueError):
    """The requested construction is not available for this ring shape."""


# curve
class CurveError(HolodiophError, ValueError):
    pass


class NotCubic(CurveError):
    pass


class Singular(CurveError):
    pass


class HasCM(CurveError):
    pass


class ReducibleF(CurveError):
    pass


class AssumptionViolated(CurveError):
    pass


class NotOnCurve(CurveError):
    pass


class NotAMultiple(CurveError):
    pass


class InfinityInput(CurveError):
    pass


# integer-generating sequence
class ZeroN(HolodiophError, ValueError):
    pass


class TorsionEncountered(HolodiophError, ArithmeticError):
    pass


class RatioMismatch(HolodiophError, ValueError):
    pass


class NotCoprimeInput(HolodiophError, ValueError):
    pass


# diophantine systems
class ArityMismatch(HolodiophError, ValueError):
    pass


class NotCollapsible(HolodiophError, ValueError):
    pass


class EmptyGenerators(HolodiophError, ValueError):
    pass


class NotInZPlusI(HolodiophError, ValueError):
    pass


class PoleAtPrime(HolodiophError, ValueError):
    pass


class BadAlgebra(HolodiophError, ValueError):
    pass
