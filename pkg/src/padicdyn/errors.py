"""Exception types shared across the package."""


class PadicError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(PadicError):
    """Malformed literal, non-prime p, or an otherwise unusable argument."""


class ZeroDenominator(PadicError):
    """Rational literal with denominator zero."""


class IncompatibleField(PadicError):
    """Operands live in different fields (or extensions) and cannot mix."""


class DivisionByZeroToPrecision(PadicError):
    """Divisor is zero at the working precision."""


class PrecisionExhausted(PadicError):
    """The requested result cannot be certified at the working precision."""


class NotASquare(PadicError):
    """Square root requested of a non-square element."""


class RadiusNotRepresentable(PadicError):
    """Radius is not in the value group of the working field."""


class PoleHit(PadicError):
    """Evaluation at (or indistinguishably close to) a pole of the map.

    ``certified`` is True when the denominator is exactly zero, False when it
    is merely zero at the working precision.
    """

    def __init__(self, message: str, step: int | None = None, certified: bool = False):
        super().__init__(message)
        self.step = step
        self.certified = certified


class AstarUnresolvable(PadicError):
    """Radius map queried on the critical sphere without a resolution rule."""


class OutOfDomain(PadicError):
    """Argument outside the stated domain of the operation."""


class NotUniqueFixedPoint(PadicError):
    """Conjugation reduction requires the unique-fixed-point criterion."""


class BallNotInSphere(PadicError):
    """Ball argument does not sit inside the required sphere."""


class NotACycle(PadicError):
    """Supplied points do not form a cycle under the map."""


class SqrtOfMinusANotInQp(PadicError):
    """Operation needs sqrt(-a) inside the base field Q_p."""
