"""Exact p-adic absolute values.

A norm is p**(-e) with the exponent e kept as an exact Fraction whose
denominator is 1 or 2 (half-integers occur only in ramified quadratic
extensions), or +infinity for the norm of zero.  No floats anywhere;
comparisons and arithmetic act on exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompatibleField, OutOfDomain, RadiusNotRepresentable

_POWER_RE = re.compile(r"^(\d+)\^(-?\d+)(?:/(\d+))?$")


@dataclass(frozen=True)
class NormValue:
    """The exact value p**(-exponent); ``exponent=None`` encodes norm 0."""

    p: int
    exponent: Fraction | None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> NormValue:
        return cls(p, None)

    @classmethod
    def one(cls, p: int) -> NormValue:
        return cls(p, Fraction(0))

    @classmethod
    def from_exponent(cls, p: int, e) -> NormValue:
        e = Fraction(e)
        if e.denominator not in (1, 2):
            raise OutOfDomain(f"norm exponent {e} not representable (denominator > 2)")
        return cls(p, e)

    @classmethod
    def from_fraction(cls, p: int, value: Fraction) -> NormValue:
        """The radius ``value`` as a norm; must be an exact power of p."""
        if value == 0:
            return cls.zero(p)
        if value < 0:
            raise RadiusNotRepresentable(f"negative radius {value}")
        num, den = value.numerator, value.denominator
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        while num % p == 0:
            num //= p
            e -= 1
        if num != 1 or den != 1:
            raise RadiusNotRepresentable(f"{value} is not a power of {p}")
        return cls(p, Fraction(e))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.exponent is None

    def is_integral_exponent(self) -> bool:
        return self.exponent is not None and self.exponent.denominator == 1

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: NormValue) -> None:
        if not isinstance(other, NormValue):
            raise TypeError(f"expected NormValue, got {type(other).__name__}")
        if self.p != other.p:
            raise IncompatibleField(f"norms for p={self.p} and p={other.p} cannot mix")

    def __mul__(self, other: NormValue) -> NormValue:
        self._check(other)
        if self.exponent is None or other.exponent is None:
            return NormValue.zero(self.p)
        return NormValue(self.p, self.exponent + other.exponent)

    def __truediv__(self, other: NormValue) -> NormValue:
        self._check(other)
        if other.exponent is None:
            raise OutOfDomain("division by the zero norm")
        if self.exponent is None:
            return NormValue.zero(self.p)
        return NormValue(self.p, self.exponent - other.exponent)

    def __pow__(self, k: int) -> NormValue:
        if self.exponent is None:
            if k <= 0:
                raise OutOfDomain("0**k for k <= 0")
            return self
        return NormValue(self.p, self.exponent * k)

    def sqrt(self) -> NormValue:
        if self.exponent is None:
            return self
        e = self.exponent / 2
        if e.denominator > 2:
            raise OutOfDomain(f"sqrt of norm exponent {self.exponent} leaves the value group")
        return NormValue(self.p, e)

    def scale_by_p_power(self, k: int) -> NormValue:
        """Multiply the value by p**(-k), i.e. shift the exponent by k."""
        if self.exponent is None:
            return self
        return NormValue(self.p, self.exponent + k)

    # -- order (by real magnitude) -----------------------------------------

    def __lt__(self, other: NormValue) -> bool:
        self._check(other)
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent > other.exponent

    def __le__(self, other: NormValue) -> bool:
        return self == other or self < other

    def __gt__(self, other: NormValue) -> bool:
        return not (self <= other)

    def __ge__(self, other: NormValue) -> bool:
        return not (self < other)

    # -- conversions -------------------------------------------------------

    def value(self) -> Fraction:
        """The norm as an exact rational; integral exponents only."""
        if self.exponent is None:
            return Fraction(0)
        if self.exponent.denominator != 1:
            raise OutOfDomain(f"{self} has a half-integer exponent, no exact rational value")
        return Fraction(1, self.p ** self.exponent.numerator) if self.exponent >= 0 \
            else Fraction(self.p ** (-self.exponent.numerator))

    def exponent_str(self) -> str:
        if self.exponent is None:
            return "inf"
        return f"{self.exponent.numerator}/{self.exponent.denominator}"

    def to_json(self) -> dict:
        return {"p": self.p, "exponent": self.exponent_str()}

    def __str__(self) -> str:
        if self.exponent is None:
            return "0"
        if self.exponent.denominator == 1 and abs(self.exponent.numerator) < 8:
            v = self.value()
            return str(v)
        return f"{self.p}^{-self.exponent}"

    def __repr__(self) -> str:
        return f"NormValue(p={self.p}, exponent={self.exponent_str()})"


@dataclass(frozen=True)
class NormUpperBound:
    """A certified bound |x| <= p**(-exponent) when the exact norm is unknown.

    Returned where cancellation (or a stated boundary case) leaves only a
    one-sided certificate.
    """

    p: int
    exponent: Fraction

    def admits(self, norm: NormValue) -> bool:
        """Whether a value with this bound could have the given exact norm."""
        if norm.p != self.p:
            raise IncompatibleField(f"norms for p={self.p} and p={norm.p} cannot mix")
        return norm.exponent is None or norm.exponent >= self.exponent

    def holds_for(self, norm: NormValue) -> bool:
        """Whether an exactly known norm satisfies this bound."""
        return self.admits(norm)

    def exponent_str(self) -> str:
        return f"{self.exponent.numerator}/{self.exponent.denominator}"

    def to_json(self) -> dict:
        return {"p": self.p, "exponent_at_least": self.exponent_str()}

    def __str__(self) -> str:
        return f"<= {self.p}^{-self.exponent}"


def parse_radius(p: int, text: str) -> NormValue:
    """Parse a radius literal: a rational string like "1/5", or "2^-3/2".

    The power form writes the radius p^(num/den); den must be 1 or 2.
    """
    text = text.strip()
    m = _POWER_RE.match(text)
    if m:
        base = int(m.group(1))
        if base != p:
            raise RadiusNotRepresentable(f"radius base {base} does not match p={p}")
        num = int(m.group(2))
        den = int(m.group(3)) if m.group(3) else 1
        e = -Fraction(num, den)
        if e.denominator not in (1, 2):
            raise RadiusNotRepresentable(f"exponent {num}/{den} has denominator > 2")
        return NormValue(p, e)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise RadiusNotRepresentable(f"cannot parse radius {text!r}") from exc
    return NormValue.from_fraction(p, value)
