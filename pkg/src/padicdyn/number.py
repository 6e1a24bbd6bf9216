"""Exact elements of Q_p and of quadratic extensions Q_p(sqrt(d)).

A base-field element is p**val * unit with the unit kept modulo p**prec
(``prec`` significant base-p digits, first digit nonzero).  Extension
elements are coordinate pairs u + w*sqrt(d) over the base field.  All
arithmetic is on Python integers; nothing here ever touches a float.

Numbers remember, when possible, the exact rational or quadratic surd they
were built from (``origin``), so a computation can be replayed at higher
precision when a verdict needs more digits.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import (
    DivisionByZeroToPrecision,
    IncompatibleField,
    InvalidInput,
    PrecisionExhausted,
    ZeroDenominator,
)
from .norms import NormUpperBound, NormValue

DEFAULT_PRECISION = 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _ppow(p: int, k: int) -> int:
    return p**k


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# origins: the exact value a number was built from, when one is known.
# Either a Fraction, or ("surd", q0, q1, rad) meaning q0 + q1*sqrt(rad) with
# the canonical square-root branch.  Only negation and rational shifts are
# tracked; general arithmetic drops the origin and callers that need replay
# (the orbit engine) recompute from their own exact inputs.
# ---------------------------------------------------------------------------


def _origin_neg(o):
    if o is None:
        return None
    if isinstance(o, Fraction):
        return -o
    _, q0, q1, rad = o
    return ("surd", -q0, -q1, rad)


def _origin_shift(o, q: Fraction):
    if o is None:
        return None
    if isinstance(o, Fraction):
        return o + q
    _, q0, q1, rad = o
    return ("surd", q0 + q, q1, rad)


def _origin_scale(o, q: Fraction):
    if o is None:
        return None
    if isinstance(o, Fraction):
        return o * q
    _, q0, q1, rad = o
    return ("surd", q0 * q, q1 * q, rad)


class FieldDescriptor:
    """Q_p (``d is None``) or the quadratic extension Q_p(sqrt(d)).

    Build extensions through :func:`padicdyn.hensel.quadratic_extension`,
    which checks that d is not already a square.
    """

    __slots__ = ("p", "d")

    def __init__(self, p: int, d: PadicNumber | None = None):
        if not is_prime(p):
            raise InvalidInput(f"p={p} is not prime")
        if d is not None:
            if d.field.d is not None:
                raise IncompatibleField("extension generator must be a base-field element")
            if d.field.p != p:
                raise IncompatibleField("extension generator lives over a different prime")
            if d.is_zero():
                raise InvalidInput("extension generator must be nonzero")
        self.p = p
        self.d = d

    @property
    def is_extension(self) -> bool:
        return self.d is not None

    def base(self) -> FieldDescriptor:
        return FieldDescriptor(self.p) if self.is_extension else self

    def at_precision(self, precision: int) -> FieldDescriptor:
        if self.d is None:
            return self
        return FieldDescriptor(self.p, self.d.at_precision(precision))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        if self.p != other.p:
            return False
        if (self.d is None) != (other.d is None):
            return False
        if self.d is None:
            return True
        return self.d.sub(other.d).is_zero()

    def __hash__(self):
        return hash((self.p, self.d is None))

    def __repr__(self):
        if self.d is None:
            return f"Q_{self.p}"
        return f"Q_{self.p}(sqrt({self.d}))"


def Qp(p: int) -> FieldDescriptor:
    return FieldDescriptor(p)


def value_group_denominator(field: FieldDescriptor) -> int:
    """1 when norms of field elements are integer powers of p, 2 if ramified."""
    if not field.is_extension:
        return 1
    d = field.d
    vd = d.val
    if vd % 2 == 1:
        return 2
    if field.p != 2:
        return 1
    # p = 2, unit-square-class of d decides: 5 mod 8 is the unramified class
    return 1 if d.unit % 8 == 5 else 2


class PadicNumber:
    """An element of Q_p or Q_p(sqrt(d)), exact to its tracked precision.

    Base field slots: ``val`` (valuation), ``unit`` (unit part mod p**prec,
    or 0 when the number vanishes at this precision -- then ``val`` is the
    certified minimum valuation), ``prec`` (known significant digits),
    ``exact_zero`` (the number is 0 exactly, not merely to precision).
    Extension slots: ``u``, ``w`` with the value u + w*sqrt(d).
    """

    __slots__ = ("field", "val", "unit", "prec", "exact_zero", "origin", "u", "w")

    # -- raw constructors ---------------------------------------------------

    @staticmethod
    def _base(field, val, unit, prec, exact_zero=False, origin=None) -> PadicNumber:
        self = object.__new__(PadicNumber)
        self.field = field
        self.val = val
        self.unit = unit
        self.prec = prec
        self.exact_zero = exact_zero
        self.origin = origin
        self.u = None
        self.w = None
        return self

    @staticmethod
    def _ext(field, u: PadicNumber, w: PadicNumber) -> PadicNumber:
        self = object.__new__(PadicNumber)
        self.field = field
        self.val = None
        self.unit = None
        self.prec = None
        self.exact_zero = False
        self.origin = None
        self.u = u
        self.w = w
        return self

    @classmethod
    def zero(cls, field: FieldDescriptor) -> PadicNumber:
        if field.is_extension:
            base = field.base()
            return cls._ext(field, cls.zero(base), cls.zero(base))
        return cls._base(field, 0, 0, 0, exact_zero=True, origin=Fraction(0))

    @classmethod
    def from_scaled(cls, field, v: int, x: int, k: int, origin=None) -> PadicNumber:
        """The number p**v * x where x is known modulo p**k."""
        if k <= 0:
            return cls._base(field, v + k, 0, 0)
        pk = _ppow(field.p, k)
        xm = x % pk
        if xm == 0:
            return cls._base(field, v + k, 0, 0)
        t = _vp(xm, field.p)
        return cls._base(field, v + t, (xm // _ppow(field.p, t)) % _ppow(field.p, k - t),
                         k - t, origin=origin)

    @classmethod
    def from_rational(cls, m, n=1, field: FieldDescriptor | None = None,
                      precision: int = DEFAULT_PRECISION) -> PadicNumber:
        """Embed the rational m/n with ``precision`` significant digits."""
        if field is None:
            raise InvalidInput("from_rational needs a field")
        if n == 0:
            raise ZeroDenominator("denominator is zero")
        if field.is_extension:
            base = field.base()
            x = cls.from_rational(m, n, base, precision)
            return cls._ext(field, x, cls.zero(base))
        q = Fraction(m, n)
        if q == 0:
            return cls.zero(field)
        p = field.p
        num, den = q.numerator, q.denominator
        vn, vd = _vp(num, p), _vp(den, p)
        val = vn - vd
        unum = num // _ppow(p, vn)
        uden = den // _ppow(p, vd)
        pk = _ppow(p, precision)
        unit = unum * pow(uden, -1, pk) % pk
        return cls._base(field, val, unit, precision, origin=q)

    def _with_origin(self, origin) -> PadicNumber:
        if self.field.is_extension:
            raise InvalidInput("origins attach to base-field numbers")
        return PadicNumber._base(self.field, self.val, self.unit, self.prec,
                                 self.exact_zero, origin)

    # -- structure ----------------------------------------------------------

    @property
    def is_extension_element(self) -> bool:
        return self.field.is_extension

    def is_zero(self) -> bool:
        """Zero at the working precision (exactly zero included)."""
        if self.field.is_extension:
            return self.u.is_zero() and self.w.is_zero()
        return self.unit == 0

    @property
    def is_exact_zero(self) -> bool:
        if self.field.is_extension:
            return self.u.is_exact_zero and self.w.is_exact_zero
        return self.exact_zero

    @property
    def refinable(self) -> bool:
        """Whether this number can be re-derived at a higher precision."""
        if self.field.is_extension:
            return self.u.refinable and self.w.refinable and self.field.d.refinable
        return self.origin is not None

    def digits(self) -> list[int]:
        """Known unit-part digits, least significant first (base field)."""
        if self.field.is_extension:
            raise IncompatibleField("digits() applies to base-field numbers")
        out = []
        n = self.unit
        for _ in range(self.prec):
            n, r = divmod(n, self.field.p)
            out.append(r)
        return out

    def as_integer_mod(self, k: int) -> int:
        """The value reduced mod p**k; requires valuation >= 0."""
        if self.field.is_extension:
            raise IncompatibleField("as_integer_mod applies to base-field numbers")
        if self.is_zero():
            if not self.exact_zero and self.val < k:
                raise PrecisionExhausted(f"only certified zero mod p^{self.val}")
            return 0
        if self.val < 0:
            raise InvalidInput("negative valuation, not a p-adic integer")
        if self.val + self.prec < k:
            raise PrecisionExhausted(f"value known only mod p^{self.val + self.prec}")
        return self.unit * _ppow(self.field.p, self.val) % _ppow(self.field.p, k)

    # -- norms ----------------------------------------------------------------

    def norm(self) -> NormValue | NormUpperBound:
        """|x|_p exactly, or a certified upper bound when x vanishes to precision."""
        p = self.field.p
        if self.field.is_extension:
            if self.is_exact_zero:
                return NormValue.zero(p)
            nsq = self.u.mul(self.u).sub(self.field.d.mul(self.w.mul(self.w)))
            m = nsq.norm()
            if isinstance(m, NormUpperBound):
                return NormUpperBound(p, m.exponent / 2)
            if m.is_zero():
                return m
            return NormValue(p, m.exponent / 2)
        if self.exact_zero:
            return NormValue.zero(p)
        if self.unit == 0:
            return NormUpperBound(p, Fraction(self.val))
        return NormValue(p, Fraction(self.val))

    def norm_exact(self) -> NormValue:
        """|x|_p, raising PrecisionExhausted when only a bound is certified."""
        m = self.norm()
        if isinstance(m, NormUpperBound):
            raise PrecisionExhausted(f"norm certified only as {m}")
        return m

    # -- coercion -------------------------------------------------------------

    def _pair(self, other: PadicNumber) -> tuple[PadicNumber, PadicNumber]:
        if not isinstance(other, PadicNumber):
            raise TypeError(f"expected PadicNumber, got {type(other).__name__}")
        if self.field.p != other.field.p:
            raise IncompatibleField(f"p={self.field.p} vs p={other.field.p}")
        a, b = self, other
        if a.field.is_extension != b.field.is_extension:
            if a.field.is_extension:
                b = b.embed(a.field)
            else:
                a = a.embed(b.field)
        elif a.field.is_extension and not (a.field == b.field):
            raise IncompatibleField("elements of different quadratic extensions")
        return a, b

    def embed(self, field: FieldDescriptor) -> PadicNumber:
        """View this base-field element inside the extension ``field``."""
        if self.field.is_extension:
            if self.field == field:
                return self
            raise IncompatibleField("cannot embed one extension into another")
        if not field.is_extension:
            return self
        if field.p != self.field.p:
            raise IncompatibleField(f"p={self.field.p} vs p={field.p}")
        return PadicNumber._ext(field, self, PadicNumber.zero(self.field))

    # -- arithmetic -------------------------------------------------------------

    def add(self, other: PadicNumber) -> PadicNumber:
        a, b = self._pair(other)
        f = a.field
        if f.is_extension:
            return PadicNumber._ext(f, a.u.add(b.u), a.w.add(b.w))
        if b.is_exact_zero:
            return a
        if a.is_exact_zero:
            return b
        if a.unit == 0 or b.unit == 0:
            if a.unit == 0 and b.unit == 0:
                return PadicNumber._base(f, min(a.val, b.val), 0, 0)
            x, z = (a, b) if b.unit == 0 else (b, a)
            # z vanishes to precision: the sum is x, known only mod p**z.val
            k = min(x.val + x.prec, z.val) - x.val
            return PadicNumber.from_scaled(f, x.val, x.unit, k)
        v0 = min(a.val, b.val)
        k = min(a.val + a.prec, b.val + b.prec) - v0
        p = f.p
        s = a.unit * _ppow(p, a.val - v0) + b.unit * _ppow(p, b.val - v0)
        return PadicNumber.from_scaled(f, v0, s, k)

    def negate(self) -> PadicNumber:
        f = self.field
        if f.is_extension:
            return PadicNumber._ext(f, self.u.negate(), self.w.negate())
        if self.unit == 0:
            return self
        pk = _ppow(f.p, self.prec)
        return PadicNumber._base(f, self.val, (pk - self.unit) % pk, self.prec,
                                 origin=_origin_neg(self.origin))

    def sub(self, other: PadicNumber) -> PadicNumber:
        return self.add(other.negate())

    def mul(self, other: PadicNumber) -> PadicNumber:
        a, b = self._pair(other)
        f = a.field
        if f.is_extension:
            d = f.d
            u = a.u.mul(b.u).add(d.mul(a.w.mul(b.w)))
            w = a.u.mul(b.w).add(a.w.mul(b.u))
            return PadicNumber._ext(f, u, w)
        if a.is_exact_zero or b.is_exact_zero:
            return PadicNumber.zero(f)
        if a.unit == 0 or b.unit == 0:
            return PadicNumber._base(f, a.val + b.val, 0, 0)
        k = min(a.prec, b.prec)
        return PadicNumber._base(f, a.val + b.val, a.unit * b.unit % _ppow(f.p, k), k)

    def invert(self) -> PadicNumber:
        f = self.field
        if self.is_zero():
            kind = "exactly zero" if self.is_exact_zero else "zero at working precision"
            raise DivisionByZeroToPrecision(f"inverting a divisor that is {kind}")
        if f.is_extension:
            nsq = self.u.mul(self.u).sub(f.d.mul(self.w.mul(self.w)))
            if nsq.is_zero():
                raise DivisionByZeroToPrecision("extension norm zero at working precision")
            inv = nsq.invert()
            return PadicNumber._ext(f, self.u.mul(inv), self.w.negate().mul(inv))
        pk = _ppow(f.p, self.prec)
        return PadicNumber._base(f, -self.val, pow(self.unit, -1, pk), self.prec)

    def div(self, other: PadicNumber) -> PadicNumber:
        a, b = self._pair(other)
        return a.mul(b.invert())

    def square(self) -> PadicNumber:
        return self.mul(self)

    def shift_by_rational(self, q: Fraction, precision: int | None = None) -> PadicNumber:
        """self + q, keeping an exact origin when self has one."""
        f = self.field
        if f.is_extension:
            return PadicNumber._ext(f, self.u.shift_by_rational(q), self.w)
        n = precision if precision is not None else max(self.prec, DEFAULT_PRECISION)
        out = self.add(PadicNumber.from_rational(q, 1, f, n))
        return out._with_origin(_origin_shift(self.origin, q))

    def scale_by_rational(self, q: Fraction, precision: int | None = None) -> PadicNumber:
        """self * q, keeping an exact origin when self has one."""
        f = self.field
        if f.is_extension:
            return PadicNumber._ext(f, self.u.scale_by_rational(q),
                                    self.w.scale_by_rational(q))
        if q == 0:
            return PadicNumber.zero(f)
        n = precision if precision is not None else max(self.prec, DEFAULT_PRECISION)
        out = self.mul(PadicNumber.from_rational(q, 1, f, n))
        return out._with_origin(_origin_scale(self.origin, q))

    # -- precision --------------------------------------------------------------

    def at_precision(self, precision: int) -> PadicNumber:
        """This number with exactly ``precision`` significant digits.

        Truncation is always possible; raising the precision requires a
        replayable origin.
        """
        if precision <= 0:
            raise InvalidInput("precision must be positive")
        f = self.field
        if f.is_extension:
            f2 = f.at_precision(precision)
            return PadicNumber._ext(f2, self.u.at_precision(precision),
                                    self.w.at_precision(precision))
        if self.is_exact_zero:
            return self
        if self.unit == 0:
            raise PrecisionExhausted("no digits to refine in a zero-to-precision value")
        if precision <= self.prec:
            return PadicNumber._base(f, self.val, self.unit % _ppow(f.p, precision),
                                     precision, origin=self.origin)
        if self.origin is None:
            raise PrecisionExhausted(f"value known to {self.prec} digits, no exact origin")
        return _embed_origin(self.origin, f, precision)

    # -- display ------------------------------------------------------------------

    def __repr__(self):
        p = self.field.p
        if self.field.is_extension:
            return f"({self.u!r}) + ({self.w!r})*sqrt(d) in {self.field!r}"
        if self.is_exact_zero:
            return f"0 in Q_{p}"
        if self.unit == 0:
            return f"O({p}^{self.val}) in Q_{p}"
        shown = self.digits()[:8]
        tail = ", ..." if self.prec > 8 else ""
        return (f"{p}^{self.val} * [{', '.join(map(str, shown))}{tail}] "
                f"(prec {self.prec})")

    # operator sugar
    __add__ = add
    __sub__ = sub
    __mul__ = mul
    __truediv__ = div
    __neg__ = negate


def same_to_precision(x: PadicNumber, y: PadicNumber) -> bool:
    """Whether x and y agree on every digit both of them certify."""
    return x.sub(y).is_zero()


def distance(x: PadicNumber, y: PadicNumber) -> NormValue | NormUpperBound:
    """|x - y|_p, exactly or as a certified upper bound."""
    return x.sub(y).norm()


def _embed_origin(origin, field: FieldDescriptor, precision: int) -> PadicNumber:
    if isinstance(origin, Fraction):
        return PadicNumber.from_rational(origin, 1, field, precision)
    from .hensel import sqrt as _sqrt  # deferred: hensel builds on this module

    _, q0, q1, rad = origin
    guard = 8
    while True:
        n = precision + guard
        root = _sqrt(PadicNumber.from_rational(rad, 1, field, n))
        s = PadicNumber.from_rational(q0, 1, field, n).add(
            PadicNumber.from_rational(q1, 1, field, n).mul(root))
        if not s.is_zero() and s.prec >= precision:
            return PadicNumber._base(field, s.val, s.unit % _ppow(field.p, precision),
                                     precision, origin=origin)
        guard *= 2
        if guard > 16 * precision:
            raise PrecisionExhausted("surd origin cancels beyond any tried precision")
