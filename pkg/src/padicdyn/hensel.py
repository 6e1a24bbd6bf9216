"""Squares and square roots: residue tests, Tonelli-Shanks, digit lifting.

Roots are produced on a canonical branch so that the same input always
yields the same root at any precision: the first digit is the smaller of
the two candidate residues mod p (mod 8 when p = 2).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IncompatibleField, InvalidInput, NotASquare, PrecisionExhausted
from .number import FieldDescriptor, PadicNumber, _ppow

__all__ = [
    "is_square",
    "sqrt",
    "mod_sqrt",
    "quadratic_extension",
    "extension_generator",
    "sqrt_in_field",
]


def legendre_symbol(a: int, p: int) -> int:
    """Euler's criterion; p an odd prime, returns -1, 0 or 1."""
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def mod_sqrt(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, p) != 1:
        raise NotASquare(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        t2i, i = t, 0
        for i in range(1, m):
            t2i = t2i * t2i % p
            if t2i == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def is_square(x: PadicNumber) -> bool:
    """Whether x is a square in its base field Q_p.

    True iff the valuation is even and the unit is a quadratic residue
    mod p (p odd) or congruent to 1 mod 8 (p = 2).
    """
    if x.field.is_extension:
        raise IncompatibleField("is_square decides squares of base-field elements")
    if x.is_exact_zero:
        return True
    if x.unit == 0:
        raise PrecisionExhausted("cannot decide squareness of a zero-to-precision value")
    if x.val % 2 != 0:
        return False
    p = x.field.p
    if p == 2:
        if x.prec < 3:
            raise PrecisionExhausted("squareness mod 2 needs at least 3 digits")
        return x.unit % 8 == 1
    return legendre_symbol(x.unit % p, p) == 1


def _lift_sqrt_odd(u: int, p: int, n: int) -> int:
    """Canonical root of the unit u modulo p**n, p odd, one digit per step."""
    r = mod_sqrt(u % p, p)
    y = min(r, p - r)
    inv2y = pow(2 * y, -1, p)
    pk = p
    for k in range(1, n):
        rem = (u - y * y) // pk % p
        y += rem * inv2y % p * pk
        pk *= p
    return y


def _lift_sqrt_two(u: int, n: int) -> int:
    """Canonical root of the odd u (u = 1 mod 8) modulo 2**n, for n >= 4.

    Fixing the residue mod 2**(k+1) adjusts bit k-1, so the returned root
    carries one digit fewer than the input: it is determined mod 2**(n-1).
    """
    y = 1 if u % 16 == 1 else 3
    for k in range(4, n + 1):
        if (u - y * y) % _ppow(2, k) != 0:
            y += _ppow(2, k - 2)
    return y % _ppow(2, n - 1)


def sqrt(x: PadicNumber) -> PadicNumber:
    """The canonical square root of a base-field square.

    Hensel lifting digit by digit from the canonical residue.  For p = 2
    the result certifies one digit fewer than the input.
    """
    if x.field.is_extension:
        raise IncompatibleField("sqrt lifts base-field squares; extension roots "
                                "are the generators of their fields")
    if x.is_exact_zero:
        return x
    if not is_square(x):
        raise NotASquare(f"{x!r} is not a square in Q_{x.field.p}")
    p = x.field.p
    origin = None
    if isinstance(x.origin, Fraction):
        origin = ("surd", Fraction(0), Fraction(1), x.origin)
    if p == 2:
        if x.prec < 4:
            raise PrecisionExhausted("the canonical branch mod 2 needs 4 digits")
        y = _lift_sqrt_two(x.unit, x.prec)
        return PadicNumber._base(x.field, x.val // 2, y, x.prec - 1, origin=origin)
    y = _lift_sqrt_odd(x.unit, p, x.prec)
    return PadicNumber._base(x.field, x.val // 2, y, x.prec, origin=origin)


def quadratic_extension(d: PadicNumber) -> FieldDescriptor:
    """The field Q_p(sqrt(d)); d must be a nonzero non-square."""
    if d.is_zero():
        raise InvalidInput("extension generator must be nonzero")
    if is_square(d):
        raise InvalidInput("d is a square; Q_p(sqrt(d)) would equal Q_p")
    return FieldDescriptor(d.field.p, d)


def extension_generator(field: FieldDescriptor) -> PadicNumber:
    """The element sqrt(d) = 0 + 1*sqrt(d) of a quadratic extension."""
    if not field.is_extension:
        raise IncompatibleField("base fields have no extension generator")
    base = field.base()
    n = field.d.prec or 0
    one = PadicNumber.from_rational(1, 1, base, max(n, 1))
    return PadicNumber._ext(field, PadicNumber.zero(base), one)


def sqrt_in_field(field: FieldDescriptor, x: PadicNumber) -> PadicNumber | None:
    """A square root of the base-field element x inside ``field``, or None.

    In Q_p(sqrt(d)) an x that is not a base-field square still has a root
    w*sqrt(d) whenever x*d is a base-field square.
    """
    if x.field.is_extension:
        raise IncompatibleField("sqrt_in_field roots base-field elements")
    if x.is_exact_zero:
        return x.embed(field) if field.is_extension else x
    if is_square(x):
        return sqrt(x).embed(field) if field.is_extension else sqrt(x)
    if not field.is_extension:
        return None
    d = field.d
    xd = x.mul(d)
    if not is_square(xd):
        return None
    w = sqrt(xd).div(d)
    return PadicNumber._ext(field, PadicNumber.zero(x.field), w)
