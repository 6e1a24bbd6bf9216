"""Seeded sampling of spheres and balls, uniform in the digit model.

Offsets are drawn digit by digit (Haar-uniform on the sphere or ball) and
added to the center through exact rational shifts, so sampled points keep a
replayable origin.  A :class:`RandomSource` is a (seed, stream) pair;
identical pairs reproduce identical draws.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import RadiusNotRepresentable
from .norms import NormValue
from .number import PadicNumber, value_group_denominator

DEFAULT_SEED = 0xA


@dataclass(frozen=True)
class RandomSource:
    seed: int
    stream: int = 0

    def rng(self) -> random.Random:
        h = hashlib.sha256(f"{self.seed}:{self.stream}".encode()).digest()
        return random.Random(int.from_bytes(h[:16], "big"))

    def substream(self, index: int) -> RandomSource:
        return RandomSource(self.seed, self.stream * 1_000_003 + index + 1)


def _as_random(rng) -> random.Random:
    if isinstance(rng, RandomSource):
        return rng.rng()
    if isinstance(rng, random.Random):
        return rng
    raise TypeError(f"expected RandomSource or random.Random, got {type(rng).__name__}")


def _vp_fraction(q: Fraction, p: int) -> Fraction | None:
    if q == 0:
        return None
    v = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return Fraction(v)


def _radius_exponent(field, r: NormValue) -> Fraction:
    if r.p != field.p:
        raise RadiusNotRepresentable(f"radius for p={r.p} in a p={field.p} field")
    if r.is_zero():
        raise RadiusNotRepresentable("zero radius")
    den = value_group_denominator(field)
    if r.exponent.denominator > den:
        raise RadiusNotRepresentable(
            f"radius {r} is outside the value group of {field!r}")
    return r.exponent


def _uniformizer_coords(field) -> tuple[Fraction, Fraction, Fraction]:
    """Coordinates (a, b) with pi = a + b*sqrt(d) of norm p**(-v), plus v."""
    p = field.p
    if not field.is_extension:
        return Fraction(p), Fraction(0), Fraction(1)
    d = field.d
    vd = d.val
    if vd % 2 != 0:
        j = (1 - vd) // 2
        return Fraction(0), Fraction(p) ** j, Fraction(1, 2)
    if p != 2 or d.unit % 8 == 5:
        return Fraction(p), Fraction(0), Fraction(1)
    # p = 2, ramified with a unit generator: 1 + sqrt(d') uniformizes
    j = -vd // 2
    return Fraction(1), Fraction(2) ** j, Fraction(1, 2)


def _d_fraction(field) -> Fraction:
    d = field.d
    if isinstance(d.origin, Fraction):
        return d.origin
    raise RadiusNotRepresentable("extension generator lacks an exact origin; "
                                 "cannot sample exactly in this field")


def _surd_pow(a: Fraction, b: Fraction, d: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """(a + b*sqrt(d))**k as exact coordinates; k may be negative."""
    if k < 0:
        n = a * a - d * b * b
        a, b, k = a / n, -b / n, -k
    ra, rb = Fraction(1), Fraction(0)
    while k:
        if k & 1:
            ra, rb = ra * a + d * rb * b, ra * b + rb * a
        a, b = a * a + d * b * b, 2 * a * b
        k >>= 1
    return ra, rb


def _exact_int(q: Fraction) -> int:
    if q.denominator != 1:
        raise RadiusNotRepresentable(f"exponent {q} is not a whole uniformizer power")
    return q.numerator


def _draw_unit(rnd: random.Random, p: int, n: int) -> int:
    u = rnd.randrange(1, p)
    scale = p
    for _ in range(n - 1):
        u += rnd.randrange(p) * scale
        scale *= p
    return u


def sample_on_sphere(center: PadicNumber, r: NormValue, rng) -> PadicNumber:
    """A point x with |x - center| exactly r, offset digits uniform."""
    if r.is_zero():
        return center
    field = center.field
    e = _radius_exponent(field, r)
    rnd = _as_random(rng)
    p = field.p
    n = _precision_of(center)

    if not field.is_extension:
        q = Fraction(_draw_unit(rnd, p, n)) * Fraction(p) ** int(e)
        return center.shift_by_rational(q, n)

    d = _d_fraction(field)
    a, b, v = _uniformizer_coords(field)
    k = _exact_int(e / v)
    pa, pb = _surd_pow(a, b, d, k)
    while True:
        u0 = Fraction(rnd.randrange(p**n))
        w0 = Fraction(rnd.randrange(p**n))
        if _vp_fraction(u0 * u0 - d * w0 * w0, p) == 0:
            break
    qu = pa * u0 + pb * w0 * d
    qw = pa * w0 + pb * u0
    out = PadicNumber._ext(field, center.u.shift_by_rational(qu, n),
                           center.w.shift_by_rational(qw, n))
    assert out.sub(center).norm() == r, "sampled offset missed the sphere"
    return out


def sample_in_ball(center: PadicNumber, r: NormValue, rng) -> PadicNumber:
    """A point x with |x - center| <= r, Haar-uniform over the ball."""
    if r.is_zero():
        return center
    field = center.field
    e = _radius_exponent(field, r)
    rnd = _as_random(rng)
    p = field.p
    n = _precision_of(center)

    if not field.is_extension:
        q = Fraction(rnd.randrange(p**n)) * Fraction(p) ** int(e)
        return center.shift_by_rational(q, n)

    d = _d_fraction(field)
    a, b, v = _uniformizer_coords(field)
    k = _exact_int(e / v)
    pa, pb = _surd_pow(a, b, d, k)
    u0 = Fraction(rnd.randrange(p**n))
    w0 = Fraction(rnd.randrange(p**n))
    qu = pa * u0 + pb * w0 * d
    qw = pa * w0 + pb * u0
    return PadicNumber._ext(field, center.u.shift_by_rational(qu, n),
                            center.w.shift_by_rational(qw, n))


def _precision_of(x: PadicNumber) -> int:
    from .number import DEFAULT_PRECISION

    if x.field.is_extension:
        parts = [c.prec for c in (x.u, x.w) if c.prec]
        return max(parts) if parts else DEFAULT_PRECISION
    return x.prec if x.prec else DEFAULT_PRECISION
