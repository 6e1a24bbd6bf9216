"""The real radius dynamics driving the orbit norms.

One application of the map sends a sphere radius r to r (below sqrt(A)),
to A/r (above), and on the critical sphere to a point-dependent value
A*(x) = |f(x)| >= sqrt(A).  The oracle here computes those images, their
limits, and checks whole orbits against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import MapContext
from .errors import (
    AstarUnresolvable,
    OutOfDomain,
    PoleHit,
    PrecisionExhausted,
)
from .norms import NormUpperBound, NormValue
from .number import PadicNumber, _ppow, _vp


@dataclass(frozen=True)
class RadiusOracle:
    """Radius-transfer rule for a given A = |a|.

    Either a constant ``astar`` (>= sqrt(A)) resolves the critical sphere,
    or a map context evaluates A*(x) = |f(x)| per point.
    """

    A: NormValue
    astar: NormValue | None = None
    ctx: MapContext | None = None

    def __post_init__(self):
        if self.astar is not None and self.astar < self.sqrtA:
            raise OutOfDomain(f"constant A* {self.astar} below sqrt(A) {self.sqrtA}")

    @classmethod
    def per_point(cls, ctx: MapContext) -> RadiusOracle:
        return cls(ctx.A, None, ctx)

    @classmethod
    def with_constant(cls, A: NormValue, astar: NormValue) -> RadiusOracle:
        return cls(A, astar, None)

    @property
    def sqrtA(self) -> NormValue:
        return self.A.sqrt()


def radius_image(oracle: RadiusOracle, r: NormValue,
                 at: PadicNumber | None = None) -> NormValue:
    """The radius of the sphere one application of the map lands on."""
    s = oracle.sqrtA
    if r < s:
        return r
    if r > s:
        return oracle.A / r
    if oracle.astar is not None:
        return oracle.astar
    if oracle.ctx is None or at is None:
        raise AstarUnresolvable("critical radius needs a constant A* or a point")
    m = at.norm()
    if isinstance(m, NormUpperBound) or m != s:
        raise AstarUnresolvable("per-point A* needs a point on the critical sphere")
    return oracle.ctx.f(at).norm_exact()


def radius_limit(oracle: RadiusOracle, r: NormValue) -> NormValue:
    """lim of the iterated radius images, which stabilize after two steps."""
    s = oracle.sqrtA
    if r < s:
        return r
    if r > s:
        return oracle.A / r
    if oracle.astar is None:
        raise AstarUnresolvable("limit on the critical sphere needs a constant A*")
    if oracle.astar == s:
        return s
    return oracle.A / oracle.astar


def radius_fixed_points_contain(oracle: RadiusOracle, r: NormValue) -> bool:
    """Whether r is a fixed point of the radius image."""
    s = oracle.sqrtA
    if r < s:
        return True
    return r == s and oracle.astar is not None and oracle.astar == s


def radius_law_check(ctx: MapContext, x: PadicNumber, n: int) -> bool:
    """Whether |f^k(x)| matches the iterated radius image for every k <= n.

    On critical-sphere crossings A* resolves per point; the certified fact
    A*(x) >= sqrt(A) is asserted rather than assumed.  A pole on the orbit
    violates the precondition and raises PoleHit with the step attached.
    """
    m = x.norm()
    if isinstance(m, NormUpperBound):
        raise PrecisionExhausted("start norm not certified")
    if m.is_zero():
        return True
    if not x.field.is_extension and not ctx.a.field.is_extension:
        fast = _radius_law_base(ctx, x, n)
        if fast is not None:
            return fast
    return _radius_law_generic(ctx, x, n)


def _radius_law_generic(ctx: MapContext, x: PadicNumber, n: int) -> bool:
    return radius_law_trace(ctx, x, n)["ok"]


def radius_law_trace(ctx: MapContext, x: PadicNumber, n: int) -> dict:
    """Like radius_law_check, but reports the first mismatch when one occurs."""
    m = x.norm()
    if isinstance(m, NormUpperBound):
        raise PrecisionExhausted("start norm not certified")
    if m.is_zero():
        return {"ok": True, "steps": n}
    sqrtA = ctx.sqrtA
    r = m
    cur = x
    for k in range(1, n + 1):
        try:
            cur = ctx.f(cur)
        except PoleHit as hit:
            raise PoleHit(f"orbit reaches a pole at step {k - 1}; "
                          "the start lies in the exclusion set",
                          step=k - 1, certified=hit.certified) from hit
        actual = cur.norm_exact()
        if r == sqrtA:
            if actual < sqrtA:
                return {"ok": False, "step": k, "actual": actual.to_json(),
                        "reason": "A*(x) below sqrt(A)"}
            expected = actual
        elif r < sqrtA:
            expected = r
        else:
            expected = ctx.A / r
        if actual != expected:
            return {"ok": False, "step": k, "actual": actual.to_json(),
                    "expected": expected.to_json()}
        r = expected
    return {"ok": True, "steps": n}


def _radius_law_base(ctx: MapContext, x: PadicNumber, n: int):
    """Integer-only fast path for base-field orbits; None when a verdict
    needs the generic engine (ambiguous cancellation)."""
    p = ctx.p
    va, ua, na = ctx.a.val, ctx.a.unit, ctx.a.prec
    v, u, prec = x.val, x.unit, min(x.prec, na)
    e = v
    for _ in range(n):
        pk = _ppow(p, prec)
        u2 = u * u % pk
        v2 = 2 * v
        if v2 < va:
            dv, du, dprec = v2, (u2 + ua * _ppow(p, va - v2)) % pk, prec
        elif v2 > va:
            dv, du, dprec = va, (ua + u2 * _ppow(p, v2 - va)) % pk, prec
        else:
            s = (u2 + ua) % pk
            if s == 0:
                return None  # pole or deep cancellation: generic engine decides
            t = _vp(s, p)
            dv, du, dprec = va + t, s // _ppow(p, t), prec - t
        if dprec <= 0:
            return None
        prec = dprec
        pk = _ppow(p, prec)
        v = va + v - dv
        u = (ua * u % pk) * pow(du % pk, -1, pk) % pk
        # compare against the predicted radius exponent
        if 2 * e > va:
            e_exp = e
        elif 2 * e < va:
            e_exp = va - e
        else:
            if 2 * v > va:
                return False  # A*(x) < sqrt(A): counterexample
            e_exp = v
        if v != e_exp:
            return False
        e = e_exp
    return True


def cycle_distance_map_p3(A: NormValue, r: NormValue) -> NormValue | NormUpperBound:
    """For p = 3: the distance to the opposite cycle point after one step.

    Defined for 0 < r < sqrt(A): r**2/sqrt(A) on (sqrt(A)/3, sqrt(A)), the
    bound <= sqrt(A)/9 at exactly sqrt(A)/3, and r/3 below it.
    """
    if A.p != 3:
        raise OutOfDomain("this distance map is specific to p = 3")
    if A.is_zero() or r.is_zero():
        raise OutOfDomain("A and r must be positive")
    s = A.sqrt()
    if not r < s:
        raise OutOfDomain(f"radius {r} not inside (0, sqrt(A) = {s})")
    third = s.scale_by_p_power(1)  # sqrt(A)/3
    if r > third:
        return r * r / s
    if r == third:
        return NormUpperBound(3, s.exponent + Fraction(2))  # <= sqrt(A)/9
    return r.scale_by_p_power(1)  # r/3
