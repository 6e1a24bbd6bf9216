"""Invariant balls inside invariant spheres and the non-ergodicity verdict.

On an invariant sphere S_r(0) the map shifts every center by exactly
r**3/|a|, the closed ball of that radius around any point of the sphere is
the minimal invariant ball, and its normalized Haar measure is a rational
strictly between 0 and 1 -- which is the whole non-ergodicity argument,
made machine-checkable here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import MapContext
from .errors import OutOfDomain, PadicError, RadiusNotRepresentable, SqrtOfMinusANotInQp
from .geometry import BallDescriptor
from .literals import to_literal
from .norms import NormUpperBound, NormValue
from .number import PadicNumber
from .sampling import RandomSource, sample_in_ball, sample_on_sphere, _as_random

SCHEMA_VERSION = "1"


def _require_invariant_radius(ctx: MapContext, r: NormValue) -> None:
    if r.is_zero() or not r < ctx.sqrtA:
        raise OutOfDomain(f"radius {r} is not in (0, sqrt(A) = {ctx.sqrtA})")


def displacement_radius(ctx: MapContext, r: NormValue) -> NormValue:
    """|f(c) - c| for any c on the invariant sphere S_r(0): exactly r**3/A."""
    _require_invariant_radius(ctx, r)
    return r**3 / ctx.A


def displacement_certificate(ctx: MapContext, r: NormValue, samples: int = 100,
                             rng=None) -> dict:
    """Sampled confirmation that the center shift on S_r(0) is r**3/A."""
    rho = displacement_radius(ctx, r)
    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    zero = PadicNumber.zero(ctx.base_field)
    failures = []
    for _ in range(samples):
        c = sample_on_sphere(zero, r, rnd)
        got = ctx.f(c).sub(c).norm()
        if got != rho:
            failures.append({"c": to_literal(c), "shift": got.to_json()})
    return {"radius": r.to_json(), "expected_shift": rho.to_json(),
            "samples": samples, "ok": not failures, "failures": failures}


@dataclass
class MinimalBallCertificate:
    ball: BallDescriptor
    increments_checked: int
    increments_ok: bool
    isometry_samples: int
    isometry_ok: bool
    interior_image_found: bool
    escape_radius: NormValue
    escape_distance: NormValue

    @property
    def ok(self) -> bool:
        return self.increments_ok and self.isometry_ok and self.interior_image_found

    def to_json(self) -> dict:
        return {
            "ball": self.ball.to_json(),
            "increments_checked": self.increments_checked,
            "increments_ok": self.increments_ok,
            "isometry_samples": self.isometry_samples,
            "isometry_ok": self.isometry_ok,
            "interior_image_found": self.interior_image_found,
            "escape_radius": self.escape_radius.to_json(),
            "escape_distance": self.escape_distance.to_json(),
        }


def minimal_invariant_ball(ctx: MapContext, c: PadicNumber, n_max: int = 50,
                           samples: int = 100, rng=None) -> MinimalBallCertificate:
    """The ball V_rho(c), rho = r**3/A, with its three-part certificate.

    (1) successive orbit increments |f^(n+1)(c) - f^n(c)| all equal rho;
    (2) the map is an isometry into the ball, with a witnessed interior
    image; (3) the shift of c itself escapes the next smaller ball, so no
    strictly smaller invariant ball around c exists.
    """
    rc = c.norm()
    if isinstance(rc, NormUpperBound):
        raise OutOfDomain("center norm not certified")
    _require_invariant_radius(ctx, rc)
    rho = displacement_radius(ctx, rc)
    ball = BallDescriptor(c, rho, "closed")
    rnd = _as_random(rng if rng is not None else RandomSource(0xA))

    increments_ok = True
    cur = c
    for _ in range(n_max):
        nxt = ctx.f(cur)
        if nxt.sub(cur).norm() != rho:
            increments_ok = False
            break
        cur = nxt

    fc = ctx.f(c)
    isometry_ok = True
    interior = False
    for _ in range(samples):
        x = sample_in_ball(c, rho, rnd)
        fx = ctx.f(x)
        if fx.sub(fc).norm() != x.sub(c).norm() or not ball.contains(fx):
            isometry_ok = False
        d = fx.sub(c).norm()
        if not isinstance(d, NormUpperBound) and d < rho:
            interior = True
    tries = 0
    while not interior and tries < 50 * ctx.p:
        x = sample_in_ball(c, rho, rnd)
        d = ctx.f(x).sub(c).norm()
        if not isinstance(d, NormUpperBound) and d < rho:
            interior = True
        tries += 1

    theta = rho.scale_by_p_power(1)  # rho / p
    escape = fc.sub(c).norm_exact()  # equals rho > theta: c itself escapes
    return MinimalBallCertificate(ball, n_max, increments_ok, samples, isometry_ok,
                                  interior, theta, escape)


def haar_measure_ball(p: int, r: NormValue, rho: NormValue) -> Fraction:
    """Normalized Haar measure of V_rho(c) inside S_r(0): p*rho/(r*(p-1))."""
    if r.p != p or rho.p != p:
        raise OutOfDomain("norms quoted for a different prime")
    if r.is_zero() or rho.is_zero():
        raise OutOfDomain("radii must be positive")
    if not (r.is_integral_exponent() and rho.is_integral_exponent()):
        raise RadiusNotRepresentable("Haar measure here lives on base-field spheres")
    if not rho < r:
        raise OutOfDomain(f"ball radius {rho} must be strictly below the sphere radius {r}"
                          " (measure would reach p/(p-1) > 1)")
    return p * rho.value() / (r.value() * (p - 1))


@dataclass
class ErgodicityReport:
    p: int
    A: NormValue
    radius: NormValue
    rho: NormValue
    measure: Fraction
    bound: Fraction
    bound_attained: bool
    verdict: str
    witness: MinimalBallCertificate
    confinement_samples: int
    confinement_ok: bool

    @property
    def ok(self) -> bool:
        return (self.verdict == "not_ergodic" and self.witness.ok
                and self.confinement_ok and 0 < self.measure < 1)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "A": self.A.to_json(),
            "radius": self.radius.to_json(),
            "rho": self.rho.to_json(),
            "measure": {"num": self.measure.numerator, "den": self.measure.denominator},
            "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
            "bound_attained": self.bound_attained,
            "verdict": self.verdict,
            "witness": self.witness.to_json(),
            "confinement_samples": self.confinement_samples,
            "confinement_ok": self.confinement_ok,
        }


def ergodicity_report(ctx: MapContext, r: NormValue, samples: int = 1000,
                      steps: int = 50, rng=None) -> ErgodicityReport:
    """Non-ergodicity of the system on S_r(0) with an invariant-ball witness.

    The minimal invariant ball has measure p*r**2/(A*(p-1)), which never
    exceeds 1/(p*(p-1)); an invariant set with measure strictly between 0
    and 1 rules ergodicity out.
    """
    if not ctx.poles_in_base_field:
        raise SqrtOfMinusANotInQp("the measure-theoretic study needs sqrt(-a) in Q_p")
    _require_invariant_radius(ctx, r)
    p = ctx.p
    rho = displacement_radius(ctx, r)
    mu = haar_measure_ball(p, r, rho)
    direct = p * (r.value() ** 2) / (ctx.A.value() * (p - 1))
    if mu != direct:
        raise PadicError("measure computed two ways disagreed")  # pragma: no cover
    bound = Fraction(1, p * (p - 1))
    if mu > bound:
        raise PadicError(f"measure {mu} exceeded the bound {bound}")  # theorem violated
    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    zero = PadicNumber.zero(ctx.base_field)
    c = sample_on_sphere(zero, r, rnd)
    witness = minimal_invariant_ball(ctx, c, n_max=steps, samples=min(samples, 200),
                                     rng=rnd)
    confinement_ok = True
    for _ in range(samples):
        x = sample_in_ball(c, rho, rnd)
        cur = x
        for _ in range(steps):
            cur = ctx.f(cur)
            if not witness.ball.contains(cur):
                confinement_ok = False
                break
        if not confinement_ok:
            break
    return ErgodicityReport(p, ctx.A, r, rho, mu, bound, mu == bound, "not_ergodic",
                            witness, samples, confinement_ok)
