"""Spheres and balls around the fixed point: invariance, isometry, exclusion.

Everything here checks instances of exact statements, so any deviation in a
Monte Carlo run is a counterexample worth failing loudly over, not noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .dynamics import MapContext
from .errors import (
    BallNotInSphere,
    OutOfDomain,
    PadicError,
    PoleHit,
    SqrtOfMinusANotInQp,
)
from .literals import to_literal
from .norms import NormUpperBound, NormValue
from .number import PadicNumber
from .sampling import RandomSource, sample_in_ball, sample_on_sphere, _as_random


@dataclass(frozen=True)
class BallDescriptor:
    """U_r (open), V_r (closed) or S_r (sphere) around a center."""

    center: PadicNumber
    radius: NormValue
    kind: str = "closed"  # "open" | "closed" | "sphere"

    def __post_init__(self):
        if self.kind not in ("open", "closed", "sphere"):
            raise OutOfDomain(f"unknown region kind {self.kind!r}")

    def contains_distance(self, dist: NormValue) -> bool:
        if self.kind == "open":
            return dist < self.radius
        if self.kind == "closed":
            return dist <= self.radius
        return dist == self.radius

    def contains(self, x: PadicNumber) -> bool:
        d = x.sub(self.center).norm()
        if isinstance(d, NormUpperBound):
            # only certified containment counts
            if self.radius.exponent is None or self.kind == "sphere":
                return False
            if self.kind == "closed":
                return d.exponent >= self.radius.exponent
            return d.exponent > self.radius.exponent
        return self.contains_distance(d)

    def to_json(self) -> dict:
        return {
            "center": to_literal(self.center),
            "radius": self.radius.to_json(),
            "kind": self.kind,
        }


SphereDescriptor = BallDescriptor


def siegel_disk(ctx: MapContext) -> BallDescriptor:
    """The maximal ball around 0 whose interior spheres are all invariant."""
    zero = PadicNumber.zero(ctx.base_field)
    return BallDescriptor(zero, ctx.sqrtA, "open")


def siegel_disk_certificate(ctx: MapContext, samples: int = 100, steps: int = 50,
                            rng=None, radii=None) -> dict:
    """Monte Carlo confinement on sampled spheres strictly inside the disk."""
    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    if radii is None:
        e0 = ctx.sqrtA.exponent
        first = e0.numerator // e0.denominator + 1  # smallest integer exponent > e0
        radii = [NormValue.from_exponent(ctx.p, first + k) for k in range(3)]
    zero = PadicNumber.zero(ctx.base_field)
    failures = []
    checked = 0
    for r in radii:
        if not r < ctx.sqrtA:
            raise OutOfDomain(f"radius {r} is not inside the disk")
        for _ in range(samples):
            x = sample_on_sphere(zero, r, rnd)
            cur = x
            for n in range(1, steps + 1):
                cur = ctx.f(cur)
                if cur.norm() != r:
                    failures.append({"start": to_literal(x), "step": n,
                                     "norm": cur.norm().to_json()})
                    break
            checked += 1
    return {"radii": [r.to_json() for r in radii], "samples_per_sphere": samples,
            "steps": steps, "checked": checked, "confined": not failures,
            "failures": failures}


@dataclass(frozen=True)
class ExclusionVerdict:
    status: str  # "member" | "non_member" | "unknown"
    step: int | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "step": self.step, "reason": self.reason}


def exclusion_membership(ctx: MapContext, x: PadicNumber, depth: int) -> ExclusionVerdict:
    """Whether the forward orbit of x reaches a pole within ``depth`` steps.

    Points off the critical sphere S_sqrt(A)(0) are non-members without any
    iteration: orbits away from that sphere stay away from the poles.
    """
    if depth < 0:
        raise OutOfDomain("depth must be nonnegative")
    m = x.norm()
    if isinstance(m, NormUpperBound):
        if ctx.sqrtA.exponent is not None and m.exponent > ctx.sqrtA.exponent:
            return ExclusionVerdict("non_member", None, "norm certified below sqrt(A)")
        return ExclusionVerdict("unknown", None, "start norm not certified")
    if m != ctx.sqrtA:
        return ExclusionVerdict("non_member", None, "norm differs from sqrt(A)")

    run_ctx, run_x = ctx, x
    for attempt in range(3):
        cur = run_x
        for k in range(depth + 1):
            try:
                nxt = run_ctx.f(cur)
            except PoleHit as hit:
                if hit.certified or attempt == 2 or not (run_x.refinable and run_ctx.refinable):
                    if hit.certified or (run_x.refinable and run_ctx.refinable):
                        return ExclusionVerdict("member", k, "orbit reached a pole")
                    return ExclusionVerdict("unknown", k,
                                            "pole-vs-precision undecidable here")
                break  # replay at doubled precision
            if nxt.norm() != ctx.sqrtA:
                return ExclusionVerdict("non_member", k + 1,
                                        "orbit left the critical sphere")
            cur = nxt
        else:
            return ExclusionVerdict("unknown", depth,
                                    "depth budget exhausted on the critical sphere")
        new_prec = run_ctx.precision * 2
        run_ctx = run_ctx.at_precision(new_prec)
        run_x = run_x.at_precision(new_prec)
    return ExclusionVerdict("unknown", None, "escalation budget exhausted")


@dataclass
class InvariantSphereReport:
    radius: NormValue
    theoretical_invariant: bool
    confirmed: bool
    boundary: bool = False
    samples: int = 0
    astar_histogram: dict = dc_field(default_factory=dict)
    pole_hits: int = 0
    failures: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "radius": self.radius.to_json(),
            "theoretical_invariant": self.theoretical_invariant,
            "confirmed": self.confirmed,
            "boundary": self.boundary,
            "samples": self.samples,
            "astar_histogram": self.astar_histogram,
            "pole_hits": self.pole_hits,
            "failures": self.failures,
        }


def invariant_sphere_test(ctx: MapContext, r: NormValue, samples: int = 1000,
                          steps: int = 50, rng=None) -> InvariantSphereReport:
    """Theory says S_r(0) is invariant iff 0 < r < sqrt(A); confirm by sampling.

    On the critical sphere itself the report carries the histogram of
    per-point values A*(x) = |f(x)| instead of a verdict.  A disagreement
    between theory and samples is a fatal diagnostic.
    """
    if not ctx.poles_in_base_field:
        raise SqrtOfMinusANotInQp("sphere invariance study here needs sqrt(-a) in Q_p")
    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    zero = PadicNumber.zero(ctx.base_field)
    theoretical = (not r.is_zero()) and r < ctx.sqrtA

    if r == ctx.sqrtA:
        hist: dict[str, int] = {}
        pole_hits = 0
        for _ in range(samples):
            x = sample_on_sphere(zero, r, rnd)
            try:
                astar = ctx.f(x).norm_exact()
            except (PoleHit, PadicError):
                pole_hits += 1
                continue
            if astar < ctx.sqrtA:
                raise PadicError(f"A*(x) = {astar} fell below sqrt(A)")  # fatal
            key = astar.exponent_str()
            hist[key] = hist.get(key, 0) + 1
        return InvariantSphereReport(r, False, True, boundary=True, samples=samples,
                                     astar_histogram=hist, pole_hits=pole_hits)

    failures = []
    target = r if theoretical else ctx.A / r
    for _ in range(samples):
        x = sample_on_sphere(zero, r, rnd)
        cur = x
        for n in range(1, steps + 1):
            cur = ctx.f(cur)
            if cur.norm() != target:
                failures.append({"start": to_literal(x), "step": n,
                                 "norm": cur.norm().to_json()})
                break
    confirmed = not failures
    if not confirmed:
        raise PadicError(f"sphere verdict contradicted by samples: {failures[0]}")
    return InvariantSphereReport(r, theoretical, confirmed, samples=samples)


@dataclass
class BallImageReport:
    ball: BallDescriptor
    samples: int
    deviations: list

    @property
    def ok(self) -> bool:
        return not self.deviations

    def to_json(self) -> dict:
        return {"ball": self.ball.to_json(), "samples": self.samples,
                "isometric": self.ok, "deviations": self.deviations}


def ball_image_check(ctx: MapContext, ball: BallDescriptor, samples: int = 1000,
                     rng=None) -> BallImageReport:
    """Distance preservation |f(x) - f(c)| = |x - c| on a ball inside S_r(0)."""
    c = ball.center
    rho = ball.radius
    rc = c.norm()
    if isinstance(rc, NormUpperBound):
        raise BallNotInSphere("center norm not certified")
    if rc.is_zero() or not rc < ctx.sqrtA:
        raise OutOfDomain(f"|center| = {rc} must lie in (0, sqrt(A))")
    if not rho <= rc:
        raise BallNotInSphere(f"ball radius {rho} exceeds the sphere radius {rc}")
    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    fc = ctx.f(c)
    deviations = []
    for _ in range(samples):
        x = sample_in_ball(c, rho, rnd)
        lhs = ctx.f(x).sub(fc).norm()
        rhs = x.sub(c).norm()
        agree = (lhs == rhs if not isinstance(lhs, NormUpperBound)
                 and not isinstance(rhs, NormUpperBound)
                 else _bounds_compatible(lhs, rhs))
        if not agree:
            deviations.append({"x": to_literal(x),
                               "|f(x)-f(c)|": _m2j(lhs), "|x-c|": _m2j(rhs)})
    return BallImageReport(ball, samples, deviations)


def _m2j(m):
    return m.to_json()


def _bounds_compatible(lhs, rhs) -> bool:
    if isinstance(lhs, NormUpperBound) and isinstance(rhs, NormUpperBound):
        return True  # both vanish beyond certification; no contradiction
    bound, exact = (lhs, rhs) if isinstance(lhs, NormUpperBound) else (rhs, lhs)
    return bound.admits(exact)
