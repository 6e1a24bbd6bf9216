"""The 2-periodic orbit t, -t with t**2 = -2a, and its three regimes.

The cycle multiplier (f o f)'(t) is the constant 9 for every parameter, so
the cycle is indifferent away from p = 3 and attracting at p = 3.  Spheres
around the cycle points swap under one application for p = 2 (small radii)
and p >= 5; for p = 3 the distances contract by an explicit radius map.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .dynamics import MapContext
from .errors import NotACycle, OutOfDomain, PadicError, PoleHit, RadiusNotRepresentable
from .hensel import extension_generator, is_square, quadratic_extension, sqrt, sqrt_in_field
from .literals import to_literal
from .norms import NormUpperBound, NormValue
from .number import FieldDescriptor, PadicNumber, same_to_precision, value_group_denominator
from .radius import cycle_distance_map_p3
from .sampling import RandomSource, sample_on_sphere, _as_random


@dataclass(frozen=True)
class PoleTarget:
    label: str
    point: PadicNumber | None
    in_field: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"label": self.label,
                "point": to_literal(self.point) if self.point is not None else None,
                "in_field": self.in_field, "note": self.note}


@dataclass(frozen=True)
class TwoCycleContext:
    t1: PadicNumber
    t2: PadicNumber
    field: FieldDescriptor
    cycle_norm: NormValue
    multiplier: PadicNumber
    multiplier_norm: NormValue
    p2_targets: tuple[PoleTarget, ...]

    def to_json(self) -> dict:
        return {
            "t1": to_literal(self.t1),
            "t2": to_literal(self.t2),
            "cycle_norm": self.cycle_norm.to_json(),
            "multiplier": to_literal(self.multiplier),
            "multiplier_norm": self.multiplier_norm.to_json(),
            "p2_targets": [t.to_json() for t in self.p2_targets],
        }


def solve_two_cycle(ctx: MapContext) -> TwoCycleContext:
    """Construct the 2-cycle, verify it, and pin its norm and multiplier.

    The cycle points solve x**2 + 2a = 0.  Their common norm is sqrt(A)
    away from p = 2 and sqrt(A/2) at p = 2; the multiplier of the second
    iterate is 9 exactly, computed through the chain rule and corroborated
    by a finite difference quotient.
    """
    p = ctx.p
    base = ctx.base_field
    if isinstance(ctx.a.origin, Fraction):
        minus_2a = PadicNumber.from_rational(-2 * ctx.a.origin, 1, base, ctx.precision)
    else:
        minus_2a = ctx.a.add(ctx.a).negate()
    if is_square(minus_2a):
        t1 = sqrt(minus_2a)
        field = base
    else:
        field = quadratic_extension(minus_2a)
        t1 = extension_generator(field)
    t2 = t1.negate()

    if not same_to_precision(ctx.g(t1), t1) or not same_to_precision(ctx.g(t2), t2):
        raise PadicError("constructed points are not fixed by the second iterate")

    cycle_norm = t1.norm_exact()
    expected = ctx.sqrtA if p != 2 else ctx.A.scale_by_p_power(1).sqrt()
    if cycle_norm != expected:
        raise PadicError(f"cycle norm {cycle_norm} differs from the expected {expected}")

    lam = ctx.f_derivative(t1).mul(ctx.f_derivative(t2))
    nine = PadicNumber.from_rational(9, 1, field, ctx.precision)
    if not same_to_precision(lam, nine):
        raise PadicError("chain-rule multiplier is not 9")
    _probe_multiplier(ctx, t1, nine)
    lam_norm = lam.norm_exact()
    expected_norm = NormValue.from_exponent(p, 2) if p == 3 else NormValue.one(p)
    if lam_norm != expected_norm:
        raise PadicError(f"multiplier norm {lam_norm} off the 1-or-1/9 table")

    return TwoCycleContext(t1, t2, field, cycle_norm, lam, lam_norm,
                           tuple(_p2_targets(ctx, field)))


def _probe_multiplier(ctx: MapContext, t1: PadicNumber, nine: PadicNumber) -> None:
    """Finite-quotient corroboration of the multiplier at t1."""
    k = max(ctx.precision // 2, 8)
    h = Fraction(ctx.p) ** k
    x = t1.shift_by_rational(h)
    quotient = ctx.g(x).sub(ctx.g(t1)).div(x.sub(t1))
    diff = quotient.sub(nine).norm()
    tolerance = Fraction(k - 4)  # |quotient - 9| <= |h| * p^4 slack
    if diff.exponent is not None and diff.exponent < tolerance:
        raise PadicError(f"difference-quotient probe {diff} too far from 9")


def _p2_targets(ctx: MapContext, field: FieldDescriptor):
    """Poles of the map and of its second iterate, as far as they exist in
    the working field; absent roots are flagged, never constructed."""
    targets = []
    minus_a = ctx.a.negate()
    root = sqrt_in_field(field, minus_a)
    if root is None:
        targets.append(PoleTarget("pole:+sqrt(-a)", None, False, "not in working field"))
        targets.append(PoleTarget("pole:-sqrt(-a)", None, False, "not in working field"))
    else:
        targets.append(PoleTarget("pole:+sqrt(-a)", root, True))
        targets.append(PoleTarget("pole:-sqrt(-a)", root.negate(), True))

    five = PadicNumber.from_rational(5, 1, ctx.base_field, ctx.precision)
    labels = ["gpole:+sqrt((-3+sqrt5)a/2)", "gpole:-sqrt((-3+sqrt5)a/2)",
              "gpole:+sqrt((-3-sqrt5)a/2)", "gpole:-sqrt((-3-sqrt5)a/2)"]
    if not is_square(five):
        note = ("sqrt(5) not in working field" if sqrt_in_field(field, five) is None
                else "needs a biquadratic extension; not in working field")
        targets.extend(PoleTarget(lbl, None, False, note) for lbl in labels)
        return targets
    s5 = sqrt(five)
    half = PadicNumber.from_rational(Fraction(1, 2), 1, ctx.base_field, ctx.precision)
    three = PadicNumber.from_rational(3, 1, ctx.base_field, ctx.precision)
    for sign_idx, s in enumerate((s5, s5.negate())):
        w = three.negate().add(s).mul(ctx.a).mul(half)
        rt = sqrt_in_field(field, w)
        for j, lbl in enumerate(labels[2 * sign_idx:2 * sign_idx + 2]):
            if rt is None:
                targets.append(PoleTarget(lbl, None, False, "not in working field"))
            else:
                targets.append(PoleTarget(lbl, rt if j == 0 else rt.negate(), True))
    return targets


def p2_membership(ctx: MapContext, cyc: TwoCycleContext, x: PadicNumber,
                  depth: int = 32) -> str:
    """ "member" | "non_member" | "unknown": does the orbit of x reach a pole
    of the map or of its second iterate within ``depth`` steps?"""
    cur = x
    for k in range(depth + 1):
        for target in cyc.p2_targets:
            if target.in_field and cur.sub(target.point).is_zero():
                return "member"
        try:
            cur = ctx.f(cur)
        except PoleHit as hit:
            return "member" if hit.certified else "unknown"
        except PadicError:
            return "unknown"
    return "non_member"


@dataclass
class SwapReport:
    radius: NormValue
    checked: int = 0
    excluded: int = 0
    unknown: int = 0
    counterexamples: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.counterexamples

    def to_json(self) -> dict:
        return {"radius": self.radius.to_json(), "checked": self.checked,
                "excluded": self.excluded, "unknown": self.unknown,
                "swap_exact": self.ok, "counterexamples": self.counterexamples}


def cycle_sphere_swap_check(ctx: MapContext, cyc: TwoCycleContext, r: NormValue,
                            samples: int = 200, rng=None, depth: int = 32) -> SwapReport:
    """One application maps S_r(t1) onto S_r(t2) and back, distance-exactly.

    Admissible radii: 0 < r <= sqrt(A)/(2*sqrt(2)) for p = 2, and
    0 < r < sqrt(A) for p >= 5.  Samples whose orbit meets a pole budget
    are excluded (member) or skipped (unknown) rather than failed.
    """
    p = ctx.p
    if p == 3:
        raise OutOfDomain("p = 3 contracts distances; use the attraction check")
    if r.is_zero():
        raise OutOfDomain("radius must be positive")
    if p == 2:
        cap = ctx.sqrtA.exponent + Fraction(3, 2)  # sqrt(A)/(2*sqrt(2))
        if r.exponent < cap:
            raise OutOfDomain(f"p=2 swap radii must satisfy r <= 2^{-cap}")
    elif not r < ctx.sqrtA:
        raise OutOfDomain(f"radius {r} must be below sqrt(A) = {ctx.sqrtA}")
    if r.exponent.denominator > value_group_denominator(cyc.field):
        raise RadiusNotRepresentable(f"{r} is outside the value group of {cyc.field!r}")

    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    report = SwapReport(r)
    for t_from, t_to in ((cyc.t1, cyc.t2), (cyc.t2, cyc.t1)):
        for _ in range(samples):
            x = sample_on_sphere(t_from, r, rnd)
            verdict = p2_membership(ctx, cyc, x, depth)
            if verdict == "member":
                report.excluded += 1
                continue
            if verdict == "unknown":
                report.unknown += 1
                continue
            dist = ctx.f(x).sub(t_to).norm()
            if dist != r:
                report.counterexamples.append(
                    {"x": to_literal(x), "distance": dist.to_json()})
            report.checked += 1
    return report


@dataclass
class AttractionReport:
    radius: NormValue
    double_steps: int
    checked: int = 0
    excluded: int = 0
    unknown: int = 0
    boundary_steps: int = 0
    counterexamples: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.counterexamples

    def to_json(self) -> dict:
        return {"radius": self.radius.to_json(), "double_steps": self.double_steps,
                "checked": self.checked, "excluded": self.excluded,
                "unknown": self.unknown, "boundary_steps": self.boundary_steps,
                "converges": self.ok, "counterexamples": self.counterexamples}


def cycle_attraction_check_p3(ctx: MapContext, cyc: TwoCycleContext, r: NormValue,
                              samples: int = 100, n_max: int = 20, rng=None,
                              depth: int = 32) -> AttractionReport:
    """For p = 3: distances to the cycle follow the contraction map exactly.

    Even steps are compared against t1 and odd steps against t2.  Off the
    boundary radius sqrt(A)/3 every transition is exact; at the boundary
    only the bound <= sqrt(A)/9 is asserted and tracking re-anchors on the
    actual distance.  Convergence is certified by the strictly increasing
    distance exponents over ``n_max`` double-steps.
    """
    if ctx.p != 3:
        raise OutOfDomain("this check is specific to p = 3")
    if r.is_zero() or not r < ctx.sqrtA:
        raise OutOfDomain(f"radius {r} must lie in (0, sqrt(A))")
    if r.exponent.denominator > value_group_denominator(cyc.field):
        raise RadiusNotRepresentable(f"{r} is outside the value group of {cyc.field!r}")

    rnd = _as_random(rng if rng is not None else RandomSource(0xA))
    report = AttractionReport(r, n_max)
    third = ctx.sqrtA.scale_by_p_power(1)
    for _ in range(samples):
        x = sample_on_sphere(cyc.t1, r, rnd)
        verdict = p2_membership(ctx, cyc, x, depth)
        if verdict == "member":
            report.excluded += 1
            continue
        if verdict == "unknown":
            report.unknown += 1
            continue
        expected = r
        evens = [r]
        cur = x
        failed = False
        for step in range(1, 2 * n_max + 1):
            cur = ctx.f(cur)
            target = cyc.t2 if step % 2 == 1 else cyc.t1
            dist = cur.sub(target).norm_exact()
            img = cycle_distance_map_p3(ctx.A, expected)
            if isinstance(img, NormUpperBound):
                report.boundary_steps += 1
                if not img.holds_for(dist):
                    report.counterexamples.append(
                        {"x": to_literal(x), "step": step, "distance": dist.to_json(),
                         "bound": img.to_json()})
                    failed = True
                    break
                expected = dist  # re-anchor on the exact observed distance
            else:
                if dist != img:
                    report.counterexamples.append(
                        {"x": to_literal(x), "step": step, "distance": dist.to_json(),
                         "expected": img.to_json()})
                    failed = True
                    break
                expected = img
            if step % 2 == 0:
                evens.append(dist)
        if failed:
            continue
        # even-subsequence contraction: factor 9 per double-step below sqrt(A)/3
        for d_prev, d_next in zip(evens, evens[1:]):
            if d_prev < third and d_next != d_prev.scale_by_p_power(2):
                report.counterexamples.append(
                    {"x": to_literal(x), "even_step_pair": [d_prev.to_json(),
                                                            d_next.to_json()]})
                failed = True
                break
        if failed:
            continue
        final, first = evens[-1].exponent, evens[0].exponent
        if final - first < 2 * (n_max - 2):
            report.counterexamples.append(
                {"x": to_literal(x), "final_exponent": str(final),
                 "initial_exponent": str(first), "note": "convergence too slow"})
            continue
        report.checked += 1
    return report


def verify_cycle_norms(ctx: MapContext, points) -> bool:
    """All points of a verified cycle share one norm, at most sqrt(A)."""
    points = list(points)
    if not points:
        raise NotACycle("empty cycle")
    for i, y in enumerate(points):
        nxt = points[(i + 1) % len(points)]
        try:
            image = ctx.f(y)
        except PoleHit as exc:
            raise NotACycle(f"point {i} is a pole") from exc
        if not same_to_precision(image, nxt):
            raise NotACycle(f"f does not map point {i} to point {(i + 1) % len(points)}")
    norms = []
    for y in points:
        m = y.norm()
        if isinstance(m, NormUpperBound):
            raise NotACycle("cycle point norm not certified")
        norms.append(m)
    return all(m == norms[0] for m in norms) and all(m <= ctx.sqrtA for m in norms)
