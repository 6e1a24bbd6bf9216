"""Command-line experiment runner.

Subcommands: orbit, verify, reduce, phi (radius oracle queries), measure
(Haar calculator).  Exit codes: 0 all assertions hold, 1 counterexample
found, 2 invalid input, 3 precision exhausted.  PADIC_SEED overrides --seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import reports
from .cycles import cycle_attraction_check_p3, cycle_sphere_swap_check, solve_two_cycle
from .dynamics import MapContext, iterate_orbit
from .ergodic import displacement_certificate, ergodicity_report, haar_measure_ball
from .errors import (
    AstarUnresolvable,
    BallNotInSphere,
    DivisionByZeroToPrecision,
    IncompatibleField,
    InvalidInput,
    NotACycle,
    NotUniqueFixedPoint,
    OutOfDomain,
    PadicError,
    PoleHit,
    PrecisionExhausted,
    RadiusNotRepresentable,
    SqrtOfMinusANotInQp,
    ZeroDenominator,
)
from .geometry import BallDescriptor, ball_image_check, invariant_sphere_test, siegel_disk
from .literals import parse_literal, parse_rational, to_literal
from .norms import NormValue, parse_radius
from .number import DEFAULT_PRECISION, PadicNumber, is_prime, value_group_denominator
from .radius import RadiusOracle, radius_image, radius_law_trace, radius_limit
from .reduction import RationalMapParams, conjugate_reduce, unique_fixed_point_test
from .sampling import DEFAULT_SEED, RandomSource, sample_on_sphere

SUITES = ("radius-law", "spheres", "ball-image", "ergodicity",
          "cycles-p2", "cycles-p3", "cycles-p5", "fixed-point")

_INPUT_ERRORS = (InvalidInput, ZeroDenominator, IncompatibleField, OutOfDomain,
                 RadiusNotRepresentable, SqrtOfMinusANotInQp, NotUniqueFixedPoint,
                 BallNotInSphere, NotACycle, AstarUnresolvable, ValueError)
_PRECISION_ERRORS = (PrecisionExhausted, DivisionByZeroToPrecision)


def _add_common(p: argparse.ArgumentParser, with_a: bool = True) -> None:
    p.add_argument("--p", type=int, required=True, help="prime base")
    if with_a:
        p.add_argument("--a", required=True, help="map parameter, rational literal")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--depth", type=int, default=32)
    p.add_argument("--jobs", type=int, default=1,
                   help="parallelism cap; output ordering is unaffected")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)


def _seed_of(args) -> int:
    env = os.environ.get("PADIC_SEED")
    if env is not None:
        return int(env, 0)
    if args.seed is not None:
        return args.seed
    return DEFAULT_SEED


def _validate(args) -> None:
    if not is_prime(args.p):
        raise InvalidInput(f"p={args.p} is not prime")
    for name in ("precision", "samples", "steps", "jobs"):
        if getattr(args, name, 1) <= 0:
            raise InvalidInput(f"--{name} must be positive")
    if getattr(args, "depth", 0) < 0:
        raise InvalidInput("--depth must be nonnegative")


def _config_of(args, **extra) -> dict:
    cfg = {"p": args.p, "precision": args.precision, "seed": _seed_of(args),
           "format": args.format}
    for name in ("samples", "steps", "depth"):
        if hasattr(args, name):
            cfg[name] = getattr(args, name)
    if hasattr(args, "a"):
        cfg["a"] = args.a
    cfg.update(extra)
    return cfg


def _ctx_of(args) -> MapContext:
    return MapContext(args.p, parse_rational(args.a), args.precision)


def _int_exponents_below(sqrtA: NormValue, count: int) -> list[NormValue]:
    e = sqrtA.exponent
    first = e.numerator // e.denominator + 1
    return [NormValue.from_exponent(sqrtA.p, first + k) for k in range(count)]


def _int_exponents_above(sqrtA: NormValue, count: int) -> list[NormValue]:
    e = sqrtA.exponent
    first = -(-e.numerator // e.denominator) - 1  # largest integer exponent < e
    return [NormValue.from_exponent(sqrtA.p, first - k) for k in range(count)]


# ---------------------------------------------------------------------------
# orbit
# ---------------------------------------------------------------------------


def cmd_orbit(args) -> int:
    _validate(args)
    ctx = _ctx_of(args)
    x = parse_literal(args.x, ctx.base_field, args.precision)
    refs = []
    if args.refs:
        refs = [parse_literal(t.strip(), ctx.base_field, args.precision)
                for t in args.refs.split(",")]
    record = iterate_orbit(ctx, x, args.steps, refs)
    status = "pass" if record.termination.kind != "precision_exhausted" else "precision_exhausted"
    rep = reports.envelope("orbit", _config_of(args, x=args.x, refs=args.refs or ""),
                           record.to_json(), status)
    reports.emit(rep, args.format, args.output)
    return reports.EXIT_PRECISION if status == "precision_exhausted" else reports.EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_radius_law(ctx, args, rnd):
    if args.r:
        radii = [parse_radius(args.p, t.strip()) for t in args.r.split(",")]
    else:
        radii = [NormValue.from_exponent(args.p, e) for e in range(3, -4, -1)]
    zero = PadicNumber.zero(ctx.base_field)
    per = max(1, args.samples // len(radii))
    checks, counterexamples, pole_hits = [], [], []
    for r in radii:
        failures = 0
        for _ in range(per):
            x = sample_on_sphere(zero, r, rnd)
            try:
                trace = radius_law_trace(ctx, x, args.steps)
            except PoleHit as hit:
                pole_hits.append({"x": to_literal(x), "step": hit.step,
                                  "note": "start lies in the exclusion set"})
                continue
            if not trace["ok"]:
                failures += 1
                counterexamples.append({"x": to_literal(x), **trace})
        checks.append({"radius": r.to_json(), "samples": per, "failures": failures})
    result = {"checks": checks, "steps": args.steps, "pole_hits": pole_hits}
    return result, counterexamples


def _suite_spheres(ctx, args, rnd):
    radii = _int_exponents_below(ctx.sqrtA, 2) + _int_exponents_above(ctx.sqrtA, 2)
    if ctx.sqrtA.is_integral_exponent():
        radii.append(ctx.sqrtA)
    checks, counterexamples = [], []
    per = max(1, args.samples // len(radii))
    for r in radii:
        rep = invariant_sphere_test(ctx, r, per, args.steps, rnd)
        checks.append(rep.to_json())
        counterexamples.extend(rep.failures)
    return {"checks": checks, "siegel_disk": siegel_disk(ctx).to_json()}, counterexamples


def _suite_ball_image(ctx, args, rnd):
    r = _int_exponents_below(ctx.sqrtA, 1)[0]
    zero = PadicNumber.zero(ctx.base_field)
    c = sample_on_sphere(zero, r, rnd)
    checks, counterexamples = [], []
    per = max(1, args.samples // 3)
    for k in (2, 1, 0):  # rho = r/p^k including the whole-sphere slice rho = r
        rho = NormValue.from_exponent(args.p, r.exponent + k)
        rep = ball_image_check(ctx, BallDescriptor(c, rho, "closed"), per, rnd)
        checks.append(rep.to_json())
        counterexamples.extend(rep.deviations)
    return {"checks": checks}, counterexamples


def _suite_ergodicity(ctx, args, rnd):
    if args.r:
        r = parse_radius(args.p, args.r)
    else:
        r = _int_exponents_below(ctx.sqrtA, 1)[0]
    rep = ergodicity_report(ctx, r, args.samples, args.steps, rnd)
    shift = displacement_certificate(ctx, r, min(args.samples, 200), rnd)
    counterexamples = list(shift["failures"])
    if not rep.ok:
        counterexamples.append({"note": "ergodicity witness incomplete"})
    return {"checks": [rep.to_json()], "displacement": shift}, counterexamples


def _cycle_radii(ctx, cyc, args, boundary_cap: Fraction, count: int = 3):
    if args.r:
        return [parse_radius(args.p, t.strip()) for t in args.r.split(",")]
    den = value_group_denominator(cyc.field)
    radii = []
    step = Fraction(1, den)
    e = boundary_cap if boundary_cap.denominator <= den else boundary_cap + Fraction(1, 2)
    while len(radii) < count:
        if e.denominator <= den:
            radii.append(NormValue(args.p, e))
        e += step
    return radii


def _suite_cycles_swap(ctx, args, rnd, expect_p):
    if expect_p == 2 and ctx.p != 2:
        raise InvalidInput("cycles-p2 needs --p 2")
    if expect_p == 5 and ctx.p < 5:
        raise InvalidInput("cycles-p5 needs p >= 5")
    cyc = solve_two_cycle(ctx)
    if ctx.p == 2:
        cap = ctx.sqrtA.exponent + Fraction(3, 2)
    else:
        cap = ctx.sqrtA.exponent + Fraction(1, 2)
    radii = _cycle_radii(ctx, cyc, args, cap)
    per = max(1, args.samples // (2 * len(radii)))
    checks, counterexamples = [], []
    for r in radii:
        rep = cycle_sphere_swap_check(ctx, cyc, r, per, rnd, args.depth)
        checks.append(rep.to_json())
        counterexamples.extend(rep.counterexamples)
    return {"cycle": cyc.to_json(), "checks": checks}, counterexamples


def _suite_cycles_p3(ctx, args, rnd):
    if ctx.p != 3:
        raise InvalidInput("cycles-p3 needs --p 3")
    cyc = solve_two_cycle(ctx)
    cap = ctx.sqrtA.exponent + Fraction(1, 2)
    radii = _cycle_radii(ctx, cyc, args, cap)
    per = max(1, args.samples // len(radii))
    checks, counterexamples = [], []
    for r in radii:
        rep = cycle_attraction_check_p3(ctx, cyc, r, per, max(20, args.steps // 2),
                                        rnd, args.depth)
        checks.append(rep.to_json())
        counterexamples.extend(rep.counterexamples)
    return {"cycle": cyc.to_json(), "checks": checks}, counterexamples


def _suite_fixed_point(args, rnd):
    from .number import FieldDescriptor

    field = FieldDescriptor(args.p)
    p = args.p
    checks, counterexamples = [], []
    unique_ok = flips = 0
    for i in range(args.samples):
        a = Fraction(rnd.randrange(1, p**3) * rnd.choice((1, -1)), 1)
        c = Fraction(0) if rnd.random() < 0.125 else \
            Fraction(rnd.randrange(1, p**3) * rnd.choice((1, -1)))
        b = -(c / 3) ** 3
        d = a + c * c / 3
        params = RationalMapParams(
            PadicNumber.from_rational(a, 1, field, args.precision),
            PadicNumber.from_rational(b, 1, field, args.precision),
            PadicNumber.from_rational(c, 1, field, args.precision),
            PadicNumber.from_rational(d, 1, field, args.precision))
        rep = unique_fixed_point_test(params)
        if not rep.unique:
            counterexamples.append({"a": str(a), "c": str(c),
                                    "note": "forced coefficients not unique"})
            continue
        red = conjugate_reduce(params)
        if c == 0 and not red.canonical:
            counterexamples.append({"a": str(a), "c": str(c),
                                    "note": "c = 0 did not reduce to canonical form"})
            continue
        if c != 0 and not red.out_of_scope:
            counterexamples.append({"a": str(a), "c": str(c),
                                    "note": "c != 0 not flagged out of scope"})
            continue
        unique_ok += 1
        # a single-digit perturbation of b must break uniqueness
        k = rnd.randrange(0, 3)
        bump = Fraction(rnd.randrange(1, p) * p**k)
        perturbed = RationalMapParams(
            params.a, PadicNumber.from_rational(b + bump, 1, field, args.precision),
            params.c, params.d)
        if unique_fixed_point_test(perturbed).unique:
            counterexamples.append({"a": str(a), "c": str(c), "bump": str(bump),
                                    "note": "perturbed b still unique"})
        else:
            flips += 1
    checks.append({"samples": args.samples, "unique_ok": unique_ok,
                   "perturbation_flips": flips})
    return {"checks": checks}, counterexamples


def cmd_verify(args) -> int:
    _validate(args)
    seed = _seed_of(args)
    rnd = RandomSource(seed).rng()
    suite = args.suite
    if suite == "fixed-point":
        result, counterexamples = _suite_fixed_point(args, rnd)
    else:
        ctx = _ctx_of(args)
        if suite == "radius-law":
            result, counterexamples = _suite_radius_law(ctx, args, rnd)
        elif suite == "spheres":
            result, counterexamples = _suite_spheres(ctx, args, rnd)
        elif suite == "ball-image":
            result, counterexamples = _suite_ball_image(ctx, args, rnd)
        elif suite == "ergodicity":
            result, counterexamples = _suite_ergodicity(ctx, args, rnd)
        elif suite == "cycles-p2":
            result, counterexamples = _suite_cycles_swap(ctx, args, rnd, 2)
        elif suite == "cycles-p5":
            result, counterexamples = _suite_cycles_swap(ctx, args, rnd, 5)
        elif suite == "cycles-p3":
            result, counterexamples = _suite_cycles_p3(ctx, args, rnd)
        else:  # pragma: no cover - argparse restricts choices
            raise InvalidInput(f"unknown suite {suite}")
    status = "pass" if not counterexamples else "fail"
    rep = reports.envelope("verify", _config_of(args, r=args.r or ""), result, status,
                           counterexamples, suite=suite)
    reports.emit(rep, args.format, args.output)
    return reports.EXIT_OK if status == "pass" else reports.EXIT_COUNTEREXAMPLE


# ---------------------------------------------------------------------------
# reduce / phi / measure
# ---------------------------------------------------------------------------


def cmd_reduce(args) -> int:
    _validate(args)
    parts = [t.strip() for t in args.coeffs.split(",")]
    if len(parts) != 4:
        raise InvalidInput("--coeffs wants four rationals a,b,c,d")
    from .number import FieldDescriptor

    field = FieldDescriptor(args.p)
    a, b, c, d = (PadicNumber.from_rational(parse_rational(t), 1, field, args.precision)
                  for t in parts)
    params = RationalMapParams(a, b, c, d)
    rep = unique_fixed_point_test(params)
    result = {"fixed_point": rep.to_json()}
    if rep.unique:
        result["reduction"] = conjugate_reduce(params).to_json()
    out = reports.envelope("reduce", _config_of(args, coeffs=args.coeffs),
                           result, "pass")
    reports.emit(out, args.format, args.output)
    return reports.EXIT_OK


def cmd_phi(args) -> int:
    _validate(args)
    ctx = _ctx_of(args)
    r = parse_radius(args.p, args.r)
    at = None
    if args.astar:
        oracle = RadiusOracle.with_constant(ctx.A, parse_radius(args.p, args.astar))
    else:
        oracle = RadiusOracle.per_point(ctx)
        if args.at:
            at = parse_literal(args.at, ctx.base_field, args.precision)
    image = radius_image(oracle, r, at)
    result = {"A": ctx.A.to_json(), "sqrtA": ctx.sqrtA.to_json(),
              "r": r.to_json(), "image": image.to_json()}
    try:
        result["limit"] = radius_limit(oracle, r).to_json()
    except AstarUnresolvable:
        result["limit"] = None
    out = reports.envelope("phi", _config_of(args, r=args.r, astar=args.astar or "",
                                             at=args.at or ""), result, "pass")
    reports.emit(out, args.format, args.output)
    return reports.EXIT_OK


def cmd_measure(args) -> int:
    _validate(args)
    r = parse_radius(args.p, args.r)
    rho = parse_radius(args.p, args.rho)
    mu = haar_measure_ball(args.p, r, rho)
    result = {"r": r.to_json(), "rho": rho.to_json(),
              "measure": {"num": mu.numerator, "den": mu.denominator}}
    out = reports.envelope("measure", {"p": args.p, "r": args.r, "rho": args.rho,
                                       "format": args.format}, result, "pass")
    reports.emit(out, args.format, args.output)
    return reports.EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="padicdyn",
        description="Exact verification runs for the dynamics of a*x/(x^2+a) over Q_p")
    sub = top.add_subparsers(dest="command", required=True)

    p_orbit = sub.add_parser("orbit", help="iterate the map and record the orbit")
    _add_common(p_orbit)
    p_orbit.add_argument("--x", required=True, help="start point literal")
    p_orbit.add_argument("--refs", default=None,
                         help="comma-separated reference point literals")
    p_orbit.set_defaults(func=cmd_orbit)

    p_verify = sub.add_parser("verify", help="run a named assertion suite")
    p_verify.add_argument("suite", choices=SUITES)
    _add_common(p_verify)
    p_verify.add_argument("--r", default=None,
                          help="radius literal(s), comma separated")
    p_verify.set_defaults(func=cmd_verify)

    p_reduce = sub.add_parser("reduce", help="fixed-point test and conjugation")
    p_reduce.add_argument("--p", type=int, required=True)
    p_reduce.add_argument("--coeffs", required=True, help="a,b,c,d rationals")
    p_reduce.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p_reduce.add_argument("--format", choices=("json", "csv"), default="json")
    p_reduce.add_argument("--output", default=None)
    p_reduce.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p_reduce.set_defaults(func=cmd_reduce)

    p_phi = sub.add_parser("phi", help="radius oracle queries")
    _add_common(p_phi)
    p_phi.add_argument("--r", required=True)
    p_phi.add_argument("--astar", default=None, help="constant A* radius literal")
    p_phi.add_argument("--at", default=None, help="point literal resolving A*")
    p_phi.set_defaults(func=cmd_phi)

    p_measure = sub.add_parser("measure", help="normalized Haar measure of a ball")
    p_measure.add_argument("--p", type=int, required=True)
    p_measure.add_argument("--r", required=True)
    p_measure.add_argument("--rho", required=True)
    p_measure.add_argument("--format", choices=("json", "csv"), default="json")
    p_measure.add_argument("--output", default=None)
    p_measure.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    p_measure.set_defaults(func=cmd_measure)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return reports.EXIT_INVALID_INPUT
    except _PRECISION_ERRORS as exc:
        print(f"precision: {exc}", file=sys.stderr)
        return reports.EXIT_PRECISION
    except PoleHit as exc:
        print(f"pole: {exc}", file=sys.stderr)
        return reports.EXIT_COUNTEREXAMPLE
    except PadicError as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return reports.EXIT_COUNTEREXAMPLE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
