"""The map f(x) = a*x/(x^2 + a): evaluation, second iterate, orbits.

Orbits record every iterate with exact norms.  When x^2 + a vanishes only
at the working precision, the engine replays the orbit at doubled precision
(possible whenever the start and the parameter carry exact origins) before
declaring a pole hit, so HitPole and PrecisionExhausted stay distinct.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import InvalidInput, PadicError, PoleHit, PrecisionExhausted
from .hensel import extension_generator, is_square, quadratic_extension, sqrt
from .literals import parse_literal, to_literal
from .norms import NormUpperBound, NormValue
from .number import DEFAULT_PRECISION, FieldDescriptor, PadicNumber, same_to_precision


class MapContext:
    """Parameter a, its norm data, and the poles +/-sqrt(-a).

    The poles live in Q_p when -a is a square there, otherwise in the
    quadratic extension Q_p(sqrt(-a)).
    """

    __slots__ = ("p", "precision", "base_field", "a", "A", "sqrtA",
                 "pole_field", "poles", "_a_embeds")

    def __init__(self, p: int, a, precision: int = DEFAULT_PRECISION):
        self.p = p
        self.precision = precision
        self.base_field = FieldDescriptor(p)
        self.a = parse_literal(a, self.base_field, precision)
        if self.a.is_zero():
            raise InvalidInput("the map needs a nonzero parameter")
        self.A = self.a.norm_exact()
        self.sqrtA = self.A.sqrt()
        minus_a = self.a.negate()
        if is_square(minus_a):
            pole = sqrt(minus_a)
            self.pole_field = self.base_field
        else:
            self.pole_field = quadratic_extension(minus_a)
            pole = extension_generator(self.pole_field)
        self.poles = (pole, pole.negate())
        self._a_embeds = [(self.base_field, self.a)]
        for x in self.poles:
            if not x.square().add(self.a_in(x.field)).is_zero():
                raise PadicError("pole does not satisfy x^2 + a = 0")  # pragma: no cover
            if x.norm_exact() != self.sqrtA:
                raise PadicError("pole norm differs from sqrt|a|")  # pragma: no cover

    @property
    def poles_in_base_field(self) -> bool:
        return not self.pole_field.is_extension

    @property
    def refinable(self) -> bool:
        return isinstance(self.a.origin, Fraction)

    def at_precision(self, precision: int) -> MapContext:
        if not self.refinable:
            raise PrecisionExhausted("parameter has no exact origin to replay")
        return MapContext(self.p, self.a.origin, precision)

    def a_in(self, field: FieldDescriptor) -> PadicNumber:
        for f, emb in self._a_embeds:
            if f == field:
                return emb
        emb = self.a.embed(field)
        self._a_embeds.append((field, emb))
        return emb

    # -- the map and its second iterate -------------------------------------

    def f(self, x: PadicNumber) -> PadicNumber:
        a = self.a_in(x.field)
        den = x.square().add(a)
        if den.is_zero():
            raise PoleHit("x^2 + a vanishes at the working precision",
                          certified=den.is_exact_zero)
        return a.mul(x).div(den)

    def g(self, x: PadicNumber) -> PadicNumber:
        """f(f(x)) via the closed rational form, cross-checked against composition."""
        a = self.a_in(x.field)
        x2 = x.square()
        den = x2.square().add(a.mul(x2).mul(_three(x.field, self.precision))).add(a.square())
        if den.is_zero():
            raise PoleHit("second-iterate denominator vanishes at the working precision",
                          certified=den.is_exact_zero)
        closed = a.mul(x).mul(x2.add(a)).div(den)
        composed = self.f(self.f(x))
        if not same_to_precision(closed, composed):
            raise PadicError("closed form and composition disagree")  # pragma: no cover
        return closed

    def f_derivative(self, x: PadicNumber) -> PadicNumber:
        """f'(x) = a(a - x^2)/(x^2 + a)^2."""
        a = self.a_in(x.field)
        den = x.square().add(a)
        if den.is_zero():
            raise PoleHit("derivative at a pole", certified=den.is_exact_zero)
        return a.mul(a.sub(x.square())).div(den.square())

    def to_json(self) -> dict:
        return {"p": self.p, "a": to_literal(self.a), "precision": self.precision}

    def __repr__(self):
        return f"MapContext(p={self.p}, a={self.a!r})"


def _three(field: FieldDescriptor, precision: int) -> PadicNumber:
    return PadicNumber.from_rational(3, 1, field, precision)


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Termination:
    kind: str  # "completed" | "hit_pole" | "precision_exhausted"
    step: int | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "step": self.step}


@dataclass(frozen=True)
class OrbitEntry:
    n: int
    x: PadicNumber
    norm: NormValue | NormUpperBound
    ref_dists: tuple


@dataclass
class OrbitRecord:
    start: PadicNumber
    ctx: MapContext
    entries: list[OrbitEntry] = dc_field(default_factory=list)
    termination: Termination = Termination("completed")

    def norms(self) -> list:
        return [e.norm for e in self.entries]

    def to_json(self) -> dict:
        return {
            "start": to_literal(self.start),
            "a": to_literal(self.ctx.a),
            "p": self.ctx.p,
            "entries": [
                {
                    "n": e.n,
                    "x": to_literal(e.x),
                    "norm_exp": _exp_str(e.norm),
                    "ref_dists": [_exp_str(d) for d in e.ref_dists],
                }
                for e in self.entries
            ],
            "termination": self.termination.to_json(),
        }


def _exp_str(m) -> str:
    if isinstance(m, NormUpperBound):
        return f">= {m.exponent_str()}"
    return m.exponent_str()


def _entry(n: int, x: PadicNumber, refs) -> OrbitEntry:
    return OrbitEntry(n, x, x.norm(), tuple(x.sub(r).norm() for r in refs))


def _run_orbit(ctx: MapContext, x: PadicNumber, n_max: int, refs) -> tuple[list, str, int]:
    entries = [_entry(0, x, refs)]
    cur = x
    for n in range(n_max):
        try:
            cur = ctx.f(cur)
        except PoleHit as hit:
            return entries, ("pole_exact" if hit.certified else "pole_to_precision"), n
        except PrecisionExhausted:
            return entries, "precision_lost", n
        entries.append(_entry(n + 1, cur, refs))
    return entries, "completed", n_max


def iterate_orbit(ctx: MapContext, x: PadicNumber, n_max: int, refs=(),
                  max_escalations: int = 2) -> OrbitRecord:
    """Iterate up to n_max steps, recording every iterate with exact norms.

    ``refs`` are reference points whose distances to each iterate are
    recorded.  Ambiguous pole encounters are replayed at doubled precision
    before termination is decided.
    """
    if n_max < 1:
        raise InvalidInput("n_max must be at least 1")
    refs = tuple(r.embed(x.field) if not r.field.is_extension and x.field.is_extension
                 else r for r in refs)
    run_ctx, run_x, run_refs = ctx, x, refs
    for attempt in range(max_escalations + 1):
        entries, status, step = _run_orbit(run_ctx, run_x, n_max, run_refs)
        if status == "completed":
            return OrbitRecord(run_x, run_ctx, entries, Termination("completed"))
        if status == "pole_exact":
            return OrbitRecord(run_x, run_ctx, entries, Termination("hit_pole", step))
        if status == "precision_lost":
            return OrbitRecord(run_x, run_ctx, entries,
                               Termination("precision_exhausted", step))
        # pole_to_precision: replay at doubled precision when possible
        if attempt < max_escalations and run_x.refinable and run_ctx.refinable:
            new_prec = run_ctx.precision * 2
            run_ctx = run_ctx.at_precision(new_prec)
            run_x = run_x.at_precision(new_prec)
            run_refs = tuple(r.at_precision(new_prec) if r.refinable else r
                             for r in run_refs)
            continue
        if run_x.refinable and run_ctx.refinable:
            # replay stayed zero: treat as a genuine pole hit
            return OrbitRecord(run_x, run_ctx, entries, Termination("hit_pole", step))
        return OrbitRecord(run_x, run_ctx, entries,
                           Termination("precision_exhausted", step))
    raise AssertionError("unreachable")  # pragma: no cover
