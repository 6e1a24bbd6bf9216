"""Fixed-point criterion and conjugation reduction for maps
(a*x + b)/(x^2 + c*x + d).

Such a map has a unique fixed point exactly when its fixed-point cubic
x^3 + c*x^2 + (d - a)*x - b is a perfect cube (x - x0)^3, which collapses
to the two polynomial identities b = (-c/3)^3 and d - a = c^2/3.  Testing
those directly avoids any square-root branch bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput, NotUniqueFixedPoint, PadicError
from .literals import to_literal
from .norms import NormValue
from .number import PadicNumber


@dataclass(frozen=True)
class RationalMapParams:
    a: PadicNumber
    b: PadicNumber
    c: PadicNumber
    d: PadicNumber

    def __post_init__(self):
        if self.a.is_zero():
            raise InvalidInput("leading numerator coefficient a must be nonzero")
        for x in (self.b, self.c, self.d):
            if not (x.field == self.a.field):
                raise InvalidInput("all coefficients must share one field")

    @property
    def field(self):
        return self.a.field


@dataclass(frozen=True)
class FixedPointReport:
    unique: bool
    x0: PadicNumber | None
    multiplier: PadicNumber | None
    classification: str | None  # "attractive" | "indifferent" | "repelling"
    x0_is_pole: bool

    def to_json(self) -> dict:
        return {
            "unique": self.unique,
            "x0": to_literal(self.x0) if self.x0 is not None else None,
            "multiplier": to_literal(self.multiplier) if self.multiplier is not None else None,
            "classification": self.classification,
            "x0_is_pole": self.x0_is_pole,
        }


def _classify(norm, one: NormValue) -> str:
    if norm < one:
        return "attractive"
    if norm > one:
        return "repelling"
    return "indifferent"


def unique_fixed_point_test(params: RationalMapParams) -> FixedPointReport:
    """Decide uniqueness of the fixed point and classify its multiplier.

    When unique, x0 = -c/3, the fixed-point cubic equals (x - x0)^3, and the
    report flags whether x0 happens to be a pole of the map itself.
    """
    a, b, c, d = params.a, params.b, params.c, params.d
    field = params.field
    three = PadicNumber.from_rational(3, 1, field, a.prec or 64)
    x0 = c.div(three).negate()
    cube_ok = b.sub(x0.mul(x0).mul(x0)).is_zero()
    quad_ok = d.sub(a).sub(three.mul(x0).mul(x0)).is_zero()
    if not (cube_ok and quad_ok):
        return FixedPointReport(False, None, None, None, False)
    den_at_x0 = x0.square().add(c.mul(x0)).add(d)
    if den_at_x0.is_zero():
        return FixedPointReport(True, x0, None, None, True)
    num = a.mul(den_at_x0).sub(a.mul(x0).add(b).mul(x0.add(x0).add(c)))
    lam = num.div(den_at_x0.square())
    return FixedPointReport(True, x0, lam, _classify(lam.norm(), NormValue.one(field.p)),
                            False)


@dataclass(frozen=True)
class ConjugationResult:
    """Coefficients of the map conjugated by the shift t -> t + x0.

    The reduced map is (q2*t^2 + q1*t)/(t^2 + e1*t + e0); it is canonical
    (equal to a*t/(t^2 + a)) exactly when the original c vanishes, and
    otherwise it is a (2,2)-rational map, out of scope here.
    """

    x0: PadicNumber
    q2: PadicNumber
    q1: PadicNumber
    e1: PadicNumber
    e0: PadicNumber
    canonical: bool
    canonical_a: PadicNumber | None
    out_of_scope: bool
    note: str

    def to_json(self) -> dict:
        return {
            "x0": to_literal(self.x0),
            "numerator": {"t^2": to_literal(self.q2), "t": to_literal(self.q1)},
            "denominator": {"t": to_literal(self.e1), "1": to_literal(self.e0)},
            "canonical": self.canonical,
            "canonical_a": to_literal(self.canonical_a) if self.canonical_a is not None else None,
            "out_of_scope": self.out_of_scope,
            "note": self.note,
        }


def conjugate_reduce(params: RationalMapParams) -> ConjugationResult:
    """Conjugate by h(t) = t + x0 and reduce toward a*t/(t^2 + a)."""
    report = unique_fixed_point_test(params)
    if not report.unique:
        raise NotUniqueFixedPoint("reduction needs the unique-fixed-point criterion")
    a, b, c, d = params.a, params.b, params.c, params.d
    x0 = report.x0
    # (f(t + x0) - x0) as a rational function of t
    q2 = x0.negate()
    q1 = a.sub(x0.mul(x0).add(x0.mul(x0))).sub(c.mul(x0))
    q0 = a.mul(x0).add(b).sub(x0.mul(x0).mul(x0)).sub(c.mul(x0).mul(x0)).sub(d.mul(x0))
    e1 = x0.add(x0).add(c)
    e0 = x0.square().add(c.mul(x0)).add(d)
    if not q0.is_zero():
        raise PadicError("conjugated constant term failed to vanish")  # pragma: no cover
    if not q1.sub(e0).is_zero():
        raise PadicError("conjugated coefficients lost their symmetry")  # pragma: no cover
    if c.is_zero():
        return ConjugationResult(x0, q2, q1, e1, e0, True, a, False,
                                 "already in the canonical form a*t/(t^2 + a)")
    return ConjugationResult(
        x0, q2, q1, e1, e0, False, None, True,
        "out of scope: conjugation yields a (2,2)-rational map")
