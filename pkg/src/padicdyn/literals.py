"""Parsing and serialization of p-adic literals.

Input is either a rational string "m/n" or a digit object
``{"p": p, "valuation": "v" or "num/den", "digits": [d0, d1, ...],
"precision": N}``; extension elements use ``{"p": p, "d": <literal>,
"u": <digit object>, "w": <digit object>}``.  Output is always the digit
object form.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidInput
from .norms import NormUpperBound, NormValue
from .number import DEFAULT_PRECISION, FieldDescriptor, PadicNumber

_RATIONAL_RE = re.compile(r"^-?\d+(/-?\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise InvalidInput(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    try:
        return Fraction(int(num), int(den) if den else 1)
    except ZeroDivisionError as exc:
        raise InvalidInput(f"zero denominator in {text!r}") from exc


def parse_literal(value, field: FieldDescriptor,
                  precision: int = DEFAULT_PRECISION) -> PadicNumber:
    """Build a PadicNumber from a literal (string or digit object)."""
    if isinstance(value, PadicNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return PadicNumber.from_rational(value, 1, field, precision)
    if isinstance(value, str):
        return PadicNumber.from_rational(parse_rational(value), 1, field, precision)
    if isinstance(value, dict):
        return _parse_digit_object(value, field, precision)
    raise InvalidInput(f"cannot parse literal of type {type(value).__name__}")


def _parse_valuation(v) -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        q = Fraction(v)
        if q.denominator != 1:
            raise InvalidInput(f"base-field valuation {v!r} must be an integer")
        return q.numerator
    raise InvalidInput(f"bad valuation {v!r}")


def _parse_digit_object(obj: dict, field: FieldDescriptor, precision: int) -> PadicNumber:
    p = obj.get("p", field.p)
    if p != field.p:
        raise InvalidInput(f"literal for p={p} in a p={field.p} field")
    if "u" in obj or "w" in obj:
        if not field.is_extension:
            raise InvalidInput("extension literal supplied for a base field")
        base = field.base()
        u = parse_literal(obj.get("u", "0"), base, precision)
        w = parse_literal(obj.get("w", "0"), base, precision)
        return PadicNumber._ext(field, u, w)
    if field.is_extension:
        base = field.base()
        return parse_literal(obj, base, precision).embed(field)
    digits = obj.get("digits")
    if digits is None:
        raise InvalidInput("digit object needs a 'digits' list")
    if any(not isinstance(d, int) or not 0 <= d < p for d in digits):
        raise InvalidInput(f"digits must be integers in [0, {p})")
    val = _parse_valuation(obj.get("valuation", 0))
    prec = obj.get("precision", len(digits))
    if prec <= 0 or len(digits) > prec:
        raise InvalidInput("precision must cover the listed digits")
    unit = 0
    for d in reversed(digits):
        unit = unit * p + d
    # a leading zero digit is folded into the valuation by normalization
    exact = Fraction(unit) * Fraction(p) ** val
    return PadicNumber.from_scaled(field, val, unit, prec, origin=exact)


def to_literal(x: PadicNumber) -> dict:
    """Serialize to the digit-object form."""
    p = x.field.p
    if x.field.is_extension:
        return {
            "p": p,
            "d": to_literal(x.field.d),
            "u": to_literal(x.u),
            "w": to_literal(x.w),
        }
    if x.is_exact_zero:
        return {"p": p, "valuation": "inf", "digits": [], "precision": 0}
    if x.unit == 0:
        return {"p": p, "valuation": f">= {x.val}", "digits": [], "precision": 0}
    return {
        "p": p,
        "valuation": str(x.val),
        "digits": x.digits(),
        "precision": x.prec,
    }


def norm_to_json(m: NormValue | NormUpperBound):
    return m.to_json()
