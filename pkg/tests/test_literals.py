from fractions import Fraction

import pytest

from padicdyn.errors import InvalidInput
from padicdyn.hensel import extension_generator, quadratic_extension
from padicdyn.literals import parse_literal, parse_rational, to_literal
from padicdyn.number import PadicNumber, same_to_precision


def test_parse_rational_strings():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational(" 1/-2 ") == Fraction(-1, 2)
    with pytest.raises(InvalidInput):
        parse_rational("1.5")
    with pytest.raises(InvalidInput):
        parse_rational("1/0")


def test_rational_string_round_trip(Q5):
    x = parse_literal("-5/24", Q5)
    blob = to_literal(x)
    assert blob["p"] == 5 and blob["valuation"] == "1" and blob["precision"] == 64
    y = parse_literal(blob, Q5)
    assert same_to_precision(x, y)


def test_digit_object_with_leading_zero_normalizes(Q5):
    x = parse_literal({"p": 5, "valuation": 0, "digits": [0, 3, 1], "precision": 8}, Q5)
    assert x.val == 1 and x.digits()[0] == 3
    assert x.refinable  # digit strings are exact data


def test_digit_object_validation(Q5):
    with pytest.raises(InvalidInput):
        parse_literal({"p": 7, "digits": [1]}, Q5)
    with pytest.raises(InvalidInput):
        parse_literal({"p": 5, "digits": [9]}, Q5)
    with pytest.raises(InvalidInput):
        parse_literal({"p": 5, "digits": [1, 2], "precision": 1}, Q5)
    with pytest.raises(InvalidInput):
        parse_literal({"p": 5, "valuation": "1/2", "digits": [1]}, Q5)
    with pytest.raises(InvalidInput):
        parse_literal(3.14, Q5)


def test_zero_literals(Q5):
    z = PadicNumber.zero(Q5)
    assert to_literal(z) == {"p": 5, "valuation": "inf", "digits": [], "precision": 0}
    one = parse_literal("1", Q5)
    ztp = one - one
    blob = to_literal(ztp)
    assert blob["valuation"] == ">= 64"


def test_extension_round_trip(Q2):
    E = quadratic_extension(parse_literal("-2", Q2))
    g = extension_generator(E)
    one = parse_literal("1", Q2).embed(E)
    z = g + one
    blob = to_literal(z)
    assert set(blob) == {"p", "d", "u", "w"}
    back = parse_literal(blob, E)
    assert same_to_precision(z, back)


def test_base_literal_into_extension_field(Q2):
    E = quadratic_extension(parse_literal("-2", Q2))
    x = parse_literal("3", E)
    assert x.field.is_extension and x.w.is_zero()
