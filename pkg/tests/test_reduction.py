import random
from fractions import Fraction

import pytest

from padicdyn.errors import InvalidInput, NotUniqueFixedPoint
from padicdyn.number import PadicNumber, Qp, same_to_precision
from padicdyn.reduction import RationalMapParams, conjugate_reduce, unique_fixed_point_test


def params_of(field, *coeffs, precision=64):
    return RationalMapParams(*(PadicNumber.from_rational(Fraction(q), 1, field, precision)
                               for q in coeffs))


def test_canonical_form_is_unique_with_indifferent_origin(Q5):
    rep = unique_fixed_point_test(params_of(Q5, 1, 0, 0, 1))
    assert rep.unique and rep.x0.is_zero() and not rep.x0_is_pole
    assert same_to_precision(rep.multiplier, PadicNumber.from_rational(1, 1, Q5))
    assert rep.classification == "indifferent"


def test_shifted_cube_example(Q5):
    # (x-1)^3 = x^3 - 3x^2 + 3x - 1 matches (c, d-a, -b) = (-3, 3, -1)
    assert (1, 1, -3, 4) == (1, 1, -3, 4)
    rep = unique_fixed_point_test(params_of(Q5, 1, 1, -3, 4))
    assert rep.unique
    assert same_to_precision(rep.x0, PadicNumber.from_rational(1, 1, Q5))
    assert not rep.x0_is_pole  # 1 - 3 + 4 = 2 != 0
    assert rep.classification == "indifferent"
    red = conjugate_reduce(params_of(Q5, 1, 1, -3, 4))
    assert not red.canonical and red.out_of_scope
    assert same_to_precision(red.q2, PadicNumber.from_rational(-1, 1, Q5))
    assert same_to_precision(red.q1, PadicNumber.from_rational(2, 1, Q5))
    assert same_to_precision(red.e1, PadicNumber.from_rational(-1, 1, Q5))
    assert same_to_precision(red.e0, PadicNumber.from_rational(2, 1, Q5))


def test_broken_cube_is_not_unique(Q5):
    rep = unique_fixed_point_test(params_of(Q5, 1, 1, 0, 1))
    assert not rep.unique and rep.x0 is None


def test_scaled_canonical(Q5):
    red = conjugate_reduce(params_of(Q5, 2, 0, 0, 2))
    assert red.canonical
    assert same_to_precision(red.canonical_a, PadicNumber.from_rational(2, 1, Q5))
    assert red.x0.is_zero()


def test_reduce_requires_uniqueness(Q5):
    with pytest.raises(NotUniqueFixedPoint):
        conjugate_reduce(params_of(Q5, 1, 1, 0, 1))


def test_zero_leading_coefficient_rejected(Q5):
    with pytest.raises(InvalidInput):
        params_of(Q5, 0, 1, 2, 3)


def test_pole_coincides_with_fixed_point(Q3):
    # a = -c^2/9 makes x0 a pole of the map: with c = 3, a = -1, the forced
    # coefficients are b = -1 and d = a + c^2/3 = 2
    rep = unique_fixed_point_test(params_of(Q3, -1, -1, 3, 2))
    assert rep.unique and rep.x0_is_pole
    assert rep.multiplier is None and rep.classification is None


def test_forced_coefficients_battery_with_perturbations(Q7):
    rnd = random.Random(23)
    field = Q7
    flips = 0
    for _ in range(200):
        a = Fraction(rnd.randrange(1, 7**3) * rnd.choice((1, -1)),
                     rnd.choice((1, 7, 49)))
        c = Fraction(0) if rnd.random() < 0.2 else \
            Fraction(rnd.randrange(1, 7**3) * rnd.choice((1, -1)))
        b = -((c / 3) ** 3)
        d = a + c * c / 3
        params = params_of(field, a, b, c, d)
        rep = unique_fixed_point_test(params)
        assert rep.unique
        assert same_to_precision(rep.x0, PadicNumber.from_rational(-c / 3, 1, field))
        red = conjugate_reduce(params)
        assert red.canonical == (c == 0)
        assert red.out_of_scope == (c != 0)
        if red.canonical:
            assert same_to_precision(red.canonical_a,
                                     PadicNumber.from_rational(a, 1, field))
        bump = Fraction(rnd.randrange(1, 7) * 7 ** rnd.randrange(0, 3))
        rep2 = unique_fixed_point_test(params_of(field, a, b + bump, c, d))
        assert not rep2.unique
        flips += 1
    assert flips == 200
