from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicdyn.errors import (
    DivisionByZeroToPrecision,
    IncompatibleField,
    InvalidInput,
    PrecisionExhausted,
    ZeroDenominator,
)
from padicdyn.hensel import extension_generator, quadratic_extension
from padicdyn.norms import NormUpperBound, NormValue
from padicdyn.number import (
    FieldDescriptor,
    PadicNumber,
    Qp,
    distance,
    is_prime,
    same_to_precision,
    value_group_denominator,
)

N = 64


def frac_val(q: Fraction, p: int) -> int:
    v = 0
    n, d = q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def test_is_prime():
    assert [n for n in range(2, 40) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert not is_prime(1) and not is_prime(0)
    assert is_prime(2**13 - 1)


def test_identity_and_p(Q5):
    one = PadicNumber.from_rational(1, 1, Q5)
    assert one.val == 0 and one.digits()[:3] == [1, 0, 0]
    assert PadicNumber.from_rational(5, 1, Q5).val == 1


def test_negative_rational_unit_via_modular_inverse_oracle(Q5):
    # independent oracle: the unit of -5/24 is (-1) * 24^(-1) mod 5^N
    x = PadicNumber.from_rational(-5, 24, Q5)
    assert x.val == 1
    expected = (-1 * pow(24, -1, 5**N)) % 5**N
    assert x.unit == expected
    assert x.digits()[0] == expected % 5 == 1
    # the mirrored sign: 5/24 leads with digit 4
    assert PadicNumber.from_rational(5, 24, Q5).digits()[0] == 4


def test_zero_denominator(Q5):
    with pytest.raises(ZeroDenominator):
        PadicNumber.from_rational(1, 0, Q5)


def test_strong_triangle_with_distinct_norms(Q5):
    five = PadicNumber.from_rational(5, 1, Q5)
    one = PadicNumber.from_rational(1, 1, Q5)
    assert (five + one).norm() == NormValue.one(5)


def test_cancellation_reports_upper_bound(Q5):
    one = PadicNumber.from_rational(1, 1, Q5)
    z = one - one
    assert z.is_zero() and not z.is_exact_zero
    m = z.norm()
    assert isinstance(m, NormUpperBound) and m.exponent == N
    with pytest.raises(PrecisionExhausted):
        z.norm_exact()
    with pytest.raises(DivisionByZeroToPrecision):
        one / z


def test_exact_zero_arithmetic(Q5):
    zero = PadicNumber.zero(Q5)
    one = PadicNumber.from_rational(1, 1, Q5)
    assert zero.norm() == NormValue.zero(5)
    assert (one * zero).is_exact_zero
    assert same_to_precision(one + zero, one)
    with pytest.raises(DivisionByZeroToPrecision):
        one / zero


def test_partial_cancellation_precision(Q5):
    # 1/(1-5^10) - 1 has valuation 10 and loses 10 relative digits
    x = PadicNumber.from_rational(1, 1 - 5**10, Q5)
    one = PadicNumber.from_rational(1, 1, Q5)
    y = x - one
    assert y.val == 10 and y.prec == N - 10
    assert y.norm() == NormValue.from_exponent(5, 10)


@settings(max_examples=150, deadline=None)
@given(st.integers(-10**9, 10**9).filter(bool), st.integers(1, 10**9),
       st.integers(-10**9, 10**9).filter(bool), st.integers(1, 10**9),
       st.sampled_from([2, 3, 5, 7]))
def test_norm_matches_rational_valuation_and_is_multiplicative(m1, n1, m2, n2, p):
    field = Qp(p)
    q1, q2 = Fraction(m1, n1), Fraction(m2, n2)
    x = PadicNumber.from_rational(q1, 1, field)
    y = PadicNumber.from_rational(q2, 1, field)
    assert x.norm().exponent == frac_val(q1, p)
    assert (x * y).norm().exponent == frac_val(q1, p) + frac_val(q2, p)
    assert (x / y).norm().exponent == frac_val(q1, p) - frac_val(q2, p)


@settings(max_examples=150, deadline=None)
@given(st.integers(-10**9, 10**9), st.integers(1, 10**9),
       st.integers(-10**9, 10**9), st.integers(1, 10**9),
       st.sampled_from([2, 3, 5, 7]))
def test_ultrametric_inequality(m1, n1, m2, n2, p):
    field = Qp(p)
    q1, q2 = Fraction(m1, n1), Fraction(m2, n2)
    x = PadicNumber.from_rational(q1, 1, field)
    y = PadicNumber.from_rational(q2, 1, field)
    s = x + y
    mx, my, ms = x.norm(), y.norm(), s.norm()
    top = max(mx, my)
    if isinstance(ms, NormUpperBound):
        assert not top.is_zero()  # only cancellation of equal norms vanishes
        return
    assert ms <= top
    if mx != my:
        assert ms == top


def test_division_round_trip(Q7):
    x = PadicNumber.from_rational(15, 49, Q7)
    y = PadicNumber.from_rational(-21, 4, Q7)
    assert same_to_precision((x / y) * y, x)
    assert same_to_precision(x.invert().invert(), x)


def test_incompatible_fields_rejected(Q5, Q7):
    x = PadicNumber.from_rational(1, 1, Q5)
    y = PadicNumber.from_rational(1, 1, Q7)
    with pytest.raises(IncompatibleField):
        x + y


# -- quadratic extensions ----------------------------------------------------


def test_extension_generator_squares_to_d(Q2):
    d = PadicNumber.from_rational(-2, 1, Q2)
    E = quadratic_extension(d)
    g = extension_generator(E)
    assert (g * g - d.embed(E)).is_zero()
    assert g.norm() == NormValue(2, Fraction(1, 2))
    assert (g * g).norm() == NormValue.from_exponent(2, 1)


def test_extension_norm_is_multiplicative():
    import random

    rnd = random.Random(7)
    cases = [(2, -2), (2, -1), (2, 5), (5, 2), (5, 5), (3, 3)]
    for p, dq in cases:
        base = Qp(p)
        E = quadratic_extension(PadicNumber.from_rational(dq, 1, base))
        for _ in range(20):
            z1 = _random_ext(E, rnd)
            z2 = _random_ext(E, rnd)
            m1, m2, m12 = z1.norm(), z2.norm(), (z1 * z2).norm()
            assert m12.exponent == m1.exponent + m2.exponent, (p, dq)


def _random_ext(E, rnd):
    base = E.base()
    p = E.p
    u = PadicNumber.from_rational(rnd.randrange(-p**6, p**6), rnd.randrange(1, p**4), base)
    w = PadicNumber.from_rational(rnd.randrange(-p**6, p**6), rnd.randrange(1, p**4), base)
    return PadicNumber._ext(E, u, w)


def test_extension_inverse_and_value_group(Q2, Q5):
    E = quadratic_extension(PadicNumber.from_rational(-2, 1, Q2))
    assert value_group_denominator(E) == 2
    g = extension_generator(E)
    one = PadicNumber.from_rational(1, 1, Q2).embed(E)
    z = one + g
    assert same_to_precision(z * z.invert(), one)
    # unramified: d = 5 over Q_2, d = 2 over Q_5
    assert value_group_denominator(quadratic_extension(
        PadicNumber.from_rational(5, 1, Q2))) == 1
    assert value_group_denominator(quadratic_extension(
        PadicNumber.from_rational(2, 1, Q5))) == 1
    # ramified with a unit generator at p = 2
    assert value_group_denominator(quadratic_extension(
        PadicNumber.from_rational(-1, 1, Q2))) == 2
    assert value_group_denominator(Q5) == 1


def test_extension_requires_matching_extension(Q5):
    E1 = quadratic_extension(PadicNumber.from_rational(2, 1, Q5))
    E2 = quadratic_extension(PadicNumber.from_rational(5, 1, Q5))
    x = extension_generator(E1)
    y = extension_generator(E2)
    with pytest.raises(IncompatibleField):
        x + y


def test_square_of_sum_in_extension(Q2):
    # (u + w*sqrt(d))^2 expands to u^2 + d*w^2 + 2*u*w*sqrt(d)
    E = quadratic_extension(PadicNumber.from_rational(-2, 1, Q2))
    one = PadicNumber.from_rational(1, 1, Q2)
    z = PadicNumber._ext(E, one, one)  # 1 + sqrt(-2)
    sq = z * z
    assert same_to_precision(sq.u, PadicNumber.from_rational(-1, 1, Q2))
    assert same_to_precision(sq.w, PadicNumber.from_rational(2, 1, Q2))


# -- precision management ----------------------------------------------------


def test_at_precision_truncate_and_refine(Q5):
    x = PadicNumber.from_rational(7, 24, Q5)
    t = x.at_precision(10)
    assert t.prec == 10 and t.unit == x.unit % 5**10
    hi = t.at_precision(100)
    assert hi.prec == 100
    assert hi.unit % 5**N == x.unit
    y = PadicNumber.from_rational(1, 1, Q5) + x  # arithmetic drops the origin
    assert not y.refinable
    with pytest.raises(PrecisionExhausted):
        y.at_precision(100)
    assert y.at_precision(10).prec == 10  # truncation still fine


def test_shift_and_scale_keep_origins(Q5):
    x = PadicNumber.from_rational(3, 7, Q5)
    y = x.shift_by_rational(Fraction(2, 5)).scale_by_rational(Fraction(7))
    assert y.origin == (Fraction(3, 7) + Fraction(2, 5)) * 7
    hi = y.at_precision(96)
    assert same_to_precision(hi, PadicNumber.from_rational(y.origin, 1, Q5, 96))


def test_surd_origin_refines(Q7):
    from padicdyn.hensel import sqrt

    r = sqrt(PadicNumber.from_rational(2, 1, Q7))
    s = r.shift_by_rational(Fraction(1))
    hi = s.at_precision(90)
    assert hi.prec == 90
    two = PadicNumber.from_rational(2, 1, Q7, 90)
    one = PadicNumber.from_rational(1, 1, Q7, 90)
    back = hi - one
    assert (back * back - two).is_zero()


def test_distance(Q5):
    x = PadicNumber.from_rational(30, 1, Q5)
    y = PadicNumber.from_rational(5, 1, Q5)
    assert distance(x, y) == NormValue.from_exponent(5, 2)


def test_field_descriptor_validation():
    with pytest.raises(InvalidInput):
        FieldDescriptor(4)
    with pytest.raises(InvalidInput):
        FieldDescriptor(5, PadicNumber.zero(Qp(5)))
