import math
from fractions import Fraction

import pytest

from padicdyn.errors import RadiusNotRepresentable
from padicdyn.hensel import quadratic_extension, extension_generator
from padicdyn.norms import NormValue
from padicdyn.number import PadicNumber, Qp
from padicdyn.sampling import RandomSource, sample_in_ball, sample_on_sphere


def test_sphere_norms_exact(Q5):
    zero = PadicNumber.zero(Q5)
    rnd = RandomSource(1).rng()
    r = NormValue.from_exponent(5, 1)
    for _ in range(200):
        x = sample_on_sphere(zero, r, rnd)
        assert x.norm() == r
        assert x.val == 1


def test_sphere_around_noncentral_point(Q7):
    c = PadicNumber.from_rational(3, 1, Q7)
    rnd = RandomSource(2).rng()
    r = NormValue.from_exponent(7, 2)
    for _ in range(100):
        x = sample_on_sphere(c, r, rnd)
        assert (x - c).norm() == r


def test_first_digit_uniformity_three_sigma(Q5):
    # 10^4 draws on S_{1/5}(0): each first digit frequency within 3 sigma of 1/4
    zero = PadicNumber.zero(Q5)
    rnd = RandomSource(0xA).rng()
    r = NormValue.from_exponent(5, 1)
    n = 10**4
    counts = [0] * 5
    for _ in range(n):
        x = sample_on_sphere(zero, r, rnd)
        counts[x.digits()[0]] += 1
    assert counts[0] == 0
    sigma = math.sqrt(0.25 * 0.75 / n)
    for d in range(1, 5):
        assert abs(counts[d] / n - 0.25) <= 3 * sigma, counts


def test_ball_contains_and_union_frequencies(Q5):
    # V_r = S_r union V_{r/5}: on-sphere frequency ~ 4/5, deeper ~ 1/5
    zero = PadicNumber.zero(Q5)
    rnd = RandomSource(0xB).rng()
    r = NormValue.from_exponent(5, 1)
    n = 4000
    on_sphere = 0
    for _ in range(n):
        x = sample_in_ball(zero, r, rnd)
        m = x.norm()
        assert m.exponent is None or m.exponent >= 1
        if m.exponent == 1:
            on_sphere += 1
    sigma = math.sqrt(0.8 * 0.2 / n)
    assert abs(on_sphere / n - 0.8) <= 4 * sigma


def test_zero_radius_returns_center(Q5):
    c = PadicNumber.from_rational(7, 1, Q5)
    assert sample_on_sphere(c, NormValue.zero(5), RandomSource(1)) is c
    assert sample_in_ball(c, NormValue.zero(5), RandomSource(1)) is c


def test_reproducibility_and_streams(Q5):
    zero = PadicNumber.zero(Q5)
    r = NormValue.from_exponent(5, 1)
    a = sample_on_sphere(zero, r, RandomSource(42, 3))
    b = sample_on_sphere(zero, r, RandomSource(42, 3))
    c = sample_on_sphere(zero, r, RandomSource(42, 4))
    assert a.unit == b.unit
    assert a.unit != c.unit
    assert RandomSource(42).substream(1) != RandomSource(42).substream(2)


def test_radius_outside_value_group_rejected(Q5):
    zero = PadicNumber.zero(Q5)
    with pytest.raises(RadiusNotRepresentable):
        sample_on_sphere(zero, NormValue(5, Fraction(1, 2)), RandomSource(1))


def test_extension_sphere_sampling_ramified(Q2):
    # Q_2(sqrt(-2)): half-integer radii are in the value group
    E = quadratic_extension(PadicNumber.from_rational(-2, 1, Q2))
    center = extension_generator(E)
    rnd = RandomSource(3).rng()
    for e in (Fraction(3, 2), Fraction(2), Fraction(5, 2)):
        r = NormValue(2, e)
        for _ in range(25):
            x = sample_on_sphere(center, r, rnd)
            assert (x - center).norm() == r
    for _ in range(25):
        x = sample_in_ball(center, NormValue(2, Fraction(3, 2)), rnd)
        d = (x - center).norm()
        assert d.exponent is None or d.exponent >= Fraction(3, 2)


def test_extension_sphere_sampling_unit_generator(Q2):
    # Q_2(sqrt(-1)) is ramified with a unit generator; integer and
    # half-integer radii both sample exactly
    E = quadratic_extension(PadicNumber.from_rational(-1, 1, Q2))
    zero = PadicNumber.zero(Q2).embed(E)
    rnd = RandomSource(4).rng()
    for e in (Fraction(1), Fraction(1, 2), Fraction(3, 2)):
        r = NormValue(2, e)
        for _ in range(25):
            assert sample_on_sphere(zero, r, rnd).norm() == r


def test_extension_unramified_rejects_half_exponents(Q5):
    E = quadratic_extension(PadicNumber.from_rational(2, 1, Q5))
    zero = PadicNumber.zero(Q5).embed(E)
    with pytest.raises(RadiusNotRepresentable):
        sample_on_sphere(zero, NormValue(5, Fraction(1, 2)), RandomSource(1))
    r = NormValue.from_exponent(5, 2)
    rnd = RandomSource(5).rng()
    for _ in range(25):
        assert sample_on_sphere(zero, r, rnd).norm() == r


def test_sampled_points_are_refinable(Q5):
    zero = PadicNumber.zero(Q5)
    x = sample_on_sphere(zero, NormValue.from_exponent(5, 1), RandomSource(6))
    assert x.refinable
    hi = x.at_precision(128)
    assert hi.prec == 128 and hi.unit % 5**64 == x.unit
