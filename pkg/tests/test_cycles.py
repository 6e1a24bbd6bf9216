from fractions import Fraction

import pytest

from padicdyn.cycles import (
    cycle_attraction_check_p3,
    cycle_sphere_swap_check,
    p2_membership,
    solve_two_cycle,
    verify_cycle_norms,
)
from padicdyn.dynamics import MapContext
from padicdyn.errors import NotACycle, OutOfDomain
from padicdyn.norms import NormValue
from padicdyn.number import PadicNumber, same_to_precision
from padicdyn.sampling import RandomSource


def test_cycle_p7_base_field():
    ctx = MapContext(7, -1)
    cyc = solve_two_cycle(ctx)
    assert cyc.t1.unit % 49 == 10  # canonical sqrt(2)
    assert cyc.cycle_norm == NormValue.one(7)
    assert same_to_precision(cyc.multiplier,
                             PadicNumber.from_rational(9, 1, cyc.field))
    assert cyc.multiplier_norm == NormValue.one(7)
    assert same_to_precision(ctx.f(cyc.t1), cyc.t2)
    assert same_to_precision(ctx.f(cyc.t2), cyc.t1)


def test_cycle_p2_extension_norms():
    ctx = MapContext(2, 1)
    cyc = solve_two_cycle(ctx)
    assert cyc.field.is_extension
    assert cyc.cycle_norm == NormValue(2, Fraction(1, 2))  # sqrt(A/2) for A = 1
    assert cyc.multiplier_norm == NormValue.one(2)
    # |t2 - t1| = sqrt(A)/(2*sqrt(2)) = 2^(-3/2)
    assert (cyc.t2 - cyc.t1).norm() == NormValue(2, Fraction(3, 2))


def test_cycle_p3_multiplier_norm():
    ctx = MapContext(3, 1)
    cyc = solve_two_cycle(ctx)
    assert cyc.t1.unit % 27 == 22
    assert cyc.multiplier_norm == NormValue.from_exponent(3, 2)  # |9|_3 = 1/9
    assert cyc.cycle_norm == NormValue.one(3)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
@pytest.mark.parametrize("aq", [1, -1, 2, -2, 3])
def test_multiplier_is_nine_for_every_parameter(p, aq):
    ctx = MapContext(p, aq)
    cyc = solve_two_cycle(ctx)
    nine = PadicNumber.from_rational(9, 1, cyc.field)
    assert same_to_precision(cyc.multiplier, nine)
    expected_norm = NormValue.from_exponent(3, 2) if p == 3 else NormValue.one(p)
    assert cyc.multiplier_norm == expected_norm
    expected_cycle = ctx.sqrtA if p != 2 else ctx.A.scale_by_p_power(1).sqrt()
    assert cyc.cycle_norm == expected_cycle


def test_p2_targets_with_sqrt5_in_field():
    cyc = solve_two_cycle(MapContext(11, -1))
    assert all(t.in_field for t in cyc.p2_targets)
    for t in cyc.p2_targets:
        assert t.point is not None
    # the in-field g-poles actually map to f-poles in two steps
    ctx = MapContext(11, -1)
    gp = next(t.point for t in cyc.p2_targets if t.label.startswith("gpole"))
    fx = ctx.f(gp)
    assert (fx.square() + ctx.a_in(fx.field)).is_zero()


def test_p2_targets_flagged_absent():
    cyc = solve_two_cycle(MapContext(5, -1))
    gpoles = [t for t in cyc.p2_targets if t.label.startswith("gpole")]
    assert all(not t.in_field for t in gpoles)
    assert all("not in working field" in t.note for t in gpoles)


def test_p2_membership_detects_direct_pole():
    ctx = MapContext(11, -1)
    cyc = solve_two_cycle(ctx)
    pole = next(t.point for t in cyc.p2_targets if t.label == "pole:+sqrt(-a)")
    assert p2_membership(ctx, cyc, pole, 4) == "member"
    generic = PadicNumber.from_rational(2, 1, ctx.base_field).embed(cyc.field)
    assert p2_membership(ctx, cyc, generic, 4) == "non_member"


def test_swap_p7_explicit_and_sampled():
    ctx = MapContext(7, -1)
    cyc = solve_two_cycle(ctx)
    x = cyc.t1.shift_by_rational(Fraction(7))
    r = NormValue.from_exponent(7, 1)
    assert (x - cyc.t1).norm() == r
    assert (ctx.f(x) - cyc.t2).norm() == r
    rep = cycle_sphere_swap_check(ctx, cyc, r, samples=60, rng=RandomSource(0xA),
                                  depth=16)
    assert rep.ok and rep.checked == 120


def test_swap_p2_explicit_and_sampled():
    ctx = MapContext(2, 1)
    cyc = solve_two_cycle(ctx)
    x = cyc.t1.shift_by_rational(Fraction(4))
    assert (ctx.f(x) - cyc.t2).norm() == NormValue.from_exponent(2, 2)
    for rtxt in (Fraction(3, 2), Fraction(2), Fraction(5, 2)):
        rep = cycle_sphere_swap_check(ctx, cyc, NormValue(2, rtxt), samples=40,
                                      rng=RandomSource(0xA), depth=16)
        assert rep.ok, rtxt


def test_swap_rejects_out_of_range_radii():
    ctx = MapContext(2, 1)
    cyc = solve_two_cycle(ctx)
    with pytest.raises(OutOfDomain):
        cycle_sphere_swap_check(ctx, cyc, NormValue.from_exponent(2, 1), 5)
    ctx7 = MapContext(7, -1)
    cyc7 = solve_two_cycle(ctx7)
    with pytest.raises(OutOfDomain):
        cycle_sphere_swap_check(ctx7, cyc7, NormValue.one(7), 5)  # r = sqrt(A)
    with pytest.raises(OutOfDomain):
        cycle_sphere_swap_check(MapContext(3, 1), solve_two_cycle(MapContext(3, 1)),
                                NormValue.from_exponent(3, 1), 5)


def test_attraction_p3_explicit_instance():
    ctx = MapContext(3, 1)
    cyc = solve_two_cycle(ctx)
    x = cyc.t1.shift_by_rational(Fraction(27))
    assert (ctx.f(x) - cyc.t2).norm() == NormValue.from_exponent(3, 4)  # 1/81
    fx2 = ctx.f(ctx.f(x))
    assert (fx2 - cyc.t1).norm() == NormValue.from_exponent(3, 5)  # 1/243


def test_attraction_p3_sampled_clean_and_boundary():
    ctx = MapContext(3, 1)
    cyc = solve_two_cycle(ctx)
    rep = cycle_attraction_check_p3(ctx, cyc, NormValue.from_exponent(3, 3),
                                    samples=30, n_max=20, rng=RandomSource(0xA),
                                    depth=8)
    assert rep.ok and rep.boundary_steps == 0
    repb = cycle_attraction_check_p3(ctx, cyc, NormValue.from_exponent(3, 1),
                                     samples=30, n_max=20, rng=RandomSource(0xA),
                                     depth=8)
    assert repb.ok and repb.boundary_steps == 30  # one boundary step per sample


def test_attraction_p3_ramified_extension():
    # a = 3 puts the cycle in the ramified Q_3(sqrt(-6)); half-integer radii
    # exercise the squaring branch of the distance map
    ctx = MapContext(3, 3)
    cyc = solve_two_cycle(ctx)
    assert cyc.field.is_extension
    rep = cycle_attraction_check_p3(ctx, cyc, NormValue(3, Fraction(1)),
                                    samples=15, n_max=15, rng=RandomSource(0xA),
                                    depth=8)
    assert rep.ok


def test_attraction_rejects_wrong_prime():
    ctx = MapContext(5, -1)
    cyc = solve_two_cycle(ctx)
    with pytest.raises(OutOfDomain):
        cycle_attraction_check_p3(ctx, cyc, NormValue.from_exponent(5, 1), 5)


def test_verify_cycle_norms():
    ctx = MapContext(7, -1)
    cyc = solve_two_cycle(ctx)
    assert verify_cycle_norms(ctx, [cyc.t1, cyc.t2])
    assert verify_cycle_norms(ctx, [PadicNumber.zero(ctx.base_field)])
    with pytest.raises(NotACycle):
        verify_cycle_norms(ctx, [cyc.t1, cyc.t1])
    with pytest.raises(NotACycle):
        verify_cycle_norms(ctx, [])
    ctx2 = MapContext(2, 1)
    cyc2 = solve_two_cycle(ctx2)
    assert verify_cycle_norms(ctx2, [cyc2.t1, cyc2.t2])
