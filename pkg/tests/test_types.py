import random
from fractions import Fraction

import pytest

from montes.errors import ForbiddenResidualY, UnliftableTarget
from montes.ffield import Field, factor as ffactor
from montes.polygon import principal_sides
from montes.types import Type
from montes.zpoly import IntPolynomial, vpoly

from .test_zpoly import F12

X = IntPolynomial([0, 1])


def order_zero_2adic_x():
    return Type.order_zero(2, [0, 1], 8)


def f8_base_type():
    # psi0 = y^3 + y + 1 over F_2, so F_1 is F_8
    return Type.order_zero(2, [1, 1, 0, 1], 2)


def f8_level_one():
    # commit (h=1, e=1, psi=y^2+y+1) on top of phi_1 = x^3 + x + 1
    t = f8_base_type()
    F1 = t.F1
    psi = [F1.one, F1.one, F1.one]
    return t.extended(1, 1, psi, 1, ())


def test_order_zero_polygon_of_x2_plus_2():
    t = Type.order_zero(2, [0, 1], 2)
    f = IntPolynomial([2, 0, 1])
    coeffs, cloud = t.newton_data(f)
    assert cloud == {0: 1, 2: 0}
    sides = principal_sides(sorted(cloud.items()))
    assert len(sides) == 1 and sides[0].slope == Fraction(-1, 2)
    res = t.residual_on_side(sides[0], coeffs, cloud)
    assert res == [t.F1.one, t.F1.one]  # y + 1
    rep = t.representative(1, 2, res)
    assert rep == IntPolynomial([2, 0, 1])


def test_representative_shifts_constant():
    t = f8_base_type()
    F1 = t.F1
    rep = t.representative(2, 1, [F1.one, F1.one])
    assert rep == IntPolynomial([5, 1, 0, 1])  # x^3 + x + 5


def test_forbidden_residual_root_zero():
    t = f8_base_type()
    F1 = t.F1
    with pytest.raises(ForbiddenResidualY):
        t.representative(1, 1, [F1.zero, F1.one])


def test_f12_order_one_polygons():
    t = order_zero_2adic_x()
    coeffs, cloud = t.newton_data(F12)
    sides = principal_sides(sorted(cloud.items()))
    assert [s.slope for s in sides] == [Fraction(-1), Fraction(-1, 2)]
    assert sum(s.width for s in sides) == 8
    res = t.residual_on_side(sides[1], coeffs, cloud)
    assert res == [t.F1.one, t.F1.zero, t.F1.one]  # y^2 + 1 = (y+1)^2
    assert ffactor(t.F1, res) == [([t.F1.one, t.F1.one], 2)]

    t1 = Type.order_zero(2, [1, 1], 4)  # branch at psi0 = y + 1
    _, cloud1 = t1.newton_data(F12)
    sides1 = principal_sides(sorted(cloud1.items()))
    assert {s.slope for s in sides1} == {Fraction(-3, 2), Fraction(-1, 2)}
    assert sum(s.width for s in sides1) == 4


def test_extended_level_data():
    t2 = f8_level_one()
    lvl = t2.levels[0]
    assert (lvl.h, lvl.e, lvl.ell, lvl.f, lvl.V) == (1, 1, 0, 2, 0)
    assert lvl.up_V == 2
    assert lvl.fld.q == 64
    assert lvl.up_w == lvl.fld.one
    assert t2.modulus_degree(2) == 6
    assert (t2.e_prod, t2.f_prod) == (1, 6)

    t2.ensure_rep()
    phi1 = IntPolynomial([1, 1, 0, 1])
    assert t2.phi == phi1 * phi1 + IntPolynomial([2]) * phi1 + IntPolynomial([4])
    # value of the pending modulus matches the committed formula
    assert t2.v(t2.phi, 2) == 2


def test_lift_base_order_powers_of_two():
    t = Type.order_zero(2, [0, 1], 2)
    ext = t.extended(1, 2, [t.F1.one, t.F1.one], 1, ())
    one2 = ext.order_data(2)[0].one
    assert ext.lift(one2, 4, 2) == IntPolynomial([4])
    assert ext.lift(one2, 3, 2) == IntPolynomial([0, 2])
    assert ext.lift(one2, 2, 2) == IntPolynomial([2])
    for u in range(2, 8):
        q = ext.lift(one2, u, 2)
        assert ext.v(q, 2) == u
        assert ext.cval(q, 2) == one2


def test_lift_roundtrip_f64():
    t2 = f8_level_one()
    F64 = t2.order_data(2)[0]
    rng = random.Random(11)
    for _ in range(30):
        rho = F64.rand(rng)
        while F64.is_zero(rho):
            rho = F64.rand(rng)
        u = rng.randint(1, 9)
        q = t2.lift(rho, u, 2)
        assert q.degree < 6
        assert t2.v(q, 2) == u
        assert t2.cval(q, 2) == rho


def test_lift_infeasible_target():
    t2 = f8_level_one()
    F64 = t2.order_data(2)[0]
    z = F64.gen()
    with pytest.raises(UnliftableTarget):
        t2.lift(z, 0, 2)
    q = t2.lift(z, 1, 2)
    assert t2.v(q, 2) == 1 and t2.cval(q, 2) == z


def test_cval_multiplicative():
    t2 = f8_level_one()
    F64 = t2.order_data(2)[0]
    rng = random.Random(23)
    for _ in range(40):
        a = IntPolynomial([rng.randint(-40, 40) for _ in range(3)])
        b = IntPolynomial([rng.randint(-40, 40) for _ in range(3)])
        if a.is_zero or b.is_zero:
            continue
        assert t2.v(a * b, 2) == t2.v(a, 2) + t2.v(b, 2)
        got = t2.cval(a * b, 2)
        want = F64.mul(t2.cval(a, 2), t2.cval(b, 2))
        assert got == want


def test_refinement_finds_exact_square_root():
    t = f8_base_type()
    phi1 = IntPolynomial([1, 1, 0, 1])
    f = (phi1 + IntPolynomial([2])) ** 2
    coeffs, cloud = t.newton_data(f)
    sides = principal_sides(sorted(cloud.items()))
    assert len(sides) == 1 and sides[0].slope == Fraction(-1)
    res = t.residual_on_side(sides[0], coeffs, cloud)
    fct = ffactor(t.F1, res)
    assert fct == [([t.F1.one, t.F1.one], 2)]
    t2 = t.refined(1, fct[0][0], 2, ())
    assert t2.phi == phi1 + IntPolynomial([2])
    assert t2.cut_h == 1 and t2.mult == 2 and t2.order == 0
    # the refined modulus divides f exactly: its expansion has a zero tail
    coeffs2, _ = t2.newton_data(f)
    assert coeffs2[0].is_zero and coeffs2[1].is_zero


def test_pending_value_matches_formula():
    # across a chain of commits the pending modulus value equals up_V
    t = Type.order_zero(2, [0, 1], 8)
    t2 = t.extended(1, 2, [t.F1.one, t.F1.one], 2, ())
    t2.ensure_rep()
    assert t2.phi == IntPolynomial([2, 0, 1])
    assert t2.v(t2.phi, 2) == t2.order_data(2)[2] == 2
    F2fld = t2.order_data(2)[0]
    t3 = t2.extended(5, 1, [F2fld.one, F2fld.one], 1, ())
    t3.ensure_rep()
    assert t3.v(t3.phi, 3) == t3.order_data(3)[2] == 7
    assert t3.modulus_degree(3) == 2
    assert (t3.e_prod, t3.f_prod) == (2, 1)


def test_second_order_polygon_pinned():
    # f = phi^2 + 8 x phi + 64 over the committed (x^2+2, -1/2, y+1) level
    t = Type.order_zero(2, [0, 1], 4)
    t2 = t.extended(1, 2, [t.F1.one, t.F1.one], 2, ())
    phi = IntPolynomial([2, 0, 1])
    f = phi * phi + IntPolynomial([0, 8]) * phi + IntPolynomial([64])
    coeffs, cloud = t2.newton_data(f)
    assert cloud == {0: 12, 1: 9, 2: 4}
    sides = principal_sides(sorted(cloud.items()))
    assert [s.slope for s in sides] == [Fraction(-4)]
    res = t2.residual_on_side(sides[0], coeffs, cloud)
    F = t2.order_data(2)[0]
    assert res == [F.one, F.zero, F.one]


def test_lineage_and_mult_carried():
    t = f8_base_type()
    t2 = t.extended(1, 1, [t.F1.one, t.F1.one, t.F1.one], 3, ((0, 1),))
    assert t2.lineage == ((0, 1),)
    assert t2.mult == 3
