import itertools
import random
from fractions import Fraction

import pytest

from lieaid.polyideal import (
    Poly,
    PolyError,
    PolyIdeal,
    PolyMatrix,
    PolyRing,
    buchberger,
    eval_poly,
    grevlex_key,
    ideal_member,
    minors,
    normal_form,
    radical_member,
    s_polynomial,
)
from lieaid.scalars import FieldElement, FieldSpec, gaussian_unit_i


@pytest.fixture
def ring_xy(qq):
    return PolyRing(qq, ("x", "y"))


def xy(ring):
    return Poly.variable(ring, 0), Poly.variable(ring, 1)


def c(ring, n):
    return Poly.const(ring, ring.spec.from_int(n))


def test_grevlex_order():
    # x^2 > xy > y^2 > x > y > 1 for x before y
    ring = PolyRing(FieldSpec.rational(), ("x", "y"))
    order = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    keys = [grevlex_key(e) for e in order]
    assert keys == sorted(keys, reverse=True)
    # grevlex differs from lex: y^2 > x z for (x, y, z)
    assert grevlex_key((0, 2, 0)) > grevlex_key((1, 0, 1))


def test_groebner_already_reduced(ring_xy):
    x, y = xy(ring_xy)
    gb = PolyIdeal(ring_xy, [x, y]).groebner()
    assert gb == [x, y]


def test_groebner_collapse(ring_xy):
    x, _ = xy(ring_xy)
    one = c(ring_xy, 1)
    gb = PolyIdeal(ring_xy, [x * x - one, x - one]).groebner()
    assert gb == [x - one]


def test_groebner_buchberger_criterion(ring_xy):
    # every generator reduces to 0 and all S-polynomials reduce to 0
    x, y = xy(ring_xy)
    gens = [x * x + y * y, x * y]
    gb = PolyIdeal(ring_xy, gens).groebner()
    for g in gens:
        assert normal_form(g, gb).is_zero()
    for f, g in itertools.combinations(gb, 2):
        assert normal_form(s_polynomial(f, g), gb).is_zero()


def test_groebner_permutation_invariant(qq):
    ring = PolyRing(qq, ("x", "y", "z"))
    x, y, z = (Poly.variable(ring, i) for i in range(3))
    gens = [x * y - z, y * z - x, x * z - y, x * x - y * y]
    rng = random.Random(9)
    reference = None
    for _ in range(6):
        shuffled = list(gens)
        rng.shuffle(shuffled)
        gb = PolyIdeal(ring, shuffled).groebner()
        if reference is None:
            reference = gb
        assert gb == reference


def test_groebner_zero_and_unit(ring_xy):
    assert PolyIdeal(ring_xy, []).groebner() == []
    assert PolyIdeal(ring_xy, [c(ring_xy, 3)]).groebner() == [c(ring_xy, 1)]


def test_ideal_member_basics(ring_xy):
    x, y = xy(ring_xy)
    ideal = PolyIdeal(ring_xy, [x * x])
    assert ideal_member(Poly.zero(ring_xy), ideal)
    assert not ideal_member(x, ideal)
    two_y = c(ring_xy, 2) * y
    ideal2 = PolyIdeal(ring_xy, [x - y, two_y])
    assert ideal_member(x + y, ideal2)


def test_ideal_member_ring_mismatch(ring_xy, qq):
    other = PolyRing(qq, ("a",))
    with pytest.raises(PolyError):
        ideal_member(Poly.variable(other, 0), PolyIdeal(ring_xy, []))


def test_radical_member_examples(ring_xy):
    x, y = xy(ring_xy)
    one = c(ring_xy, 1)
    assert radical_member(x, PolyIdeal(ring_xy, [x * x]))
    assert not radical_member(one, PolyIdeal(ring_xy, [x]))
    f = x + y
    assert radical_member(f, PolyIdeal(ring_xy, [f * f * f, x * x]))


def test_radical_contains_ideal(ring_xy):
    x, y = xy(ring_xy)
    ideal = PolyIdeal(ring_xy, [x * x - y, y * y])
    for g in ideal.generators:
        assert radical_member(g, ideal)


def test_radical_member_vanishing_on_zero_set(gf3):
    # over GF(3), membership in the radical forces vanishing on the
    # (exhaustively enumerated) common zero set
    ring = PolyRing(gf3, ("a", "b"))
    a, b = Poly.variable(ring, 0), Poly.variable(ring, 1)
    rng = random.Random(31)
    pool = [a, b, a + b, a * a, b * b, a * b, a + a * b, a * a - b]
    for _ in range(25):
        gens = rng.sample(pool, 2)
        ideal = PolyIdeal(ring, gens)
        f = rng.choice(pool)
        if not radical_member(f, ideal):
            continue
        for pt in itertools.product(range(3), repeat=2):
            point = [gf3.from_int(v) for v in pt]
            if all(g.eval(point).is_zero() for g in gens):
                assert f.eval(point).is_zero()


def trimmed_system_ring(qq):
    return PolyRing(qq, ("z1", "z2", "z3", "z4"))


def test_minor_of_trimmed_matrix_vs_evaluation_oracle(qq):
    # trimmed 3x4 system of the 6-dim nilpotent example; the determinant of
    # columns {1,2,3} is checked against exact numeric determinants
    ring = trimmed_system_ring(qq)
    z1, z2, z3, z4 = (Poly.variable(ring, i) for i in range(4))
    zero = Poly.zero(ring)
    m = PolyMatrix(
        ring, 3, 4,
        [-z2, z1, zero, zero, -z3, -z4, z1, z2, -z4, zero, zero, z1],
    )
    all_minors = minors(m, 3)
    assert len(all_minors) == 4  # C(3,3) * C(4,3)
    det123 = m.minor((0, 1, 2), (0, 1, 2))
    assert all_minors[0] == det123

    def det3_fractions(rows):
        (a, b, c_), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c_ * (d * h - e * g)

    rng = random.Random(17)
    for _ in range(25):
        pt = [qq.from_int(rng.randint(-5, 5)) for _ in range(4)]
        vals = [x.val for x in pt]
        rows = [
            [-vals[1], vals[0], Fraction(0)],
            [-vals[2], -vals[3], vals[0]],
            [-vals[3], Fraction(0), Fraction(0)],
        ]
        assert det123.eval(pt).val == det3_fractions(rows)


def test_minors_identity_and_zero(ring_xy):
    one = c(ring_xy, 1)
    zero = Poly.zero(ring_xy)
    eye = PolyMatrix(ring_xy, 2, 2, [one, zero, zero, one])
    assert [p for p in minors(eye, 2)] == [one]
    zmat = PolyMatrix(ring_xy, 2, 3, [zero] * 6)
    assert all(p.is_zero() for p in minors(zmat, 2))
    with pytest.raises(PolyError):
        minors(eye, 3)


def test_eval_poly_examples(qi):
    ring = PolyRing(qi, ("z1", "z2", "z3", "z4", "z5", "y"))
    z = [Poly.variable(ring, i) for i in range(5)]
    y = Poly.variable(ring, 5)
    i_unit = gaussian_unit_i(qi)
    point = [
        qi.one(), qi.one(), qi.zero(), -i_unit, qi.one(),
        FieldElement(qi, (Fraction(1, 2), Fraction(0))),
    ]
    f1 = z[3] * z[3] + z[4] * z[4]
    assert eval_poly(f1, point).is_zero()
    f2 = z[0] * z[0] * z[4] * y + z[1] * z[1] * z[4] * y - Poly.const(ring, qi.one())
    assert eval_poly(f2, point).is_zero()
    const5 = Poly.const(ring, qi.from_int(5))
    assert eval_poly(const5, point) == qi.from_int(5)
    with pytest.raises(PolyError):
        eval_poly(f1, point[:3])


def test_render():
    qq = FieldSpec.rational()
    ring = PolyRing(qq, ("z1", "z5", "y"))
    z1, z5, y = (Poly.variable(ring, i) for i in range(3))
    two = Poly.const(ring, qq.from_int(2))
    f = two * z1 * z1 * z5 * y - Poly.const(ring, qq.one())
    assert f.render() == "2*z1^2*z5*y - 1"


def test_partial_eval(ring_xy, qq):
    x, y = xy(ring_xy)
    f = x * x * y + y + c(ring_xy, 3)
    g = f.partial_eval(1, qq.from_int(2))
    assert g == c(ring_xy, 2) * x * x + c(ring_xy, 5)


def test_clear_content(qq):
    ring = PolyRing(qq, ("x",))
    x = Poly.variable(ring, 0)
    half = Poly.const(ring, qq.from_fraction(Fraction(1, 2)))
    third = Poly.const(ring, qq.from_fraction(Fraction(1, 3)))
    f = half * x + third
    g = f.clear_content()
    assert g == c(ring, 3) * x + c(ring, 2)
