import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folsing.groebner import (
    DimensionError,
    Ideal,
    MonomialOrder,
    buchberger,
    colength,
    eliminate,
    intersect,
    is_member,
    is_zero_dimensional,
    normal_form,
    saturate,
    saturate_single,
)
from folsing.linalg import determinant
from folsing.poly import MultiPoly, PolyRing

XY = PolyRing(("x", "y"))
XYZ = PolyRing(("x", "y", "z"))
TXY = PolyRing(("t", "x", "y"))


def I(ring, *texts):
    return Ideal(ring, [ring.parse(s) for s in texts])


def basis_strings(gb):
    return [str(g) for g in gb.basis]


def test_already_groebner():
    gb = buchberger(I(XY, "x^2", "x*y"))
    assert set(basis_strings(gb)) == {"x^2", "x*y"}


def test_lex_example():
    gb = buchberger(I(XY, "x - y", "y^2"), MonomialOrder.lex(XY))
    assert set(basis_strings(gb)) == {"x - y", "y^2"}


def test_hand_buchberger_contains_y_cubed():
    gb = buchberger(I(XY, "x^2 + y^2", "x*y"))
    assert XY.parse("y^3") in gb.basis
    assert len(gb.basis) == 3


def test_reducedness():
    gb = buchberger(I(XYZ, "x^2 + y*z - 1", "x*y - z^2", "y^3 + x - z"))
    lms = gb.leading_monomials()
    for g, lm in zip(gb.basis, lms):
        assert g.raw()[lm] == 1
        for other in lms:
            if other == lm:
                continue
            for e in g.raw():
                assert not all(a >= b for a, b in zip(e, other))
    for (a, la), (b, lb) in itertools.combinations(zip(gb.basis, lms), 2):
        lcm = tuple(max(p, q) for p, q in zip(la, lb))
        ma = MultiPoly.monomial(XYZ, tuple(p - q for p, q in zip(lcm, la)))
        mb = MultiPoly.monomial(XYZ, tuple(p - q for p, q in zip(lcm, lb)))
        assert gb.normal_form(ma * a - mb * b).is_zero()


def test_normal_form_examples():
    assert normal_form(XY.parse("x^3"), buchberger(I(XY, "x^2"))).is_zero()
    assert normal_form(XY.parse("y"), buchberger(I(XY, "x"))) == XY.parse("y")
    assert normal_form(XY.parse("x*y + y"), buchberger(I(XY, "x - 1"))) == XY.parse("2*y")
    assert is_member(XY.parse("x^2 - 1"), buchberger(I(XY, "x - 1")))


def test_normal_form_ring_mismatch():
    with pytest.raises(ValueError):
        normal_form(XYZ.var("x"), buchberger(I(XY, "x")))


def test_eliminate_parametrization():
    out = eliminate(I(TXY, "x - t", "y - t^2"), ["t"])
    assert out.same_as(I(TXY, "y - x^2"))


def test_eliminate_keeps_relation_free_of_t():
    # x - y is itself in the ideal and free of t, so the elimination ideal is (x - y)
    out = eliminate(I(TXY, "t*x - 1", "x - y"), ["t"])
    assert out.same_as(I(TXY, "x - y"))


def test_eliminate_unused_variable():
    out = eliminate(I(XY, "x"), ["y"])
    assert out.same_as(I(XY, "x"))


def test_saturate_single_examples():
    assert saturate_single(I(XY, "x^2"), XY.var("x")).is_unit()
    assert saturate_single(I(XY, "x^2*y"), XY.var("y")).same_as(I(XY, "x^2"))
    assert saturate_single(I(XYZ, "x*z", "y*z"), XYZ.var("z")).same_as(I(XYZ, "x", "y"))


def test_saturate_examples():
    assert saturate(I(XYZ, "x*z", "y*z"), I(XYZ, "x", "y")).same_as(I(XYZ, "z"))
    assert saturate(I(XY, "x^2", "y"), Ideal.unit(XY)).same_as(I(XY, "x^2", "y"))
    assert saturate(I(XY, "x*y"), I(XY, "x")).same_as(I(XY, "y"))


def test_intersection():
    out = intersect(I(XY, "x"), I(XY, "y"))
    assert out.same_as(I(XY, "x*y"))


def test_colength_examples():
    assert colength(buchberger(I(XY, "x^2", "y^2"))) == 4
    assert colength(buchberger(I(XY, "x - 1", "y"))) == 1
    assert colength(buchberger(Ideal.unit(XY))) == 0


def test_dimension_error_names_variable():
    gb = buchberger(I(XYZ, "x", "y"))
    assert not is_zero_dimensional(gb)
    with pytest.raises(DimensionError) as err:
        colength(gb)
    assert err.value.variable == "z"


FIXTURE_IDEALS = [
    (XY, ["x^2 + y^2 - 1", "x*y - 2", "x^3 - y"]),
    (XY, ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]),
    (XYZ, ["x*y - z", "y*z - x", "z*x - y"]),
    (XYZ, ["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"]),
    (XYZ, ["x*z - y^2", "x^3 - y*z", "z^2 - x^2*y"]),
]


def test_reduced_basis_unique_under_shuffles():
    rng = random.Random(20240611)
    for ring, gens in FIXTURE_IDEALS:
        ref = buchberger(Ideal(ring, [ring.parse(g) for g in gens])).basis
        for _ in range(20):
            shuffled = list(gens)
            rng.shuffle(shuffled)
            scaled = [ring.parse(g) * rng.choice([1, -2, 3]) for g in shuffled]
            assert buchberger(Ideal(ring, scaled)).basis == ref


def _sylvester_resultant(f: MultiPoly, g: MultiPoly, var: str, out: PolyRing) -> MultiPoly:
    """Resultant in ``var`` via the Sylvester determinant, landing in ``out``."""
    def coeffs(p):
        i = p.ring.index(var)
        m = p.degree_in(var)
        cs = [out.zero() for _ in range(m + 1)]
        for e, c in p.raw().items():
            rest = tuple(x for j, x in enumerate(e) if j != i)
            cs[m - e[i]] = cs[m - e[i]] + MultiPoly.monomial(out, rest, c)
        return cs

    a, b = coeffs(f), coeffs(g)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for r in range(n):
        rows.append([out.zero()] * r + a + [out.zero()] * (size - m - 1 - r))
    for r in range(m):
        rows.append([out.zero()] * r + b + [out.zero()] * (size - n - 1 - r))
    return determinant(rows)


def test_bezout_against_resultant_oracle():
    f = XY.parse("x^2 + 3*x*y - y^2 + 2*x - y + 5")
    g = XY.parse("y^3 + 2*x^3 - x*y^2 + x^2 - 3*y + 1")
    X = PolyRing(("x",))
    res = _sylvester_resultant(f, g, "y", X)
    # the resultant's roots are the x-coordinates of the intersection points
    assert res.degree() == 6
    assert colength(buchberger(Ideal(XY, [f, g]))) == res.degree() == 6


def test_subtractive_rule_splits_support():
    ideal = I(XY, "x*(x - 1)*(x - 2)^2", "y^2 - x")
    total = colength(buchberger(ideal))
    off = colength(buchberger(saturate_single(ideal, XY.var("x"))))
    assert total == 8
    assert total - off == 2  # the double point at the origin
    assert off == 6


small = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@settings(max_examples=25, deadline=None)
@given(small, small)
def test_absorbency(c, d):
    ideal = I(XYZ, "x^2 - y*z", "y^2 - x + z")
    gb = ideal.groebner()
    p = ideal.generators[0] * c[0] + ideal.generators[1] * c[1]
    q = XYZ.parse(f"{d[0]}*x + {d[1]}*y*z + {d[2]}")
    assert normal_form(p * q, gb).is_zero()


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(-2, 2))
def test_saturation_contains_original(a, b):
    ideal = I(XY, f"x^{a}*y - {b}*x", f"y^2*x^{a}")
    sat = saturate(ideal, I(XY, "x", f"y - {b}"))
    assert sat.contains_ideal(ideal)
