import random

import pytest
from gmpy2 import mpq

from folsing.fixtures import line_example, line_example_curve
from folsing.foliation import (
    AffineFoliation,
    FoliationError,
    ProjectiveCurve,
    ProjectiveFoliation,
    chart_transition,
    check_chart_shape,
    isolated_milnor_by_chart,
    sing_ideal_chart,
    total_isolated_milnor,
)
from folsing.groebner import DimensionError, Ideal
from folsing.poly import PolyRing

Z3 = ("z1", "z2", "z3")


def proj(components, k):
    return ProjectiveFoliation.from_chart0(AffineFoliation.parse(Z3, components, k))


def test_shape_accepts_radial_top_layer():
    AffineFoliation.parse(Z3, ["z1^2 + 1", "z1*z2", "z1*z3"], 1)
    AffineFoliation.parse(Z3, ["z1", "z2", "z3"], 1)
    AffineFoliation.parse(Z3, ["1", "0", "0"], 0)


def test_shape_rejects_bad_fields():
    with pytest.raises(FoliationError):
        AffineFoliation.parse(Z3, ["z1^2", "z2^2", "z3^2"], 1)
    with pytest.raises(FoliationError):
        AffineFoliation.parse(Z3, ["z1^3", "0", "0"], 1)
    with pytest.raises(FoliationError):
        AffineFoliation.parse(Z3, ["0", "0", "0"], 2)
    with pytest.raises(FoliationError):
        AffineFoliation.parse(Z3, ["z1", "z2"], 1)
    with pytest.raises(FoliationError):
        check_chart_shape([PolyRing(Z3).var("z1")], -1)


def test_sing_ideal_of_simple_fields():
    F = AffineFoliation.parse(Z3, ["z1", "z2", "z3"], 1)
    assert sing_ideal_chart(F).groebner().colength() == 1
    F = AffineFoliation.parse(Z3, ["z1^2", "z2^2", "z3^2"], 2)
    assert sing_ideal_chart(F).groebner().colength() == 8


def test_line_example_vanishes_on_axis():
    F = line_example(3, 2)
    axis = Ideal(F.ring, [F.ring.var("z1"), F.ring.var("z2")])
    assert axis.contains_ideal(sing_ideal_chart(F))


def test_transition_of_constant_field():
    pf = proj(["1", "0", "0"], 0)
    assert chart_transition(pf, 0).components == pf.chart(0).components
    G = chart_transition(pf, 1)
    assert G.ring.names == ("x0", "x2", "x3")
    assert [str(c) for c in G.components] == ["-x0", "-x2", "-x3"]


def _value(p, point):
    return p.evaluate(dict(zip(p.ring.names, point))).constant_term()


@pytest.mark.parametrize("j", [1, 2, 3])
def test_transition_matches_pushforward(j):
    # chart j field equals w_0^(k-1) times the pushforward of the chart-0 field
    F = line_example(3, 2)
    pf = ProjectiveFoliation.from_chart0(F)
    G = pf.chart(j)
    k = F.degree
    rng = random.Random(j)
    for _ in range(5):
        w = [mpq(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(3)]
        # homogeneous point with x_j = 1, then chart-0 coordinates
        x = w[: j] + [mpq(1)] + w[j:]
        z = [xi / x[0] for xi in x[1:]]
        f = [_value(c, z) for c in F.components]
        w0 = x[0]
        push = []
        for i in range(4):
            if i == j:
                continue
            if i == 0:
                push.append(-w0 * w0 * f[j - 1])
            else:
                push.append(w0 * (f[i - 1] - x[i] * f[j - 1]))
        got = [_value(c, w) for c in G.components]
        assert got == [w0 ** (k - 1) * p for p in push]


def test_constant_field_has_one_point():
    assert total_isolated_milnor(proj(["1", "0", "0"], 0)) == 1


def test_generic_degree_one_field_has_four_points():
    pf = proj(["1 + z2 - z3 + 2*z1*z1", "2*z1 - z3 + 2*z1*z2", "-1 + z1 + 3*z2 + 2*z1*z3"], 1)
    counts = isolated_milnor_by_chart(pf, [])
    assert sum(c.new for c in counts) == 4
    assert [c.chart for c in counts] == [0, 1, 2, 3]


def test_subtractive_count_equals_direct_chart_zero_count():
    # a linear field: the only singular point is the origin, nothing at infinity
    pf = proj(["2*z1 + z2", "z2 - z3", "3*z3"], 1)
    counts = isolated_milnor_by_chart(pf, [])
    direct = sing_ideal_chart(pf.chart(0)).groebner().colength()
    assert counts[0].new == direct
    assert sum(c.new for c in counts) == 4


def test_line_example_counts():
    pf = ProjectiveFoliation.from_chart0(line_example(3, 2))
    line = line_example_curve(pf)
    assert total_isolated_milnor(pf, [line]) == 3


def test_curve_generators_do_not_matter():
    pf = ProjectiveFoliation.from_chart0(line_example(3, 2))
    x = pf.hring.gens()
    a = ProjectiveCurve(pf.hring, [x[1], x[2]])
    b = ProjectiveCurve(pf.hring, [x[1] * x[1], x[2], x[1] * x[2] + x[2] * x[3]])
    assert total_isolated_milnor(pf, [a]) == total_isolated_milnor(pf, [b])
    assert total_isolated_milnor(pf, [a, b]) == total_isolated_milnor(pf, [b, a]) == 3


def test_missing_curve_raises_with_chart():
    pf = ProjectiveFoliation.from_chart0(line_example(3, 2))
    with pytest.raises(DimensionError) as err:
        total_isolated_milnor(pf)
    assert "chart 0" in str(err.value)


def test_coordinate_line_and_closure():
    hring = PolyRing(("x0", "x1", "x2", "x3"))
    line = ProjectiveCurve.coordinate_line(hring, [1, 2])
    assert line.vanishing_coordinates() == (1, 2)
    R = PolyRing(Z3)
    closure = ProjectiveCurve.closure_of(Ideal(R, [R.parse("z1 - 1"), R.var("z2")]), hring)
    assert closure.vanishing_coordinates() is None
    assert {str(g) for g in closure.generators} == {"-x0 + x1", "x2"}
    with pytest.raises(ValueError):
        ProjectiveCurve(hring, [hring.parse("x1 + 1")])
