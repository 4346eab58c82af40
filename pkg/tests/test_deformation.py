import pytest

from folsing.deformation import (
    CompleteIntersectionData,
    DeformationError,
    build_family_field,
    cramer_identity_holds,
    cramer_system,
    family_map,
    verify_family_properties,
)
from folsing.foliation import ProjectiveCurve, ProjectiveFoliation, total_isolated_milnor
from folsing.groebner import Ideal
from folsing.poly import PolyRing

R = PolyRing(("z1", "z2", "z3"))
W = PolyRing(("w1", "w2", "w3"))
MODEL = [
    W.parse("w1^2 + 2*w1*w2 - w2^2"),
    W.parse("3*w1^2 - w1*w2 + 2*w2^2"),
    W.parse("w1*(1 + 2*w1 - w2 + 3*w3) + w2*(2 - w1 + w2 + w3)"),
]


def ci(f, h):
    return CompleteIntersectionData(R, tuple(R.parse(s) for s in f), tuple(R.parse(s) for s in h))


NONLINEAR = ci(["z1 + z2^2 + z1*z3", "z2 + z1*z3"], ["1 + z2", "2"])
LINEAR = ci(["z1 + z3", "z2 - 2*z3"], ["1 + z2", "2"])


def test_data_validation():
    with pytest.raises(DeformationError):
        ci(["z1"], ["1"])
    with pytest.raises(DeformationError):
        ci(["z1", "z2"], ["z1^2", "0"])
    with pytest.raises(DeformationError):
        ci(["0", "z2"], ["0", "0"])
    with pytest.raises(DeformationError):
        CompleteIntersectionData(R, (R.var("z1"), R.var("z2")), (R.zero(), R.zero())).parameter_ring("z1")


def test_family_map_symbolic_and_numeric():
    sym = family_map(NONLINEAR)
    T = sym[0].ring
    assert T.names == ("z1", "z2", "z3", "t")
    assert sym[1] == T.parse("z2 + z1*z3 + 2*t")
    assert family_map(NONLINEAR, 2)[0] == R.parse("z1 + z2^2 + z1*z3 + 2 + 2*z2")
    assert family_map(NONLINEAR, 0)[-1] == R.var("z3")


def test_cramer_identity_symbolic():
    for data in (NONLINEAR, LINEAR):
        system = cramer_system(MODEL, data)
        assert cramer_identity_holds(system)
        # the last component is the only one det M_t always divides
        assert system.solution_component(2) == system.pulled[-1]


def test_unperturbed_build_at_zero():
    assert build_family_field(MODEL, NONLINEAR, 0).components == build_family_field(
        MODEL, NONLINEAR.unperturbed(), 0
    ).components


def test_built_field_vanishes_on_moving_curve():
    for t in (0, 1, 2):
        F = build_family_field(MODEL, NONLINEAR, t)
        curve = Ideal(R, family_map(NONLINEAR, t)[:-1])
        assert all(curve.contains(c) for c in F.components)


def test_verify_family_properties_all_pass():
    report = verify_family_properties(MODEL, NONLINEAR)
    assert report.ok, report.failures()
    names = {c.name for c in report.checks}
    assert "degree preservation" in names and "cramer identity" in names
    assert report.axis_orders == (2, 2, 1)


def test_degenerate_family_rejected():
    data = ci(["z3", "z2"], ["0", "0"])
    with pytest.raises(DeformationError):
        cramer_system(MODEL, data, 0)


def test_model_shape_checked():
    with pytest.raises(DeformationError):
        cramer_system(MODEL[:2], NONLINEAR, 0)


def test_isolated_count_constant_along_linear_family():
    counts = []
    for t in (0, 1):
        F = build_family_field(MODEL, LINEAR, t)
        pf = ProjectiveFoliation.from_chart0(F)
        curve = ProjectiveCurve.closure_of(Ideal(R, family_map(LINEAR, t)[:-1]), pf.hring)
        counts.append(total_isolated_milnor(pf, [curve]))
    assert counts == [3, 3]


def test_identity_data_returns_model():
    data = ci(["z1", "z2"], ["0", "0"])
    F = build_family_field(MODEL, data, 1)
    rename = dict(zip(W.names, R.gens()))
    assert F.components == tuple(p.substitute(rename, R) for p in MODEL)
