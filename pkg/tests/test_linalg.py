import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folsing.linalg import _bareiss_det, _cofactor_det, determinant, jacobian, mat_vec
from folsing.poly import MultiPoly, PolyRing

R = PolyRing(("z1", "z2", "z3"))


def test_diagonal_determinant():
    z1, z2 = R.var("z1"), R.var("z2")
    assert determinant([[z1, R.zero()], [R.zero(), z2]]) == z1 * z2


def test_jacobian_example():
    J = jacobian([R.parse("z1^2"), R.parse("z1*z2")], ("z1", "z2"))
    assert J == [[R.parse("2*z1"), R.zero()], [R.var("z2"), R.var("z1")]]


def test_identity_with_entry():
    one, zero = R.one(), R.zero()
    m = [[one, zero, zero], [zero, one, zero], [zero, zero, R.var("z3")]]
    assert determinant(m) == R.var("z3")


def test_non_square_rejected():
    with pytest.raises(ValueError):
        determinant([[R.one(), R.one()]])


def test_mat_vec():
    m = [[R.var("z1"), R.one()], [R.zero(), R.var("z2")]]
    assert mat_vec(m, [R.one(), R.var("z3")]) == [R.parse("z1 + z3"), R.parse("z2*z3")]


entries = st.integers(-3, 3).flatmap(
    lambda c: st.sampled_from(["z1", "z2", "z3", "1"]).map(lambda v: R.parse(f"{c}*{v}"))
)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(entries, min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_agrees_with_cofactor(m):
    assert _bareiss_det(m) == _cofactor_det(m)


def test_bareiss_with_pivot_swap():
    z1, z2 = R.var("z1"), R.var("z2")
    zero, one = R.zero(), R.one()
    m = [[zero, one, zero, zero], [one, zero, zero, zero], [zero, zero, z1, zero], [zero, zero, zero, z2]]
    assert determinant(m) == -(z1 * z2)
