import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folsing.chow import (
    BlowupGeometry,
    DegreeError,
    EMixedClass,
    PtMixedClass,
    baum_bott_E,
    baum_bott_Pt,
    chern_blowup,
    chern_E,
    euler_characteristic_E,
    euler_characteristic_Pt,
    integrate_E,
    integrate_Pt,
)

LINE_P3 = BlowupGeometry(n=3, d=1, g=0, k=1, ell=0)


def test_integrals_on_E_for_a_line():
    assert integrate_E(EMixedClass.zeta(2), LINE_P3) == -2
    assert integrate_E(EMixedClass.zeta() * EMixedClass.curve("K"), LINE_P3) == -2
    assert integrate_E(EMixedClass.zeta() * EMixedClass.curve("H"), LINE_P3) == -1


def test_classical_blowup_intersections():
    for d, g in [(1, 0), (3, 0), (3, 1), (4, 1)]:
        geom = BlowupGeometry(n=3, d=d, g=g, k=1, ell=0)
        H, E = PtMixedClass.H(), PtMixedClass.E()
        assert integrate_Pt(H ** 3, geom) == 1
        assert integrate_Pt(H * H * E, geom) == 0
        assert integrate_Pt(H * E * E, geom) == -d
        # E^3 = -deg N_C
        assert integrate_Pt(E ** 3, geom) == -(4 * d + 2 * g - 2)


def test_first_chern_class_of_blowup():
    assert chern_blowup(1, LINE_P3) == PtMixedClass.H() * 4 - PtMixedClass.E()
    geom = BlowupGeometry(n=5, d=2, g=0, k=1, ell=0)
    assert chern_blowup(1, geom) == PtMixedClass.H() * 6 - PtMixedClass.E() * 3


def test_degree_errors():
    with pytest.raises(DegreeError):
        integrate_E(EMixedClass.zeta(1), LINE_P3)
    with pytest.raises(DegreeError):
        integrate_Pt(PtMixedClass.H(2), LINE_P3)
    with pytest.raises(ValueError):
        PtMixedClass.E(0, "K")
    with pytest.raises(ValueError):
        chern_E(3, LINE_P3)


def test_curve_classes_multiply_to_zero():
    K, H = EMixedClass.curve("K"), EMixedClass.curve("H")
    assert (K * H).is_zero()


def _oracle_chern_E(geom):
    # c(T_E) = (1 + K) * [(1 - zeta)^(n-1) + N (1 - zeta)^(n-2)] on E = P(N)
    n = geom.n
    one, z = EMixedClass.one(), EMixedClass.zeta()
    total = (one + EMixedClass.curve("K")) * (
        (one - z) ** (n - 1) + EMixedClass.curve("N") * (one - z) ** (n - 2)
    )
    parts = {}
    for (a, cls), v in total.terms.items():
        deg = a + (1 if cls else 0)
        parts.setdefault(deg, EMixedClass())
        parts[deg] = parts[deg] + EMixedClass({(a, cls): v})
    return parts


geometries = st.builds(
    BlowupGeometry,
    n=st.integers(3, 6),
    d=st.integers(1, 5),
    g=st.integers(0, 4),
    k=st.integers(0, 4),
    ell=st.integers(0, 3),
)


@settings(max_examples=40, deadline=None)
@given(geometries)
def test_chern_E_matches_projective_bundle_oracle(geom):
    n = geom.n
    oracle = _oracle_chern_E(geom)
    for i in range(n):
        mine = chern_E(i, geom)
        theirs = oracle.get(i, EMixedClass())
        assert integrate_E(mine * EMixedClass.zeta(n - 1 - i), geom) == integrate_E(
            theirs * EMixedClass.zeta(n - 1 - i), geom
        )
        if i <= n - 2:
            cap = EMixedClass.zeta(n - 2 - i) * EMixedClass.curve("H")
            assert integrate_E(mine * cap, geom) == integrate_E(theirs * cap, geom)


@settings(max_examples=40, deadline=None)
@given(geometries)
def test_euler_characteristics(geom):
    e = 2 - 2 * geom.g
    assert euler_characteristic_Pt(geom) == geom.n + 1 + e * (geom.n - 2)
    assert euler_characteristic_E(geom) == e * (geom.n - 1)


def test_baum_bott_examples():
    assert baum_bott_E(BlowupGeometry(3, 1, 0, 2, 1)) == 6
    assert baum_bott_Pt(BlowupGeometry(3, 1, 0, 2, 1)) == 9
    # k = 1, ell = 0: trivial cotangent line, so the count is the Euler characteristic
    geom = BlowupGeometry(3, 1, 0, 1, 0)
    assert baum_bott_Pt(geom) == euler_characteristic_Pt(geom) == 6

