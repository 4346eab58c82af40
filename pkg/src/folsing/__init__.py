"""Singularities of foliations by curves on projective space that are special along curves."""

from .blowup import (
    AxisCurve,
    MultiplicityProfile,
    classify,
    is_special,
    multiplicity_profile,
    residuals,
    sing_on_E_projective,
    sing_on_E_total,
    strict_transform,
    total_transform,
)
from .chow import BlowupGeometry, baum_bott_E, baum_bott_Pt, chern_blowup, chern_E, integrate_E, integrate_Pt
from .deformation import CompleteIntersectionData, build_family_field, family_map, verify_family_properties
from .foliation import AffineFoliation, ProjectiveCurve, ProjectiveFoliation, sing_ideal_chart, total_isolated_milnor
from .formulas import (
    CurveData,
    baum_bott_total,
    blowup_count,
    curve_contribution,
    exceptional_count,
    isolated_count,
    total_isolated_count,
)
from .groebner import DimensionError, Ideal, MonomialOrder, buchberger, colength, eliminate, intersect, saturate
from .parser import PolySyntaxError, parse_poly
from .poly import MultiPoly, PolyRing

__version__ = "0.1.0"
