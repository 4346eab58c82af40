"""Blowing up a foliation along a coordinate-axis curve.

The curve is ``C = {z_s = 0 : s in normal}`` in an affine chart, with one
remaining axis coordinate.  Inside the blowup ring the normal variables
become ``u1, ..., u_{n-1}`` in the order the caller lists them and the axis
becomes ``u_n``.  Blowup chart ``j`` is the substitution

    z_{normal[j]} = u_j,   z_{normal[i]} = u_i u_j  (i != j),   axis = u_n,

and the exceptional divisor there is ``u_j = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from .foliation import AffineFoliation, ProjectiveCurve, ProjectiveFoliation, _count_new
from .groebner import DimensionError, Ideal
from .poly import MultiPoly, PolyRing, order_along_axis

ND_I = "ND-i"
ND_II = "ND-ii"
ND_III = "ND-iii"
D_I = "D-i"
D_II = "D-ii"
CASES = (ND_I, ND_II, ND_III, D_I, D_II)


class NotSpecialError(ValueError):
    """The curve is not of the kind the exceptional-divisor count handles."""


@dataclass(frozen=True)
class AxisCurve:
    """A coordinate-axis curve ``{normal variables = 0}`` in a chart ring."""

    ring: PolyRing
    axis: str
    normal: Tuple[str, ...]

    def __post_init__(self):
        normal = tuple(self.normal)
        object.__setattr__(self, "normal", normal)
        names = set(normal) | {self.axis}
        if len(normal) != self.ring.arity - 1 or len(names) != self.ring.arity or names != set(self.ring.names):
            raise ValueError(
                f"axis {self.axis!r} and normal {normal} must partition the variables {self.ring.names}"
            )

    @classmethod
    def along(cls, ring: PolyRing, axis: str) -> "AxisCurve":
        return cls(ring, axis, tuple(v for v in ring.names if v != axis))

    @property
    def n(self) -> int:
        return self.ring.arity

    def ideal(self) -> Ideal:
        return Ideal(self.ring, [self.ring.var(v) for v in self.normal])

    def blowup_ring(self) -> PolyRing:
        return PolyRing(tuple(f"u{i}" for i in range(1, self.n + 1)))

    def components_in_order(self, F: AffineFoliation) -> Tuple[MultiPoly, ...]:
        """Field components reordered as (normal..., axis)."""
        return tuple(F.component(v) for v in self.normal) + (F.component(self.axis),)


def pullback_triangular(F: AffineFoliation, images: Mapping[str, MultiPoly], target: PolyRing) -> AffineFoliation:
    """Rewrite ``F`` in new coordinates ``w`` with ``z = phi(w)`` triangular.

    ``images`` maps each old variable (in ``F.ring`` order) to
    ``c_i w_i + p_i(w_1, ..., w_{i-1})`` with ``c_i`` a nonzero constant, so
    ``D phi`` is unipotent up to scaling and the pulled-back field stays
    polynomial.
    """
    if target.arity != F.ring.arity:
        raise ValueError("coordinate change must preserve the dimension")
    phis = [images[v] for v in F.ring.names]
    ws = target.names
    diag = []
    for i, phi in enumerate(phis):
        if phi.ring != target:
            raise ValueError("images must live in the target ring")
        lin = phi.diff(ws[i])
        if not lin.is_constant() or lin.is_zero():
            raise ValueError(f"image of {F.ring.names[i]} is not c*{ws[i]} + (earlier variables)")
        for later in ws[i + 1:]:
            if phi.degree_in(later):
                raise ValueError(f"image of {F.ring.names[i]} depends on later variable {later}")
        diag.append(lin.constant_term())
    pulled = [f.substitute(dict(zip(F.ring.names, phis)), target) for f in F.components]
    new: List[MultiPoly] = []
    for i, phi in enumerate(phis):
        acc = pulled[i]
        for j in range(i):
            acc = acc - phi.diff(ws[j]) * new[j]
        new.append(acc / diag[i])
    # a nonlinear change can raise degrees; the result is only a local model
    degree = max([F.degree] + [c.degree() for c in new])
    return AffineFoliation(target, tuple(new), degree, F.chart)


def _sigma(C: AxisCurve, j: int) -> Dict[str, MultiPoly]:
    """Substitution of blowup chart ``j`` (1-based among the normal variables)."""
    U = C.blowup_ring()
    us = U.gens()
    uj = us[j - 1]
    sub = {}
    for i, v in enumerate(C.normal, start=1):
        sub[v] = uj if i == j else us[i - 1] * uj
    sub[C.axis] = us[-1]
    return sub


@dataclass(frozen=True)
class MultiplicityProfile:
    """Vanishing orders of the field along the curve and the resulting case."""

    raw_orders: Tuple[float, ...]
    sort_permutation: Tuple[int, ...]
    sorted_orders: Tuple[float, ...]
    residual_zero: Tuple[bool, ...]
    m_C: float
    ell: float
    case: str

    @property
    def is_special(self) -> bool:
        return self.case == ND_I

    @property
    def is_dicritical(self) -> bool:
        return self.case in (D_I, D_II)

    @property
    def strict_power(self) -> int:
        """Power of the exceptional equation divided out of the total transform."""
        m = self.sorted_orders
        if self.case in (ND_I, ND_II, D_I):
            s = m[-1]
        elif self.case == ND_III:
            s = m[-2] - 1
        else:
            s = m[0]
        if s == math.inf:
            raise ValueError("field vanishes identically along the curve direction")
        return int(s)


def _orders(F: AffineFoliation, C: AxisCurve) -> Tuple[float, ...]:
    if F.ring != C.ring:
        raise ValueError("field and curve live in different rings")
    comps = C.components_in_order(F)
    orders = tuple(order_along_axis(f, C.normal) for f in comps)
    zero = [v for v, m in zip(C.normal, orders) if m == math.inf]
    if zero:
        raise ValueError(f"normal component(s) {', '.join(zero)} vanish identically; orders must be finite")
    if min(orders) == 0:
        bad = [v for v, m in zip(C.normal + (C.axis,), orders) if m == 0]
        raise ValueError(
            f"the curve is not in the singular set: component(s) {', '.join(bad)} do not vanish on it"
        )
    return orders


def _sorted(C: AxisCurve, orders: Sequence[float]) -> Tuple[int, ...]:
    normal = list(range(C.n - 1))
    return tuple(sorted(normal, key=lambda i: -orders[i]))


def _leading_restrictions(F: AffineFoliation, C: AxisCurve, orders, perm) -> Dict[int, MultiPoly]:
    """``g_i = (u_j^{-m_i} f_i(sigma_j))|_{u_j=0}`` for the top chart ``j``."""
    j = perm[0] + 1
    sub = _sigma(C, j)
    U = C.blowup_ring()
    uj = U.names[j - 1]
    comps = C.components_in_order(F)
    out = {}
    top = orders[perm[0]]
    for i in perm:
        if orders[i] != top:
            continue
        pulled = comps[i].substitute(sub, U)
        exp = [0] * U.arity
        exp[j - 1] = int(orders[i])
        out[i] = pulled.divide_by_monomial(exp).evaluate({uj: 0})
    return out


def residuals(F: AffineFoliation, C: AxisCurve, names: Sequence[str] | None = None) -> Dict[str, MultiPoly]:
    """``r_i = g_i - u_i g_1`` for normal variables tied with the top order.

    Keys are normal variable names other than the top one; values live in the
    blowup ring of ``C``.  By default every eligible variable is returned;
    asking for one whose order differs from the top order is an error.
    """
    orders = _orders(F, C)
    perm = _sorted(C, orders)
    if orders[perm[0]] == math.inf:
        raise ValueError("every normal component vanishes identically")
    g = _leading_restrictions(F, C, orders, perm)
    U = C.blowup_ring()
    top = perm[0]
    if names is None:
        wanted = [i for i in perm[1:] if i in g]
    else:
        wanted = []
        for v in names:
            i = C.normal.index(v)
            if i == top or i not in g:
                raise ValueError(f"no residual for {v}: its order {orders[i]} differs from the top order "
                                 f"{orders[top]} or it is the top variable")
            wanted.append(i)
    return {C.normal[i]: g[i] - U.gens()[i] * g[top] for i in wanted}


def multiplicity_profile(F: AffineFoliation, C: AxisCurve) -> MultiplicityProfile:
    orders = _orders(F, C)
    perm = _sorted(C, orders)
    srt = tuple(orders[i] for i in perm) + (orders[-1],)
    mn = srt[-1]
    m1 = srt[0]
    normal_sorted = srt[:-1]
    if m1 == math.inf:
        raise ValueError("every normal component vanishes identically")
    res = residuals(F, C)
    zero = tuple(res[C.normal[i]].is_zero() for i in perm[1:] if C.normal[i] in res)
    all_equal = all(m == m1 for m in normal_sorted)
    if all_equal and all(zero) and mn >= m1:
        case = D_I if mn == m1 else D_II
    elif mn != math.inf and all(m == mn + 1 for m in normal_sorted[1:]) and (
        normal_sorted[-1] != m1 or not any(zero)
    ):
        case = ND_I
    elif mn + 1 <= normal_sorted[-1]:
        case = ND_II
    else:
        case = ND_III
    if case in (D_I, D_II):
        ell = min(srt)
    else:
        ell = min([m1, mn] + [m - 1 for m in normal_sorted[1:]])
    return MultiplicityProfile(
        raw_orders=orders,
        sort_permutation=perm,
        sorted_orders=srt,
        residual_zero=zero,
        m_C=min(srt),
        ell=ell,
        case=case,
    )


def classify(F: AffineFoliation, C: AxisCurve) -> str:
    return multiplicity_profile(F, C).case


def is_special(F: AffineFoliation, C: AxisCurve) -> bool:
    return multiplicity_profile(F, C).is_special


@dataclass(frozen=True)
class BlowupChartField:
    """Components of a transformed field in blowup chart ``j`` (indexed by u1..un)."""

    chart: int
    ring: PolyRing
    components: Tuple[MultiPoly, ...]
    divided_power: int = 0

    def exceptional_var(self) -> str:
        return self.ring.names[self.chart - 1]


def total_transform(F: AffineFoliation, C: AxisCurve, j: int) -> BlowupChartField:
    """Pullback of the field to blowup chart ``j`` (1-based over ``C.normal``)."""
    if not 1 <= j <= C.n - 1:
        raise ValueError(f"blowup chart must be in 1..{C.n - 1}")
    U = C.blowup_ring()
    us = U.gens()
    sub = _sigma(C, j)
    pulled = [f.substitute(sub, U) for f in C.components_in_order(F)]
    fj = pulled[j - 1]
    exp = [0] * U.arity
    exp[j - 1] = 1
    comps = []
    for i in range(C.n - 1):
        if i == j - 1:
            comps.append(fj)
        else:
            comps.append((pulled[i] - us[i] * fj).divide_by_monomial(exp))
    comps.append(pulled[-1])
    return BlowupChartField(j, U, tuple(comps), 0)


def strict_transform(F: AffineFoliation, C: AxisCurve, j: int) -> BlowupChartField:
    """Total transform divided by the case-dependent power of ``u_j``."""
    prof = multiplicity_profile(F, C)
    s = prof.strict_power
    tot = total_transform(F, C, j)
    exp = [0] * tot.ring.arity
    exp[j - 1] = s
    try:
        comps = tuple(c.divide_by_monomial(exp) for c in tot.components)
    except ArithmeticError as err:
        raise ValueError(
            f"total transform in chart {j} is not divisible by u{j}^{s}; "
            f"the multiplicity profile is inconsistent"
        ) from err
    return BlowupChartField(j, tot.ring, comps, s)


def exceptional_ideal(F: AffineFoliation, C: AxisCurve, j: int) -> Tuple[PolyRing, Ideal]:
    """Singular ideal of the induced foliation on ``E`` inside blowup chart ``j``."""
    strict = strict_transform(F, C, j)
    uj = strict.exceptional_var()
    E = PolyRing(tuple(v for v in strict.ring.names if v != uj))
    gens = [
        c.evaluate({uj: 0}).change_ring(E)
        for i, c in enumerate(strict.components)
        if i != j - 1
    ]
    return E, Ideal(E, gens)


@dataclass(frozen=True)
class ExceptionalCount:
    chart: int
    colength: int
    new: int
    label: str = ""


def sing_on_E_by_chart(F: AffineFoliation, C: AxisCurve, axis_seen: bool = False) -> List[ExceptionalCount]:
    """Milnor sums of the induced foliation on ``E`` over the blowup charts.

    Points already seen in an earlier blowup chart (some earlier ``u`` nonzero)
    are subtracted; with ``axis_seen`` the part over ``axis != 0`` is also
    treated as already counted.
    """
    prof = multiplicity_profile(F, C)
    if not prof.is_special:
        if prof.is_dicritical:
            raise NotSpecialError(
                f"curve is dicritical ({prof.case}): E is invariant only generically, "
                "its singular count is not defined here"
            )
        raise NotSpecialError(f"curve is not special (case {prof.case})")
    out = []
    for j in range(1, C.n):
        E, ideal = exceptional_ideal(F, C, j)
        gb = ideal.groebner()
        if not gb.is_zero_dimensional():
            v = gb._escaping_variable()
            raise DimensionError(
                f"blowup chart {j}: singular set on E is not zero-dimensional (variable {v} escapes)",
                variable=v,
            )
        prior = [E.var(f"u{i}") for i in range(1, j)]
        if axis_seen:
            prior.append(E.var(f"u{C.n}"))
        col, new = _count_new(ideal, prior)
        out.append(ExceptionalCount(j, col, new))
    return out


def sing_on_E_total(F: AffineFoliation, C: AxisCurve) -> int:
    """Milnor sum on ``E`` over the affine part of ``C`` in this chart."""
    return sum(c.new for c in sing_on_E_by_chart(F, C))


@dataclass
class ProjectiveExceptionalReport:
    total: int
    charts: List[Tuple[int, ExceptionalCount]] = field(default_factory=list)
    profile: MultiplicityProfile | None = None


def line_charts(F: ProjectiveFoliation, line: ProjectiveCurve) -> List[Tuple[int, AxisCurve]]:
    """The two standard charts meeting a coordinate line, with its axis form there."""
    vanish = line.vanishing_coordinates()
    if vanish is None:
        raise ValueError("only coordinate lines are supported")
    free = [i for i in range(F.n + 1) if i not in vanish]
    out = []
    for c in free:
        (other,) = [i for i in free if i != c]
        ring = F.chart_ring(c)
        C = AxisCurve(ring, F.chart_var(c, other), tuple(F.chart_var(c, s) for s in vanish))
        out.append((c, C))
    return out


def sing_on_E_projective(F: ProjectiveFoliation, line: ProjectiveCurve) -> ProjectiveExceptionalReport:
    """Milnor sum on the whole exceptional divisor over a coordinate line.

    The line is covered by two standard charts; in the second one the
    points with nonzero axis coordinate were already counted.
    """
    report = ProjectiveExceptionalReport(0)
    for pos, (c, C) in enumerate(line_charts(F, line)):
        field_c = F.chart(c)
        if report.profile is None:
            report.profile = multiplicity_profile(field_c, C)
        for cnt in sing_on_E_by_chart(field_c, C, axis_seen=pos > 0):
            report.charts.append((c, cnt))
            report.total += cnt.new
    return report
