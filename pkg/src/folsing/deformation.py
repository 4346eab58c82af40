"""One-parameter families of foliations singular along a moving complete intersection.

Given curve equations ``f_1..f_{n-1}`` and perturbations ``h_1..h_{n-1}`` in
``z_1..z_n``, the map ``F_t = (f_1 + t h_1, ..., f_{n-1} + t h_{n-1}, z_n)``
sends the curve ``C_t`` onto the ``w_n``-axis.  A model field ``P(w)``
singular along that axis is pulled back by solving ``DF_t Q = P o F_t`` with
Cramer's rule; clearing the denominator ``det M_t`` (the leading
``(n-1) x (n-1)`` block of ``DF_t``) gives a polynomial field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .foliation import AffineFoliation
from .groebner import Ideal
from .linalg import determinant, jacobian, mat_vec
from .poly import MultiPoly, PolyRing, Scalar, divide_exact, order_along_axis, to_q


class DeformationError(ValueError):
    """Inconsistent family data."""


@dataclass(frozen=True)
class CompleteIntersectionData:
    """Curve equations ``f`` and perturbations ``h`` over an ``n``-variable ring."""

    ring: PolyRing
    f: Tuple[MultiPoly, ...]
    h: Tuple[MultiPoly, ...]

    def __post_init__(self):
        f, h = tuple(self.f), tuple(self.h)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "h", h)
        n = self.ring.arity
        if len(f) != n - 1 or len(h) != n - 1:
            raise DeformationError(f"need {n - 1} curve equations and {n - 1} perturbations")
        if any(p.ring != self.ring for p in f + h):
            raise DeformationError("all polynomials must live in the family's ring")
        for i, (fi, hi) in enumerate(zip(f, h), start=1):
            if fi.is_zero():
                raise DeformationError(f"curve equation {i} is zero")
            if hi and hi.degree() > fi.degree():
                raise DeformationError(
                    f"perturbation {i} has degree {hi.degree()} > {fi.degree()} = degree of its curve equation"
                )

    @property
    def n(self) -> int:
        return self.ring.arity

    def unperturbed(self) -> "CompleteIntersectionData":
        return CompleteIntersectionData(self.ring, self.f, tuple(self.ring.zero() for _ in self.h))

    def parameter_ring(self, name: str = "t") -> PolyRing:
        if name in self.ring:
            raise DeformationError(f"parameter name {name!r} clashes with a variable")
        return self.ring.extend(name)


def family_map(ci: CompleteIntersectionData, t: Scalar | None = None, name: str = "t") -> List[MultiPoly]:
    """Components of ``F_t``; ``t=None`` adjoins ``t`` as a ring variable."""
    last = ci.ring.names[-1]
    if t is None:
        R = ci.parameter_ring(name)
        tv = R.var(name)
        out = [fi.change_ring(R) + tv * hi.change_ring(R) for fi, hi in zip(ci.f, ci.h)]
        return out + [R.var(last)]
    tq = to_q(t)
    return [fi + hi.scale(tq) for fi, hi in zip(ci.f, ci.h)] + [ci.ring.var(last)]


@dataclass
class CramerSystem:
    """Everything produced while pulling a model field back along ``F_t``."""

    ring: PolyRing
    variables: Tuple[str, ...]
    family: List[MultiPoly]
    pulled: List[MultiPoly]
    jacobian: List[List[MultiPoly]]
    det_M: MultiPoly
    dets: List[MultiPoly]

    @property
    def components(self) -> List[MultiPoly]:
        """The polynomial field ``det M_t * Q``."""
        return list(self.dets)

    def solution_component(self, i: int) -> MultiPoly:
        """``Q_i = det A_i / det M_t``; raises ``ArithmeticError`` if not polynomial."""
        return divide_exact(self.dets[i], self.det_M)


def _check_model(P: Sequence[MultiPoly], n: int) -> PolyRing:
    if len(P) != n:
        raise DeformationError(f"model field has {len(P)} components, expected {n}")
    ring = P[0].ring
    if ring.arity != n or any(p.ring != ring for p in P):
        raise DeformationError("model field must live in one ring with n variables")
    return ring


def cramer_system(P: Sequence[MultiPoly], ci: CompleteIntersectionData, t: Scalar | None = None,
                  name: str = "t") -> CramerSystem:
    n = ci.n
    wring = _check_model(P, n)
    Ft = family_map(ci, t, name)
    R = Ft[0].ring
    zs = ci.ring.names
    pulled = [p.substitute(dict(zip(wring.names, Ft)), R) for p in P]
    DF = jacobian(Ft, zs)
    M = [row[: n - 1] for row in DF[: n - 1]]
    det_M = determinant(M)
    if det_M.is_zero():
        raise DeformationError("det M_t vanishes identically; F_t is degenerate")
    dets = []
    for i in range(n):
        A = [row[:i] + [pulled[r]] + row[i + 1:] for r, row in enumerate(DF)]
        dets.append(determinant(A))
    return CramerSystem(R, tuple(zs), Ft, pulled, DF, det_M, dets)


def build_family_field(P: Sequence[MultiPoly], ci: CompleteIntersectionData, t: Scalar,
                       degree: int | None = None) -> AffineFoliation:
    """The deformed field at a rational parameter value, as a chart-0 foliation."""
    comps = cramer_system(P, ci, t).components
    if degree is None:
        degree = max(c.degree() for c in comps if c)
    return AffineFoliation(ci.ring, tuple(comps), degree)


def cramer_identity_holds(system: CramerSystem) -> bool:
    """``DF_t * (det M_t Q) == det M_t * (P o F_t)`` exactly."""
    lhs = mat_vec(system.jacobian, system.dets)
    return all(a == system.det_M * b for a, b in zip(lhs, system.pulled))


@dataclass(frozen=True)
class Check:
    name: str
    t: Optional[str]
    passed: bool
    detail: str = ""


@dataclass
class FamilyReport:
    checks: List[Check] = field(default_factory=list)
    axis_orders: Tuple[float, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


def curve_ideal_contains(components: Sequence[MultiPoly], curve: Sequence[MultiPoly]) -> List[bool]:
    """Membership of each field component in the ideal of the curve equations."""
    gb = Ideal(curve[0].ring, curve).groebner()
    return [gb.is_member(c) for c in components]


def verify_family_properties(P: Sequence[MultiPoly], ci: CompleteIntersectionData,
                             samples: Sequence[Scalar] = (0, 1, 2)) -> FamilyReport:
    report = FamilyReport()
    wring = _check_model(P, ci.n)
    report.axis_orders = tuple(order_along_axis(p, wring.names[:-1]) for p in P)

    sym = cramer_system(P, ci, None)
    report.checks.append(Check("cramer identity", None, cramer_identity_holds(sym)))
    last_ok = False
    try:
        last_ok = sym.solution_component(ci.n - 1) == sym.pulled[-1]
    except ArithmeticError:
        pass
    report.checks.append(Check("last Cramer component is P_n o F_t", None, last_ok))

    base = cramer_system(P, ci.unperturbed(), 0).components
    at0 = cramer_system(P, ci, 0).components
    report.checks.append(Check("t = 0 gives the unperturbed field", "0", base == at0))

    base_deg = [c.degree() for c in base]
    for t in samples:
        ts = str(to_q(t))
        system = cramer_system(P, ci, t)
        comps = system.components
        degs = [c.degree() for c in comps]
        report.checks.append(Check(
            "degree preservation", ts,
            all(a <= b or c.is_zero() for a, b, c in zip(degs, base_deg, comps)),
            f"degrees {degs} vs {base_deg}",
        ))
        report.checks.append(Check("det M_t is nonzero", ts, not system.det_M.is_zero()))
        member = curve_ideal_contains(comps, system.family[:-1])
        report.checks.append(Check(
            "field vanishes on the curve C_t", ts, all(member),
            f"component membership {member}",
        ))
    return report
