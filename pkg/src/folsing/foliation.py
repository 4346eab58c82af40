"""Foliations by curves on projective space, in standard affine charts.

A degree-``k`` foliation on P^n is stored as a homogeneous vector field
``F_0, ..., F_n`` of degree ``k`` on C^{n+1}, taken modulo the radial field.
Its field in the chart ``x_j = 1`` has components ``F_i - x_i F_j``
(``i != j``) evaluated at ``x_j = 1``.  Chart 0 keeps the caller's variable
names; the other charts use the homogeneous names with ``x_j`` removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .groebner import DimensionError, Ideal, saturate
from .poly import MultiPoly, PolyRing


class FoliationError(ValueError):
    """Invalid foliation data."""


def check_chart_shape(components: Sequence[MultiPoly], degree: int) -> None:
    """Validate that a chart field has the shape of a degree-``degree`` foliation.

    Every component has degree at most ``degree + 1`` and the top layer, when
    present, is ``G * (z_1, ..., z_n)`` for one homogeneous ``G``.
    """
    if degree < 0:
        raise FoliationError("degree must be non-negative")
    if not components:
        raise FoliationError("no components")
    ring = components[0].ring
    top = degree + 1
    for f in components:
        if f.degree() > top:
            raise FoliationError(f"component {f} has degree {f.degree()} > {top}")
    layers = [f.homogeneous_part(top) for f in components]
    if not any(layers):
        return
    gens = ring.gens()
    g = None
    for layer, z in zip(layers, gens):
        if layer:
            try:
                g = layer.divide_by_monomial(next(iter(z.raw())))
            except ArithmeticError:
                g = None
            break
    if g is None or any(layer != g * z for layer, z in zip(layers, gens)):
        raise FoliationError(
            f"degree-{top} part of the field is not a multiple of the radial field; "
            f"the declared degree {degree} is too small"
        )


@dataclass(frozen=True)
class AffineFoliation:
    """A polynomial vector field ``sum f_i d/dz_i`` in a standard chart."""

    ring: PolyRing
    components: Tuple[MultiPoly, ...]
    degree: int
    chart: int = 0

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.ring.arity:
            raise FoliationError(f"expected {self.ring.arity} components, got {len(comps)}")
        if any(c.ring != self.ring for c in comps):
            raise FoliationError("components must live in the foliation's ring")
        if all(c.is_zero() for c in comps):
            raise FoliationError("the zero vector field does not define a foliation")
        check_chart_shape(comps, self.degree)

    @classmethod
    def parse(cls, names: Sequence[str], components: Sequence[str], degree: int, chart: int = 0) -> "AffineFoliation":
        ring = PolyRing(names)
        return cls(ring, tuple(ring.parse(c) for c in components), degree, chart)

    @property
    def n(self) -> int:
        return self.ring.arity

    def component(self, name: str) -> MultiPoly:
        return self.components[self.ring.index(name)]

    def __str__(self) -> str:
        return " + ".join(f"({c})*d/d{v}" for c, v in zip(self.components, self.ring.names))


def sing_ideal_chart(F: AffineFoliation) -> Ideal:
    """The singular scheme in a chart: the ideal of the components."""
    return Ideal(F.ring, F.components)


def _homogenize(p: MultiPoly, hring: PolyRing, degree: int, skip: int) -> MultiPoly:
    """Homogenize a polynomial of the chart ``x_skip = 1`` to ``degree``."""
    out = {}
    for e, c in p.raw().items():
        d = sum(e)
        if d > degree:
            raise FoliationError(f"cannot homogenize {p} to degree {degree}")
        full = list(e[:skip]) + [degree - d] + list(e[skip:])
        out[tuple(full)] = c
    return MultiPoly(hring, out)


def dehomogenize(p: MultiPoly, j: int, chart_ring: PolyRing) -> MultiPoly:
    """Set the homogeneous coordinate ``j`` to 1 and land in ``chart_ring``."""
    out = {}
    for e, c in p.raw().items():
        ne = e[:j] + e[j + 1:]
        out[ne] = out.get(ne, 0) + c
    return MultiPoly(chart_ring, out)


class ProjectiveFoliation:
    """A degree-``k`` foliation on P^n given by its homogeneous field."""

    def __init__(self, hring: PolyRing, homogeneous: Sequence[MultiPoly], degree: int,
                 chart0_ring: PolyRing | None = None):
        self.hring = hring
        self.n = hring.arity - 1
        self.k = degree
        self.homogeneous = tuple(homogeneous)
        if len(self.homogeneous) != self.n + 1:
            raise FoliationError("need n+1 homogeneous components")
        for F in self.homogeneous:
            if F and (not F.is_homogeneous() or F.degree() != degree):
                raise FoliationError(f"component {F} is not homogeneous of degree {degree}")
        if chart0_ring is None:
            chart0_ring = PolyRing(hring.names[1:])
        if chart0_ring.arity != self.n:
            raise FoliationError("chart-0 ring has the wrong arity")
        self.chart0_ring = chart0_ring
        self._charts: dict = {}

    @classmethod
    def from_chart0(cls, F: AffineFoliation, hnames: Sequence[str] | None = None) -> "ProjectiveFoliation":
        """Projective model of a chart-0 field ``f`` with declared degree ``k``.

        Writing ``f_i = f_i' + z_i G`` with ``deg f_i' <= k`` and ``G`` the
        radial top layer, ``F_0 = -G`` and ``F_i = x_0^k f_i'(x/x_0)``.
        """
        if F.chart != 0:
            raise FoliationError("from_chart0 expects a chart-0 field")
        n, k = F.n, F.degree
        hnames = tuple(hnames) if hnames else tuple(f"x{i}" for i in range(n + 1))
        hring = PolyRing(hnames)
        top = [f.homogeneous_part(k + 1) for f in F.components]
        g = F.ring.zero()
        for layer, z in zip(top, F.ring.gens()):
            if layer:
                g = layer.divide_by_monomial(next(iter(z.raw())))
                break
        # G lives in x_1..x_n: shift exponents past x_0
        G = MultiPoly(hring, {(0,) + e: c for e, c in g.raw().items()})
        comps = [-G]
        for f, layer in zip(F.components, top):
            comps.append(_homogenize(f - layer, hring, k, 0))
        return cls(hring, comps, k, chart0_ring=F.ring)

    def chart_ring(self, j: int) -> PolyRing:
        if j == 0:
            return self.chart0_ring
        return PolyRing(self.hring.names[:j] + self.hring.names[j + 1:])

    def chart_var(self, j: int, i: int) -> str:
        """Name, in chart ``j``, of the affine coordinate ``x_i / x_j``."""
        if i == j:
            raise ValueError("x_j is 1 in its own chart")
        ring = self.chart_ring(j)
        return ring.names[i if i < j else i - 1]

    def chart(self, j: int) -> AffineFoliation:
        """The field in the standard chart ``x_j = 1``."""
        if not 0 <= j <= self.n:
            raise ValueError(f"chart index must be in 0..{self.n}")
        if j not in self._charts:
            ring = self.chart_ring(j)
            Fj = self.homogeneous[j]
            xs = self.hring.gens()
            comps = []
            for i in range(self.n + 1):
                if i == j:
                    continue
                comps.append(dehomogenize(self.homogeneous[i] - xs[i] * Fj, j, ring))
            self._charts[j] = AffineFoliation(ring, tuple(comps), self.k, chart=j)
        return self._charts[j]

    def charts(self) -> List[AffineFoliation]:
        return [self.chart(j) for j in range(self.n + 1)]


def chart_transition(F: ProjectiveFoliation, target_chart: int) -> AffineFoliation:
    return F.chart(target_chart)


class ProjectiveCurve:
    """A curve in P^n given by homogeneous generators of its ideal."""

    def __init__(self, hring: PolyRing, generators: Sequence[MultiPoly], label: str = ""):
        self.hring = hring
        self.generators = tuple(g for g in generators if g)
        for g in self.generators:
            if g.ring != hring or not g.is_homogeneous():
                raise ValueError(f"curve generator {g} is not homogeneous in {hring}")
        self.label = label

    @classmethod
    def coordinate_line(cls, hring: PolyRing, vanishing: Sequence[int]) -> "ProjectiveCurve":
        """The line where the homogeneous coordinates ``vanishing`` are zero."""
        vanishing = tuple(vanishing)
        if len(vanishing) != hring.arity - 2:
            raise ValueError("a coordinate line needs n-1 vanishing coordinates")
        xs = hring.gens()
        return cls(hring, [xs[i] for i in vanishing], label="line")

    @classmethod
    def closure_of(cls, affine: Ideal, hring: PolyRing) -> "ProjectiveCurve":
        """Projective closure of a chart-0 curve: homogenize a degrevlex basis."""
        gens = []
        for g in affine.groebner().basis:
            gens.append(_homogenize(g, hring, g.degree(), 0))
        return cls(hring, gens, label="closure")

    def vanishing_coordinates(self) -> Tuple[int, ...] | None:
        idx = []
        for g in self.generators:
            if len(g) != 1:
                return None
            (e,) = g.raw()
            if sum(e) != 1:
                return None
            idx.append(e.index(1))
        return tuple(sorted(idx))

    def chart_ideal(self, pf: ProjectiveFoliation, j: int) -> Ideal:
        ring = pf.chart_ring(j)
        return Ideal(ring, [dehomogenize(g, j, ring) for g in self.generators])


@dataclass(frozen=True)
class ChartCount:
    """Per-chart bookkeeping of an isolated-point count."""

    chart: int
    colength: int
    new: int


def _count_new(ideal: Ideal, prior: Sequence[MultiPoly]) -> Tuple[int, int]:
    """(colength, length supported where all ``prior`` coordinates vanish)."""
    total = ideal.groebner().colength()
    if not prior or total == 0:
        return total, total
    rest = saturate(ideal, Ideal(ideal.ring, prior)).groebner().colength()
    return total, total - rest


def isolated_milnor_by_chart(F: ProjectiveFoliation, curves: Sequence[ProjectiveCurve | Sequence[Ideal]]) -> List[ChartCount]:
    """Chart-by-chart isolated Milnor sums, each closed point counted once.

    In chart ``c`` the singular ideal is saturated by every curve ideal; the
    points already seen in charts ``b < c`` (where some ``x_b != 0``) are
    removed by saturating with the ideal of those coordinates.
    """
    counts = []
    for c in range(F.n + 1):
        field = F.chart(c)
        ideal = sing_ideal_chart(field)
        for curve in curves:
            J = curve.chart_ideal(F, c) if isinstance(curve, ProjectiveCurve) else curve[c]
            if J.is_unit():
                continue
            ideal = saturate(ideal, J)
        gb = ideal.groebner()
        if not gb.is_zero_dimensional():
            v = gb._escaping_variable()
            raise DimensionError(
                f"chart {c}: singular scheme minus the curves is not zero-dimensional "
                f"(variable {v} escapes the staircase); a curve component is missing or wrong",
                variable=v,
            )
        ring = field.ring
        prior = [ring.var(F.chart_var(c, b)) for b in range(c)]
        col, new = _count_new(ideal, prior)
        counts.append(ChartCount(c, col, new))
    return counts


def total_isolated_milnor(F: ProjectiveFoliation, curves: Sequence[ProjectiveCurve | Sequence[Ideal]] = ()) -> int:
    """Sum of Milnor numbers at the isolated singular points on P^n."""
    return sum(c.new for c in isolated_milnor_by_chart(F, curves))
