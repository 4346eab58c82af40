"""Ready-made foliations with known singularity counts.

``line_example`` builds a degree-``k`` field on P^n singular along the line
``x_1 = ... = x_{n-1} = 0`` and special along it: the first ``n-1``
components are forms of degree ``k`` in ``z_1..z_{n-1}`` and the last one is
``sum_{|a|=k-1} z^a h_a(z)`` with affine-linear ``h_a``.  Coefficients come
from a seeded generator so every run sees the same field.

``moving_family`` is a degree-2 family on P^3 whose singular set is the line
``x_1 = x_2 = 0`` plus three points that do not move with ``t``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .foliation import AffineFoliation, ProjectiveCurve, ProjectiveFoliation
from .poly import MultiPoly, PolyRing, Scalar, to_q


def _monomials(nvars: int, degree: int):
    for e in itertools.product(range(degree + 1), repeat=nvars):
        if sum(e) == degree:
            yield e


def line_example(n: int, k: int, seed: int = 7, coefficient_range: int = 3) -> AffineFoliation:
    if n < 3 or k < 1:
        raise ValueError("need n >= 3 and k >= 1")
    rng = random.Random(seed * 1000 + 10 * n + k)
    ring = PolyRing(tuple(f"z{i}" for i in range(1, n + 1)))

    def coeff(nonzero: bool = False) -> int:
        while True:
            c = rng.randint(-coefficient_range, coefficient_range)
            if c or not nonzero:
                return c

    def mono(e: Sequence[int]) -> MultiPoly:
        return MultiPoly.monomial(ring, tuple(e) + (0,) * (n - len(e)))

    comps = []
    for _ in range(n - 1):
        comps.append(sum((mono(e) * coeff() for e in _monomials(n - 1, k)), ring.zero()))
    last = ring.zero()
    for e in _monomials(n - 1, k - 1):
        h = ring.const(coeff(True)) + sum((ring.var(v) * coeff(True) for v in ring.names), ring.zero())
        last = last + mono(e) * h
    comps.append(last)
    return AffineFoliation(ring, tuple(comps), k)


def line_example_curve(F: ProjectiveFoliation) -> ProjectiveCurve:
    """The line ``x_1 = ... = x_{n-1} = 0``."""
    return ProjectiveCurve.coordinate_line(F.hring, range(1, F.n))


@dataclass(frozen=True)
class FamilyCoefficients:
    """Coefficients ``a, b`` of the planar part and ``alpha, beta`` of the last component."""

    a: Tuple[Scalar, Scalar, Scalar] = (1, 1, -1)
    b: Tuple[Scalar, Scalar, Scalar] = (2, 0, -1)
    alpha: Tuple[Scalar, Scalar, Scalar, Scalar] = (1, 1, 0, 0)
    beta: Tuple[Scalar, Scalar, Scalar] = (1, 1, 0)  # beta_0, beta_2, beta_3


def moving_family(t: Scalar, coeffs: FamilyCoefficients = FamilyCoefficients()) -> AffineFoliation:
    ring = PolyRing(("z1", "z2", "z3"))
    z1, z2, z3 = ring.gens()
    a = [to_q(x) for x in coeffs.a]
    b = [to_q(x) for x in coeffs.b]
    al = [to_q(x) for x in coeffs.alpha]
    b0, b2, b3 = (to_q(x) for x in coeffs.beta)
    tq = to_q(t)
    f1 = z1 * z1 * a[0] + z1 * z2 * a[1] + z2 * z2 * a[2]
    f2 = z1 * z1 * b[0] + z1 * z2 * b[1] + z2 * z2 * b[2]
    f3 = z1 * (ring.const(al[0]) + z1 * al[1] + z2 * (al[2] - tq) + z3 * al[3]) + z2 * (
        ring.const(b0) + z1 * tq + z2 * b2 + z3 * b3
    )
    return AffineFoliation(ring, (f1, f2, f3), 2)


def _rational_roots(coeffs: Sequence[Fraction]) -> List[Fraction]:
    """Rational roots, with multiplicity, of ``sum coeffs[i] x^i``."""
    from math import lcm

    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    roots = []
    while len(ints) > 1 and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]

    def divisors(m: int):
        m = abs(m)
        return [d for d in range(1, m + 1) if m % d == 0]

    changed = True
    while changed and len(ints) > 1:
        changed = False
        for p in divisors(ints[0]):
            for q in divisors(ints[-1]):
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                        roots.append(r)
                        # synthetic division by (x - r)
                        quot = [Fraction(0)] * (len(ints) - 1)
                        acc = Fraction(0)
                        for i in range(len(ints) - 1, 0, -1):
                            acc = acc * r + ints[i]
                            quot[i - 1] = acc
                        qden = lcm(*(c.denominator for c in quot))
                        ints = [int(c * qden) for c in quot]
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return sorted(roots)


def moving_family_points(coeffs: FamilyCoefficients = FamilyCoefficients()) -> List[Tuple[Fraction, ...]]:
    """Homogeneous coordinates ``[0 : u : lambda u : 1]`` of the isolated points.

    ``lambda`` runs over the roots of ``b(lambda) - lambda a(lambda)``; all
    three must be rational.
    """
    a = [Fraction(str(to_q(x))) for x in coeffs.a]
    b = [Fraction(str(to_q(x))) for x in coeffs.b]
    al = [Fraction(str(to_q(x))) for x in coeffs.alpha]
    b0, b2, b3 = (Fraction(str(to_q(x))) for x in coeffs.beta)
    cubic = [b[0], b[1] - a[0], b[2] - a[1], -a[2]]
    lams = _rational_roots(cubic)
    if len(lams) != 3:
        raise ValueError("the coefficients do not give three rational roots")
    pts = []
    for lam in lams:
        num = a[0] + a[1] * lam + a[2] * lam ** 2 - al[3] - b3 * lam
        den = al[1] + al[2] * lam + b2 * lam ** 2
        if den == 0:
            raise ValueError(f"root {lam} puts a point on the curve or at infinity")
        u = num / den
        pts.append((Fraction(0), u, lam * u, Fraction(1)))
    return pts


def point_ideal_generators(point: Sequence[Fraction], F: ProjectiveFoliation, chart: int) -> List[MultiPoly]:
    """Maximal ideal of a projective point inside a chart (point must lie in it)."""
    if point[chart] == 0:
        raise ValueError("point is not in this chart")
    ring = F.chart_ring(chart)
    gens = []
    for i, x in enumerate(point):
        if i == chart:
            continue
        v = ring.var(F.chart_var(chart, i))
        gens.append(v - ring.const(to_q(str(x / point[chart]))))
    return gens
