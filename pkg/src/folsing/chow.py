"""Intersection numbers on the blowup of P^n along a smooth curve.

Notation: ``C`` is a smooth curve of degree ``d`` and genus ``g``,
``pi: Pt -> P^n`` the blowup, ``E`` the exceptional divisor with projection
``rho: E -> C`` and ``zeta = c_1(O(-1))`` on ``E``.  Classes pulled back from
``C`` are tracked by a single flag: ``"N"`` for ``c_1`` of the normal bundle,
``"K"`` for ``c_1(T_C)`` and ``"H"`` for the hyperplane class restricted to
``C``.  Any product of two such classes vanishes since ``C`` is a curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Tuple

from gmpy2 import mpq

from .poly import Scalar, q_str, to_q

CURVE_CLASSES = ("N", "K", "H")


class DegreeError(ValueError):
    """Integrand of the wrong codimension."""


def _binom(p: int, q: int) -> int:
    if p < 0 or q < 0 or q > p:
        return 0
    return comb(p, q)


@dataclass(frozen=True)
class BlowupGeometry:
    n: int
    d: int
    g: int
    k: int
    ell: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if self.d < 1:
            raise ValueError("curve degree must be at least 1")
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.k < 0 or self.ell < 0:
            raise ValueError("k and ell must be non-negative")

    def curve_degree(self, cls: str) -> int:
        """Degree on ``C`` of a pulled-back curve class."""
        if cls == "N":
            return (self.n + 1) * self.d - 2 + 2 * self.g
        if cls == "K":
            return 2 - 2 * self.g
        if cls == "H":
            return self.d
        raise KeyError(cls)


class _Graded:
    """Sparse formal sum of monomials with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[tuple, Scalar] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            self._validate(m)
            c = to_q(c)
            if c:
                clean[m] = clean.get(m, mpq(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @staticmethod
    def _validate(m: tuple) -> None:
        pass

    @staticmethod
    def _mul_mono(a: tuple, b: tuple) -> Optional[tuple]:
        raise NotImplementedError

    @staticmethod
    def _deg(m: tuple) -> int:
        raise NotImplementedError

    @classmethod
    def one(cls):
        raise NotImplementedError

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        return type(self).one() * to_q(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, mpq(0)) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, type(self)):
            c = to_q(other)
            return type(self)({m: v * c for m, v in self.terms.items()})
        out: Dict[tuple, mpq] = {}
        for a, u in self.terms.items():
            for b, v in other.terms.items():
                m = self._mul_mono(a, b)
                if m is not None:
                    out[m] = out.get(m, mpq(0)) + u * v
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = type(self).one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, mpq)) or not isinstance(other, _Graded):
            other = self._coerce(other)
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def degrees(self) -> set:
        return {self._deg(m) for m in self.terms}

    def is_zero(self) -> bool:
        return not self.terms


class EMixedClass(_Graded):
    """Classes on ``E``: monomials ``zeta^a * beta`` with ``beta`` a curve flag or None."""

    @staticmethod
    def _validate(m):
        a, cls = m
        if a < 0 or (cls is not None and cls not in CURVE_CLASSES):
            raise ValueError(f"bad monomial {m}")

    @staticmethod
    def _mul_mono(a, b):
        if a[1] and b[1]:
            return None
        return (a[0] + b[0], a[1] or b[1])

    @staticmethod
    def _deg(m):
        return m[0] + (1 if m[1] else 0)

    @classmethod
    def one(cls):
        return cls({(0, None): 1})

    @classmethod
    def zeta(cls, power: int = 1):
        return cls({(power, None): 1})

    @classmethod
    def curve(cls, name: str):
        return cls({(0, name): 1})

    def __repr__(self) -> str:
        parts = []
        for (a, cls), c in sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1] or "")):
            mono = "*".join(x for x in (f"zeta^{a}" if a > 1 else ("zeta" if a else ""), cls or "") if x)
            parts.append(f"{q_str(c)}*{mono}" if mono else q_str(c))
        return "EMixedClass(" + (" + ".join(parts) or "0") + ")"


class PtMixedClass(_Graded):
    """Classes on the blowup: monomials ``H^a E^b beta`` (``beta`` needs ``b >= 1``)."""

    @staticmethod
    def _validate(m):
        a, b, cls = m
        if a < 0 or b < 0:
            raise ValueError(f"bad monomial {m}")
        if cls is not None and (cls not in CURVE_CLASSES or b < 1):
            raise ValueError(f"curve class {cls} must come with a positive power of E")

    @staticmethod
    def _mul_mono(x, y):
        if x[2] and y[2]:
            return None
        return (x[0] + y[0], x[1] + y[1], x[2] or y[2])

    @staticmethod
    def _deg(m):
        return m[0] + m[1] + (1 if m[2] else 0)

    @classmethod
    def one(cls):
        return cls({(0, 0, None): 1})

    @classmethod
    def H(cls, power: int = 1):
        return cls({(power, 0, None): 1})

    @classmethod
    def E(cls, power: int = 1, curve: str | None = None):
        return cls({(0, power, curve): 1})

    def __repr__(self) -> str:
        parts = []
        for (a, b, cls), c in sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1], t[0][2] or "")):
            bits = [f"H^{a}" if a > 1 else ("H" if a else ""), f"E^{b}" if b > 1 else ("E" if b else ""), cls or ""]
            mono = "*".join(x for x in bits if x)
            parts.append(f"{q_str(c)}*{mono}" if mono else q_str(c))
        return "PtMixedClass(" + (" + ".join(parts) or "0") + ")"


def integrate_E(c: EMixedClass, geom: BlowupGeometry) -> mpq:
    """Degree of a top-dimensional class on ``E``."""
    n = geom.n
    bad = c.degrees() - {n - 1}
    if bad:
        raise DegreeError(f"integrand on E must have degree {n - 1}, found {sorted(bad)}")
    sign = -1 if n % 2 else 1
    total = mpq(0)
    for (a, cls), v in c.terms.items():
        if cls is None:
            total += v * sign * geom.curve_degree("N")
        else:
            total += v * sign * geom.curve_degree(cls)
    return total


def integrate_Pt(c: PtMixedClass, geom: BlowupGeometry) -> mpq:
    """Degree of a top-dimensional class on the blowup.

    ``H^n`` is the point class.  A monomial with ``E^b`` (``b >= 1``) is
    pushed to ``E`` as ``zeta^{b-1}`` times the restriction of the rest, with
    ``H`` restricting to the curve class ``"H"`` (so ``H^2`` restricts to 0).
    """
    n = geom.n
    bad = c.degrees() - {n}
    if bad:
        raise DegreeError(f"integrand on the blowup must have degree {n}, found {sorted(bad)}")
    total = mpq(0)
    for (a, b, cls), v in c.terms.items():
        if b == 0:
            total += v  # a == n
            continue
        if a >= 2 or (a == 1 and cls):
            continue
        flag = "H" if a == 1 else cls
        total += v * integrate_E(EMixedClass({(b - 1, flag): 1}), geom)
    return total


def chern_blowup(i: int, geom: BlowupGeometry) -> PtMixedClass:
    """``c_i`` of the tangent bundle of the blowup."""
    n = geom.n
    if not 0 <= i <= n:
        raise ValueError(f"Chern class index must be in 0..{n}")
    if i == 0:
        return PtMixedClass.one()
    out = PtMixedClass.H(i) * _binom(n + 1, i)
    if i == 1:
        return out - PtMixedClass.E() * (n - 2)
    # only c_0 and c_1 of the normal bundle survive on a curve
    for j in (0, 1):
        coef = (_binom(n - 1 - j, i - 1 - j) - _binom(n - 1 - j, i - j)) * (-1) ** (i - 1 - j)
        if coef and i - j >= 1:
            out = out + PtMixedClass.E(i - j, "N" if j else None) * coef
    coef = (_binom(n - 1, i - 2) - _binom(n - 1, i - 1)) * (-1) ** (i - 2)
    if coef:
        out = out + PtMixedClass.E(i - 1, "K") * coef
    return out


def chern_E(i: int, geom: BlowupGeometry) -> EMixedClass:
    """``c_i`` of the tangent bundle of ``E``, restricted classes included."""
    n = geom.n
    if not 0 <= i <= n - 1:
        raise ValueError(f"Chern class index must be in 0..{n - 1}")
    if i == 0:
        return EMixedClass.one()
    # pulled-back classes of P^n of degree >= 2 vanish on E
    out = EMixedClass({(i - 1, "H"): (-1) ** (i - 1) * (n + 1), (i, None): (-1) ** i * _binom(n - 1, i)})
    if i >= 2:
        out = out + EMixedClass({
            (i - 1, "N"): (-1) ** i * (1 - _binom(n - 2, i - 1)),
            (i - 1, "K"): (-1) ** i * (1 - _binom(n - 1, i - 1)),
        })
    return out


def _as_int(x: mpq, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {q_str(x)} is not an integer")
    return int(x.numerator)


def cotangent_line_E(geom: BlowupGeometry) -> EMixedClass:
    """``c_1`` of the dual tangent line bundle of the blown-up foliation, on ``E``."""
    return EMixedClass({(0, "H"): geom.k - 1, (1, None): -geom.ell})


def cotangent_line_Pt(geom: BlowupGeometry) -> PtMixedClass:
    return PtMixedClass({(1, 0, None): geom.k - 1, (0, 1, None): -geom.ell})


def baum_bott_E(geom: BlowupGeometry) -> int:
    """Number of singularities of the induced foliation on ``E`` with multiplicity."""
    L = cotangent_line_E(geom)
    n = geom.n
    integrand = sum((chern_E(i, geom) * L ** (n - 1 - i) for i in range(n)), EMixedClass())
    return _as_int(integrate_E(integrand, geom), "integral over E")


def baum_bott_Pt(geom: BlowupGeometry) -> int:
    """Number of singularities of the blown-up foliation with multiplicity."""
    L = cotangent_line_Pt(geom)
    n = geom.n
    integrand = sum((chern_blowup(i, geom) * L ** (n - i) for i in range(n + 1)), PtMixedClass())
    return _as_int(integrate_Pt(integrand, geom), "integral over the blowup")


def euler_characteristic_Pt(geom: BlowupGeometry) -> int:
    return _as_int(integrate_Pt(chern_blowup(geom.n, geom), geom), "Euler characteristic")


def euler_characteristic_E(geom: BlowupGeometry) -> int:
    return _as_int(integrate_E(chern_E(geom.n - 1, geom), geom), "Euler characteristic")
