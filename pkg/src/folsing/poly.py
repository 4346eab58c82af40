"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to nonzero rationals.  Rationals
are ``gmpy2.mpq`` values; every public constructor accepts ``int``,
``fractions.Fraction``, ``mpq`` or a ``"p/q"`` string and converts.

Terms are printed and iterated in graded reverse-lexicographic order,
largest monomial first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from gmpy2 import mpq

Q = mpq
Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction, "mpq", str]

INF = math.inf


def to_q(value: Scalar) -> mpq:
    """Convert an int, Fraction, mpq or ``"p/q"`` string to an exact rational."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            den_i = int(den)
            if den_i == 0:
                raise ZeroDivisionError(f"zero denominator in {value!r}")
            return mpq(int(num), den_i)
        return mpq(int(text))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    return mpq(value)


def q_str(value: mpq) -> str:
    """Canonical string for a rational: ``"p/q"`` or ``"p"``."""
    return str(mpq(value))


def grevlex_key(exp: Exponent) -> tuple:
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(exp),) + tuple(-e for e in reversed(exp))


@dataclass(frozen=True)
class PolyRing:
    """An ordered tuple of distinct variable names."""

    names: Tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if not names:
            raise ValueError("a ring needs at least one variable")
        object.__setattr__(self, "names", names)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r} (ring has {', '.join(self.names)})") from None

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def gens(self) -> Tuple["MultiPoly", ...]:
        return tuple(MultiPoly.var(self, v) for v in self.names)

    def var(self, name: str) -> "MultiPoly":
        return MultiPoly.var(self, name)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return MultiPoly.const(self, 1)

    def const(self, c: Scalar) -> "MultiPoly":
        return MultiPoly.const(self, c)

    def parse(self, text: str) -> "MultiPoly":
        from .parser import parse_poly

        return parse_poly(text, self)

    def extend(self, *names: str) -> "PolyRing":
        return PolyRing(self.names + tuple(names))

    def fresh_name(self, stem: str = "t") -> str:
        name, i = stem, 0
        while name in self.names:
            i += 1
            name = f"{stem}{i}"
        return name

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"


class MultiPoly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Scalar] | None = None, *, _clean: bool = False):
        self.ring = ring
        if _clean:
            self._terms: Dict[Exponent, mpq] = terms  # type: ignore[assignment]
        else:
            out: Dict[Exponent, mpq] = {}
            n = ring.arity
            for exp, c in (terms or {}).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n or min(exp, default=0) < 0:
                    raise ValueError(f"bad exponent {exp} for {ring}")
                c = to_q(c)
                if c:
                    out[exp] = out.get(exp, mpq(0)) + c
                    if not out[exp]:
                        del out[exp]
            self._terms = out
        self._hash = None

    # construction ----------------------------------------------------

    @classmethod
    def const(cls, ring: PolyRing, c: Scalar) -> "MultiPoly":
        c = to_q(c)
        return cls(ring, {(0,) * ring.arity: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, ring: PolyRing, name: str) -> "MultiPoly":
        i = ring.index(name)
        exp = tuple(1 if j == i else 0 for j in range(ring.arity))
        return cls(ring, {exp: mpq(1)}, _clean=True)

    @classmethod
    def monomial(cls, ring: PolyRing, exp: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls(ring, {tuple(exp): c})

    # basic queries -----------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, mpq]:
        """Terms in canonical (graded reverse lex, descending) order."""
        return {e: self._terms[e] for e in sorted(self._terms, key=grevlex_key, reverse=True)}

    def items(self) -> Iterator[Tuple[Exponent, mpq]]:
        return iter(self.terms.items())

    def raw(self) -> Dict[Exponent, mpq]:
        """The underlying term map (unordered; do not mutate)."""
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.ring.arity}

    def constant_term(self) -> mpq:
        return self._terms.get((0,) * self.ring.arity, mpq(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = [False] * self.ring.arity
        for e in self._terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring.names, used) if u)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d}, _clean=True)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # arithmetic ----------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.ring, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {e: -c for e, c in self._terms.items()}, _clean=True)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "MultiPoly":
        c = to_q(c)
        if not c:
            return MultiPoly(self.ring, {}, _clean=True)
        return MultiPoly(self.ring, {e: v * c for e, v in self._terms.items()}, _clean=True)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        if not self._terms or not other._terms:
            return MultiPoly(self.ring, {}, _clean=True)
        out: Dict[Exponent, mpq] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return MultiPoly(self.ring, {e: c for e, c in out.items() if c}, _clean=True)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants; use divide_exact")
            other = other.constant_term()
        c = to_q(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == MultiPoly.const(self.ring, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitution ------------------------------------------

    def diff(self, name: str) -> "MultiPoly":
        i = self.ring.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MultiPoly(self.ring, out, _clean=True)

    def substitute(self, assignment: Mapping[str, "MultiPoly | Scalar"], target: PolyRing | None = None) -> "MultiPoly":
        """Evaluate at polynomial images of the variables, fully expanded.

        Every variable of the ring must have an image.  Constant images may be
        given as plain numbers; ``target`` is then required unless some image
        is a polynomial.
        """
        missing = [v for v in self.ring.names if v not in assignment]
        if missing:
            raise KeyError(f"no image for variable(s) {', '.join(missing)}")
        if target is None:
            rings = {img.ring for img in assignment.values() if isinstance(img, MultiPoly)}
            if len(rings) != 1:
                raise ValueError("cannot infer target ring; pass target=")
            target = rings.pop()
        images = []
        for v in self.ring.names:
            img = assignment[v]
            if not isinstance(img, MultiPoly):
                img = MultiPoly.const(target, img)
            elif img.ring != target:
                raise ValueError(f"image of {v} lives in {img.ring}, expected {target}")
            images.append(img)
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(target, 1), 1: img} for img in images]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        acc: Dict[Exponent, mpq] = {}
        for e, c in self._terms.items():
            term = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                v = acc.get(te)
                acc[te] = tc if v is None else v + tc
        return MultiPoly(target, {e: c for e, c in acc.items() if c}, _clean=True)

    def evaluate(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Partial evaluation: fix some variables to constants, same ring."""
        idx = {self.ring.index(v): to_q(x) for v, x in values.items()}
        out: Dict[Exponent, mpq] = {}
        for e, c in self._terms.items():
            coeff = c
            for i, x in idx.items():
                if e[i]:
                    coeff = coeff * x ** e[i]
            if not coeff:
                continue
            ne = tuple(0 if i in idx else k for i, k in enumerate(e))
            v = out.get(ne)
            out[ne] = coeff if v is None else v + coeff
        return MultiPoly(self.ring, {e: c for e, c in out.items() if c}, _clean=True)

    def change_ring(self, target: PolyRing, rename: Mapping[str, str] | None = None) -> "MultiPoly":
        """Move into another ring by variable name (optionally renamed).

        Variables that do not exist in ``target`` must not occur.
        """
        rename = dict(rename or {})
        slot = []
        for v in self.ring.names:
            w = rename.get(v, v)
            slot.append(target.names.index(w) if w in target.names else None)
        out: Dict[Exponent, mpq] = {}
        for e, c in self._terms.items():
            ne = [0] * target.arity
            for i, k in enumerate(e):
                if k:
                    if slot[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} has no place in {target}")
                    ne[slot[i]] += k
            ne_t = tuple(ne)
            v = out.get(ne_t)
            out[ne_t] = c if v is None else v + c
        return MultiPoly(target, {e: c for e, c in out.items() if c}, _clean=True)

    def divide_by_monomial(self, exp: Sequence[int]) -> "MultiPoly":
        exp = tuple(exp)
        out = {}
        for e, c in self._terms.items():
            ne = tuple(a - b for a, b in zip(e, exp))
            if min(ne, default=0) < 0:
                raise ArithmeticError(f"{self} is not divisible by monomial {exp}")
            out[ne] = c
        return MultiPoly(self.ring, out, _clean=True)

    def var_valuation(self, name: str) -> float:
        """Largest power of ``name`` dividing the polynomial (inf for zero)."""
        i = self.ring.index(name)
        return min((e[i] for e in self._terms), default=INF)

    def leading(self) -> Tuple[Exponent, mpq]:
        """Leading term in graded reverse lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def monic(self) -> "MultiPoly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading()[1])

    # printing ------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r})"


def format_poly(p: MultiPoly) -> str:
    """Canonical text: terms in grevlex order with explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.items()):
        mono = "*".join(
            f"{v}^{k}" if k > 1 else v for v, k in zip(p.ring.names, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{q_str(a)}*{mono}"
        else:
            body = q_str(a)
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact quotient ``p / q``; raises ``ArithmeticError`` if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check(q)
    lq, cq = q.leading()
    rem = dict(p.raw())
    quot: Dict[Exponent, mpq] = {}
    qterms = q.raw()
    while rem:
        e = max(rem, key=grevlex_key)
        c = rem[e]
        shift = tuple(a - b for a, b in zip(e, lq))
        if min(shift) < 0:
            raise ArithmeticError(f"{q} does not divide {p}")
        f = c / cq
        quot[shift] = f
        for qe, qc in qterms.items():
            ne = tuple(a + b for a, b in zip(qe, shift))
            v = rem.get(ne, mpq(0)) - f * qc
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return MultiPoly(p.ring, quot, _clean=True)


def order_along_axis(p: MultiPoly, axis_vars: Iterable[str]) -> float:
    """Vanishing order along the common zero set of ``axis_vars``.

    This is the minimum over terms of the total exponent in ``axis_vars``;
    the zero polynomial has order ``math.inf``.
    """
    idx = [p.ring.index(v) for v in axis_vars]
    if len(idx) >= p.ring.arity:
        raise ValueError("axis variables must be a proper subset of the ring variables")
    return min((sum(e[i] for i in idx) for e in p.raw()), default=INF)


@dataclass(frozen=True)
class AxisLayer:
    """Leading layer of a polynomial along a coordinate subspace.

    ``layer`` maps exponent tuples over ``axis_vars`` (all of total degree
    ``order``) to cofactors free of the axis variables; ``remainder`` holds
    the terms of strictly higher axis order.
    """

    axis_vars: Tuple[str, ...]
    order: int
    layer: Dict[Exponent, MultiPoly]
    remainder: MultiPoly

    def reassemble(self) -> MultiPoly:
        ring = self.remainder.ring
        idx = [ring.index(v) for v in self.axis_vars]
        total = self.remainder
        for a, cof in self.layer.items():
            exp = [0] * ring.arity
            for i, k in zip(idx, a):
                exp[i] = k
            total = total + cof * MultiPoly.monomial(ring, exp)
        return total


def axis_decompose(p: MultiPoly, axis_vars: Sequence[str]) -> AxisLayer:
    """Split ``p = sum_{|a|=m} z^a p_a + (higher axis order)``."""
    if p.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    axis_vars = tuple(axis_vars)
    idx = [p.ring.index(v) for v in axis_vars]
    m = int(order_along_axis(p, axis_vars))
    layer: Dict[Exponent, Dict[Exponent, mpq]] = {}
    rest: Dict[Exponent, mpq] = {}
    for e, c in p.raw().items():
        a = tuple(e[i] for i in idx)
        if sum(a) == m:
            cof = tuple(0 if i in idx else k for i, k in enumerate(e))
            layer.setdefault(a, {})[cof] = c
        else:
            rest[e] = c
    ordered = sorted(layer, key=lambda a: grevlex_key(a), reverse=True)
    return AxisLayer(
        axis_vars,
        m,
        {a: MultiPoly(p.ring, layer[a], _clean=True) for a in ordered},
        MultiPoly(p.ring, rest, _clean=True),
    )
