"""Buchberger's algorithm and the ideal operations built on it.

Everything is exact over the rationals.  Saturation and intersection use a
fresh auxiliary variable and an elimination order; colength counts standard
monomials under the leading-term staircase.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .poly import Exponent, MultiPoly, PolyRing

_Raw = Dict[Exponent, mpq]


class DimensionError(ValueError):
    """Raised when a zero-dimensional ideal was required but not given."""

    def __init__(self, message: str, variable: str | None = None):
        self.variable = variable
        super().__init__(message)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``ring``.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"block"``.  A block order
    compares the ``front`` variables first (by degrevlex), then the rest; it
    eliminates exactly the front variables.
    """

    kind: str
    ring: PolyRing
    front: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block":
            if not self.front:
                raise ValueError("block order needs at least one front variable")
            for v in self.front:
                self.ring.index(v)
        object.__setattr__(self, "front", tuple(self.front))

    @classmethod
    def degrevlex(cls, ring: PolyRing) -> "MonomialOrder":
        return cls("degrevlex", ring)

    @classmethod
    def lex(cls, ring: PolyRing) -> "MonomialOrder":
        return cls("lex", ring)

    @classmethod
    def block(cls, ring: PolyRing, front: Iterable[str]) -> "MonomialOrder":
        front_set = set(front)
        return cls("block", ring, tuple(v for v in ring.names if v in front_set))

    def key_function(self):
        """Return ``key(exp)``; a larger key means a larger monomial."""
        if self.kind == "lex":
            return tuple
        if self.kind == "degrevlex":
            def key(e):
                return (sum(e),) + tuple(-x for x in reversed(e))
            return key
        fi = [self.ring.index(v) for v in self.front]
        ri = [i for i in range(self.ring.arity) if i not in fi]

        def block_key(e):
            f = [e[i] for i in fi]
            r = [e[i] for i in ri]
            return (sum(f),) + tuple(-x for x in reversed(f)) + (sum(r),) + tuple(-x for x in reversed(r))
        return block_key


# ---------------------------------------------------------------------------
# raw polynomial kernels (dict exponent -> mpq)
# ---------------------------------------------------------------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("poly", "lm", "tail")

    def __init__(self, poly: _Raw, lm: Exponent):
        self.poly = poly
        self.lm = lm
        self.tail = [(e, c) for e, c in poly.items() if e != lm]


def _monic(p: _Raw, lm: Exponent) -> _Raw:
    c = p[lm]
    if c == 1:
        return p
    inv = 1 / c
    return {e: v * inv for e, v in p.items()}


def _reduce(p: _Raw, basis: Sequence[_Elem], key, negkey) -> _Raw:
    """Full normal form of ``p`` against monic elements ``basis``."""
    if not p or not basis:
        return dict(p)
    p = dict(p)
    rem: _Raw = {}
    heap = [(negkey(e), e) for e in p]
    heapq.heapify(heap)
    lms = [(g.lm, g) for g in basis]
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        div = None
        for lm, g in lms:
            if _divides(lm, e):
                div = g
                break
        if div is None:
            rem[e] = c
            continue
        shift = tuple(x - y for x, y in zip(e, div.lm))
        for ge, gc in div.tail:
            ne = tuple(x + y for x, y in zip(ge, shift))
            old = p.get(ne)
            if old is None:
                p[ne] = -c * gc
                heapq.heappush(heap, (negkey(ne), ne))
            else:
                v = old - c * gc
                if v:
                    p[ne] = v
                else:
                    del p[ne]
    return rem


def _spoly(f: _Elem, g: _Elem) -> _Raw:
    lcm = _lcm(f.lm, g.lm)
    sf = tuple(x - y for x, y in zip(lcm, f.lm))
    sg = tuple(x - y for x, y in zip(lcm, g.lm))
    out: _Raw = {}
    for e, c in f.tail:
        out[tuple(x + y for x, y in zip(e, sf))] = c
    for e, c in g.tail:
        ne = tuple(x + y for x, y in zip(e, sg))
        v = out.get(ne)
        if v is None:
            out[ne] = -c
        else:
            v = v - c
            if v:
                out[ne] = v
            else:
                del out[ne]
    return out


def _buchberger_raw(polys: Sequence[_Raw], order: MonomialOrder) -> List[_Raw]:
    key = order.key_function()

    def negkey(e):
        return tuple(-x for x in key(e))

    basis: List[_Elem] = []
    pairs: list = []
    pending: set = set()
    counter = 0

    def add(p: _Raw):
        nonlocal counter
        lm = max(p, key=key)
        elem = _Elem(_monic(p, lm), lm)
        k = len(basis)
        basis.append(elem)
        for i in range(k):
            lcm = _lcm(basis[i].lm, lm)
            heapq.heappush(pairs, (sum(lcm), i, k))
            pending.add((i, k))

    for p in polys:
        r = _reduce(p, basis, key, negkey)
        if r:
            add(r)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        fi, fj = basis[i], basis[j]
        lcm = _lcm(fi.lm, fj.lm)
        # product criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        # chain criterion
        skip = False
        for k, fk in enumerate(basis):
            if k == i or k == j:
                continue
            if _divides(fk.lm, lcm):
                a, b = (i, k) if i < k else (k, i)
                c, d = (j, k) if j < k else (k, j)
                if (a, b) not in pending and (c, d) not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(fi, fj)
        r = _reduce(s, basis, key, negkey)
        if r:
            add(r)

    # minimalize then interreduce
    elems = sorted(basis, key=lambda g: key(g.lm))
    minimal: List[_Elem] = []
    for g in elems:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced: List[_Raw] = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _reduce({e: c for e, c in g.tail}, others, key, negkey)
        tail[g.lm] = mpq(1)
        reduced.append(tail)
    reduced.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """An ideal of ``ring`` given by generators (zero generators are dropped)."""

    ring: PolyRing
    generators: Tuple[MultiPoly, ...]
    _gb_cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __init__(self, ring: PolyRing, generators: Iterable[MultiPoly]):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "_gb_cache", {})

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    def groebner(self, order: MonomialOrder | None = None) -> "GroebnerBasis":
        order = order or MonomialOrder.degrevlex(self.ring)
        gb = self._gb_cache.get(order)
        if gb is None:
            gb = buchberger(self, order)
            self._gb_cache[order] = gb
        return gb

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return Ideal(self.ring, self.generators + other.generators)

    def contains(self, p: MultiPoly) -> bool:
        return self.groebner().is_member(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def same_as(self, other: "Ideal") -> bool:
        """Ideal equality, decided by comparing reduced degrevlex bases."""
        return self.groebner().basis == other.groebner().basis

    def change_ring(self, target: PolyRing, rename=None) -> "Ideal":
        return Ideal(target, [g.change_ring(target, rename) for g in self.generators])

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis: monic, interreduced, sorted by leading monomial."""

    order: MonomialOrder
    basis: Tuple[MultiPoly, ...]

    @property
    def ring(self) -> PolyRing:
        return self.order.ring

    def leading_monomials(self) -> List[Exponent]:
        key = self.order.key_function()
        return [max(g.raw(), key=key) for g in self.basis]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        if p.ring != self.ring:
            raise ValueError(f"ring mismatch: {p.ring} vs {self.ring}")
        key = self.order.key_function()

        def negkey(e):
            return tuple(-x for x in key(e))

        elems = [_Elem(dict(g.raw()), lm) for g, lm in zip(self.basis, self.leading_monomials())]
        return MultiPoly(self.ring, _reduce(p.raw(), elems, key, negkey), _clean=True)

    def is_member(self, p: MultiPoly) -> bool:
        return self.normal_form(p).is_zero()

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.basis)

    def is_zero_dimensional(self) -> bool:
        return self._escaping_variable() is None

    def _escaping_variable(self) -> Optional[str]:
        if not self.basis:
            return self.ring.names[0]
        lms = self.leading_monomials()
        for i, v in enumerate(self.ring.names):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                if self.is_unit():
                    return None
                return v
        return None

    def standard_monomials(self) -> List[Exponent]:
        """Monomials outside the staircase (requires zero-dimensionality)."""
        v = self._escaping_variable()
        if v is not None:
            raise DimensionError(
                f"ideal is not zero-dimensional: no pure power of {v} among leading monomials",
                variable=v,
            )
        if self.is_unit():
            return []
        lms = self.leading_monomials()
        n = self.ring.arity
        out: List[Exponent] = []

        def walk(prefix: List[int]):
            i = len(prefix)
            if i == n:
                out.append(tuple(prefix))
                return
            k = 0
            while True:
                cand = prefix + [k]
                # the staircase is an order ideal: once divisible, stop
                if any(_divides(lm[: i + 1], tuple(cand)) and all(x == 0 for x in lm[i + 1:]) for lm in lms):
                    break
                walk(cand)
                k += 1

        walk([])
        return out

    def colength(self) -> int:
        """Vector-space dimension of the quotient ring."""
        return len(self.standard_monomials())


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def buchberger(ideal: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` for ``order`` (default degrevlex)."""
    order = order or MonomialOrder.degrevlex(ideal.ring)
    if order.ring != ideal.ring:
        raise ValueError("order and ideal live in different rings")
    raws = _buchberger_raw([dict(g.raw()) for g in ideal.generators], order)
    return GroebnerBasis(order, tuple(MultiPoly(ideal.ring, r, _clean=True) for r in raws))


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(p)


def is_member(p: MultiPoly, gb: GroebnerBasis) -> bool:
    return gb.is_member(p)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    return gb.is_zero_dimensional()


def colength(gb: GroebnerBasis) -> int:
    return gb.colength()


def eliminate(ideal: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """Generators of the elimination ideal, in the same ring.

    Uses a block order with ``drop_vars`` in front; the basis elements whose
    leading monomial avoids the front block generate the intersection with
    the subring.
    """
    drop = [v for v in ideal.ring.names if v in set(drop_vars)]
    if not drop:
        return Ideal(ideal.ring, ideal.groebner().basis)
    if len(drop) == ideal.ring.arity:
        raise ValueError("cannot eliminate every variable")
    order = MonomialOrder.block(ideal.ring, drop)
    gb = ideal.groebner(order)
    di = [ideal.ring.index(v) for v in drop]
    kept = [g for g in gb.basis if all(e[i] == 0 for e in g.raw() for i in di)]
    return Ideal(ideal.ring, kept)


def _with_fresh(ring: PolyRing) -> Tuple[PolyRing, str]:
    t = ring.fresh_name("t")
    return PolyRing((t,) + ring.names), t


def _drop_var(ideal: Ideal, ring: PolyRing) -> Ideal:
    return Ideal(ring, [g.change_ring(ring) for g in ideal.generators])


def saturate_single(ideal: Ideal, f: MultiPoly) -> Ideal:
    """``I : f^oo`` via ``I + (1 - t f)`` and elimination of ``t``."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.is_constant():
        return ideal
    ring = ideal.ring
    big, t = _with_fresh(ring)
    tv = big.var(t)
    gens = [g.change_ring(big) for g in ideal.generators]
    gens.append(big.one() - tv * f.change_ring(big))
    elim = eliminate(Ideal(big, gens), [t])
    return _drop_var(elim, ring)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """``I cap J`` via ``t I + (1 - t) J`` and elimination of ``t``."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    ring = a.ring
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    big, t = _with_fresh(ring)
    tv = big.var(t)
    gens = [tv * g.change_ring(big) for g in a.generators]
    gens += [(big.one() - tv) * g.change_ring(big) for g in b.generators]
    elim = eliminate(Ideal(big, gens), [t])
    return _drop_var(elim, ring)


def saturate(ideal: Ideal, by: Ideal) -> Ideal:
    """``I : J^oo`` as the intersection of single saturations by J's generators."""
    if not by.generators:
        raise ValueError("saturating ideal needs at least one generator")
    result = None
    for g in by.generators:
        s = saturate_single(ideal, g)
        result = s if result is None else intersect(result, s)
    return Ideal(ideal.ring, result.groebner().basis)
