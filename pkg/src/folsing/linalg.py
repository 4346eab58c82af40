"""Jacobians and determinants of polynomial matrices."""

from __future__ import annotations

from typing import List, Sequence

from .poly import MultiPoly, PolyRing, divide_exact

Matrix = List[List[MultiPoly]]


def jacobian(fs: Sequence[MultiPoly], variables: Sequence[str] | None = None) -> Matrix:
    """Entry ``(i, j)`` is the derivative of ``fs[i]`` by the j-th variable."""
    if not fs:
        return []
    ring = fs[0].ring
    variables = ring.names if variables is None else tuple(variables)
    return [[f.diff(v) for v in variables] for f in fs]


def _check_square(m: Sequence[Sequence[MultiPoly]]) -> PolyRing:
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in m):
        raise ValueError(f"matrix is not square: {n} rows of lengths {[len(r) for r in m]}")
    ring = m[0][0].ring
    if any(e.ring != ring for row in m for e in row):
        raise ValueError("matrix entries live in different rings")
    return ring


def _cofactor_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = m[0][0].ring.zero()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    a = [list(row) for row in m]
    n = len(a)
    ring = a[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev) if k else num
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def determinant(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant: cofactor expansion up to 3x3, Bareiss above."""
    _check_square(m)
    if len(m) <= 3:
        return _cofactor_det(m)
    return _bareiss_det(m)


def mat_vec(m: Sequence[Sequence[MultiPoly]], v: Sequence[MultiPoly]) -> List[MultiPoly]:
    out = []
    for row in m:
        acc = v[0].ring.zero()
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out
