"""Closed-form singularity counts for foliations on P^n special along curves.

All functions are exact integer arithmetic.  Parameters: ``n`` the dimension,
``k`` the foliation degree, ``ell`` the multiplicity of the foliation along
the curve, ``d`` and ``g`` the degree and genus of the curve.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple


class NegativeTotalWarning(UserWarning):
    """A count came out negative, so the input data cannot be realized."""


@dataclass(frozen=True)
class CurveData:
    d: int
    g: int
    ell: int
    branches: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if self.d < 1:
            raise ValueError("curve degree must be at least 1")
        if self.g < 0 or self.ell < 0:
            raise ValueError("genus and ell must be non-negative")
        if any(b < 1 for b in self.branches):
            raise ValueError("branch counts must be at least 1")


def _geometric_sum(base: int, top: int) -> int:
    """``sum_{i=0}^{top} base^i`` (0 when ``top < 0``)."""
    return sum(base ** i for i in range(top + 1))


def baum_bott_total(n: int, k: int) -> int:
    """Total Milnor number of a degree-``k`` foliation with isolated singularities."""
    return _geometric_sum(k, n)


def exceptional_count(n: int, k: int, ell: int, d: int, g: int) -> int:
    """Singularities of the induced foliation on the exceptional divisor."""
    e = 2 - 2 * g
    return e * _geometric_sum(ell + 1, n - 3) + (ell + 1) ** (n - 2) * (
        e * (ell + 1) - (n + 1) * d * ell + (k - 1) * d * (n - 1)
    )


def blowup_count(n: int, k: int, ell: int, d: int, g: int) -> int:
    """Singularities of the blown-up foliation."""
    e = 2 - 2 * g
    return (
        _geometric_sum(k, n)
        + e * _geometric_sum(ell + 1, n - 3)
        + (ell + 1) ** (n - 2)
        * ((n + 1) * d * (ell * ell - ell) - e * ell * ell - (k - 1) * d * (n * ell - n + 2))
    )


def isolated_count(n: int, k: int, ell: int, d: int, g: int) -> int:
    """Isolated singularities on P^n off a smooth special curve."""
    return _geometric_sum(k, n) + (ell + 1) ** (n - 2) * (
        (2 * g - 2) * (ell * ell + ell + 1) + (n + 1) * d * ell * ell - (k - 1) * d * (n * ell + 1)
    )


def curve_contribution(n: int, k: int, curve: CurveData) -> int:
    """Correction a (possibly singular) special curve adds to the isolated total."""
    ell, d = curve.ell, curve.d
    chi_term = 2 * curve.g - 2 - sum(b - 1 for b in curve.branches)
    return (ell + 1) ** (n - 2) * (
        chi_term * (ell * ell + ell + 1) + (n + 1) * d * ell * ell - (k - 1) * d * (n * ell + 1)
    )


def total_isolated_count(n: int, k: int, curves: Sequence[CurveData] = (), warn: bool = True) -> int:
    """Isolated Milnor total for a foliation singular along disjoint curves."""
    total = baum_bott_total(n, k) + sum(curve_contribution(n, k, c) for c in curves)
    if warn and total < 0:
        warnings.warn(
            f"isolated total {total} is negative: the curve data cannot occur together",
            NegativeTotalWarning,
            stacklevel=2,
        )
    return total


def plausibility_warnings(n: int, k: int, curves: Sequence[CurveData]) -> List[str]:
    total = total_isolated_count(n, k, curves, warn=False)
    if total < 0:
        return [f"isolated total {total} is negative: the curve data cannot occur together"]
    return []
