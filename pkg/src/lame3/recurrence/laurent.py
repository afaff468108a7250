"""Laurent coefficients of wp + B/alpha around z = 0."""
from __future__ import annotations

from fractions import Fraction

from ..sympoly import WeightedPoly
from .params import ProblemParams


def wp_coefficients(depth: int) -> list[WeightedPoly]:
    """c_j with wp(z) = z^-2 + sum_{j>=2} c_j z^(2j-2), for j = 0..depth (c_0 = 1, c_1 = 0)."""
    c = [WeightedPoly.const(1), WeightedPoly.zero()]
    if depth >= 2:
        c.append(WeightedPoly.g2().scale(Fraction(1, 20)))
    if depth >= 3:
        c.append(WeightedPoly.g3().scale(Fraction(1, 28)))
    for j in range(4, depth + 1):
        acc = WeightedPoly.zero()
        for m in range(2, j - 1):
            acc = acc + c[m] * c[j - m]
        c.append(acc.scale(Fraction(3, (2 * j + 1) * (j - 3))))
    return c[: depth + 1]


def default_depth(pp: ProblemParams) -> int:
    return (pp.n + 3 * pp.l) // 2 + 6


def wp_laurent(depth: int, pp: ProblemParams) -> list[WeightedPoly]:
    """B_0..B_depth with wp(z) + B/alpha = sum_j B_j z^(2j-2)."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    out = wp_coefficients(depth)
    out[1] = WeightedPoly.B().scale(Fraction(1, pp.alpha))
    return out
