"""Apparent-singularity polynomials for odd n.

The local series at z = 0 is y = z^{-(n+l)} sum_j c_j z^{2j}; the first
positive index where the diagonal coefficient vanishes leaves an equation
that B must satisfy for the series to continue.  Its monic form is P_{n,l}.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import RegimeError
from ..sympoly import WeightedPoly
from .even import even_recursion_rhs, phi
from .laurent import default_depth, wp_laurent
from .params import ProblemParams, Regime


def local_phi(j: int, pp: ProblemParams) -> Fraction:
    """Coefficient of c_j in the z^{2j-t-3} balance, t = n + l."""
    s = 2 * j - (pp.n + pp.l)
    return Fraction(s * (s - 1) * (s - 2) - pp.alpha * s) - 2 * pp.beta


def local_rhs(j: int, c: list[WeightedPoly], Bs: list[WeightedPoly], pp: ProblemParams) -> WeightedPoly:
    t = pp.n + pp.l
    out = WeightedPoly.B() * c[j - 1].scale(2 * j - 2 - t)
    for i in range(2, j + 1):
        w = pp.alpha * (2 * j - 2 * i - t) - pp.beta * (2 * i - 2)
        if w:
            out = out + Bs[i] * c[j - i].scale(w)
    return out


def obstruction_index(pp: ProblemParams) -> int:
    j = 1
    while local_phi(j, pp) != 0:
        j += 1
        if j > 4 * (pp.n + pp.l) + 10:  # pragma: no cover
            raise RegimeError("no positive root of the local recursion")
    return j


def apparent_polynomial(pp: ProblemParams) -> WeightedPoly:
    if pp.n % 2 == 0:
        raise RegimeError("apparent_polynomial needs n odd")
    jstar = obstruction_index(pp)
    Bs = wp_laurent(max(default_depth(pp), jstar), pp)
    c = [WeightedPoly.const(1)]
    for j in range(1, jstar):
        c.append(local_rhs(j, c, Bs, pp).scale(1 / local_phi(j, pp)))
    P, _ = local_rhs(jstar, c, Bs, pp).monic()
    return P


def second_elliptic_polynomial(pp: ProblemParams) -> WeightedPoly:
    """Condition for a second even elliptic solution of degree (n+l)/2 (n, l odd)."""
    if pp.regime is not Regime.ODD_ODD:
        raise RegimeError("second_elliptic_polynomial needs n and l odd")
    k2 = (pp.n + pp.l) // 2
    j0 = (pp.l - 1) // 2
    C = [WeightedPoly.zero() for _ in range(k2 + 1)]
    C[k2] = WeightedPoly.const(1)
    for j in range(k2 - 1, j0, -1):
        C[j] = even_recursion_rhs(j, C).scale(1 / phi(j, pp.alpha, pp.beta))
    assert phi(j0, pp.alpha, pp.beta) == 0
    P, _ = even_recursion_rhs(j0, C).monic()
    return P


__all__ = [
    "local_phi",
    "obstruction_index",
    "apparent_polynomial",
    "second_elliptic_polynomial",
]
