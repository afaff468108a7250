"""Even elliptic solutions y = sum_j C_j(B) wp^j and the x-form of the operator."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import RegimeError
from ..sympoly import WeightedPoly, XPoly, xadd, xderiv, xmul, xscale, xshift, xtrim
from .params import ProblemParams

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class EllipticSolution:
    """y = sum_{j=0}^{k} C_j(B) x^j with x = wp(z) and C_k = 1."""

    coeffs: tuple[WeightedPoly, ...]
    alpha: int
    beta: Fraction
    n: int
    l: int
    kind: str = "primal"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_xpoly(self) -> XPoly:
        return list(self.coeffs)

    def specialize(self, B: complex, g2: complex, g3: complex) -> np.ndarray:
        """Numeric coefficients in x (ascending) at the given B, g2, g3."""
        return np.array([c.evaluate(B, g2, g3) for c in self.coeffs], dtype=complex)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "kind": self.kind,
            "degree": self.degree,
            "coeffs": [c.to_records() for c in self.coeffs],
        }


def phi(j: int, alpha, beta) -> Fraction:
    """Diagonal coefficient of the x^j recursion for an even solution."""
    return Fraction(4 * j * (j - 1) * (j - 2) + 18 * j * (j - 1) + 12 * j - alpha * j) + beta


def even_recursion_rhs(j: int, C: list[WeightedPoly]) -> WeightedPoly:
    """(j+1) B C_{j+1} + (j+1)(j+3/2)(j+2) g2 C_{j+2} + (j+1)(j+2)(j+3) g3 C_{j+3}."""
    k = len(C) - 1

    def get(i: int) -> WeightedPoly:
        return C[i] if 0 <= i <= k else WeightedPoly.zero()

    out = WeightedPoly.B() * get(j + 1).scale(j + 1)
    out = out + WeightedPoly.g2() * get(j + 2).scale(Fraction(j + 1) * (j + _HALF + 1) * (j + 2))
    out = out + WeightedPoly.g3() * get(j + 3).scale((j + 1) * (j + 2) * (j + 3))
    return out


def solve_even_recursion(alpha, beta, k: int, stop: int = 0) -> list[WeightedPoly]:
    """Solve the recursion downward from C_k = 1 to C_stop; entries below stop stay zero."""
    C = [WeightedPoly.zero() for _ in range(k + 1)]
    C[k] = WeightedPoly.const(1)
    for j in range(k - 1, stop - 1, -1):
        d = phi(j, alpha, beta)
        if d == 0:
            raise RegimeError(f"phi_{j} vanishes inside the solved range (alpha={alpha}, beta={beta})")
        C[j] = even_recursion_rhs(j, C).scale(1 / d)
    return C


def even_elliptic_solution(pp: ProblemParams) -> EllipticSolution:
    n, l = pp.n, pp.l
    if not (l % 2 == 1 or (n % 2 == 0 and l % 2 == 0 and n + l >= 2)):
        raise RegimeError(f"(n, l) = ({n}, {l}) has no even elliptic solution")
    C = solve_even_recursion(pp.alpha, pp.beta, pp.k)
    return EllipticSolution(tuple(C), pp.alpha, pp.beta, n, l, "primal")


def dual_even_elliptic_solution(pp: ProblemParams) -> EllipticSolution:
    if pp.n % 2:
        raise RegimeError("the dual even elliptic solution needs n even")
    C = solve_even_recursion(pp.alpha, pp.dual_beta, pp.m0)
    return EllipticSolution(tuple(C), pp.alpha, pp.dual_beta, pp.n, pp.l, "dual")


# ---------------------------------------------------------------- x-form helpers

def p_poly() -> XPoly:
    """p(x) = 4x^3 - g2 x - g3, the square of wp'."""
    return [-WeightedPoly.g3(), -WeightedPoly.g2(), WeightedPoly.zero(), WeightedPoly.const(4)]


def x_second(y: XPoly, yx: XPoly | None = None, yxx: XPoly | None = None) -> XPoly:
    """d^2 y / dz^2 for y a polynomial in x = wp:  p y_xx + p'/2 y_x."""
    yx = xderiv(y) if yx is None else yx
    yxx = xderiv(yx) if yxx is None else yxx
    p = p_poly()
    return xadd(xmul(p, yxx), xscale(xmul(xderiv(p), yx), _HALF))


def apply_third_order(y: XPoly, alpha, beta) -> XPoly:
    """(y''' - (alpha wp + B) y' + beta wp' y) / wp' written in x = wp.

    Uses wp'^2 = p(x), wp'' = 6x^2 - g2/2, wp''' = 12 x wp'.
    """
    yx = xderiv(y)
    yxx = xderiv(yx)
    yxxx = xderiv(yxx)
    p = p_poly()
    c2 = [WeightedPoly.g2().scale(Fraction(-3, 2)), WeightedPoly.zero(), WeightedPoly.const(18)]
    c1 = [-WeightedPoly.B(), WeightedPoly.const(12 - alpha)]
    out = xmul(p, yxxx)
    out = xadd(out, xmul(c2, yxx))
    out = xadd(out, xmul(c1, yx))
    out = xadd(out, xscale(y, Fraction(beta)))
    return xtrim(out)


__all__ = [
    "EllipticSolution",
    "phi",
    "even_recursion_rhs",
    "solve_even_recursion",
    "even_elliptic_solution",
    "dual_even_elliptic_solution",
    "p_poly",
    "x_second",
    "apply_third_order",
    "xshift",
]
