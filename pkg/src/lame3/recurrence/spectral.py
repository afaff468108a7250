"""Symmetric-product coefficients and spectral polynomials for even n.

F = y0 * Phi_e is a polynomial of degree m = n + 2l in x = wp.  Its
coefficients come from expanding the F-equation in Q[g2, g3][B][x]; the
spectral polynomial is the z-independent quantity
    Q = I Phi^2 + Phi'^2 / 4 - Phi Phi'' / 2,   Phi = F / y0,
obtained exactly as Num(x) / y0^4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..elliptic import LatticeData, wp_eval
from ..errors import NonzeroRemainder, RegimeError
from ..sympoly import (
    RationalWeightedPoly,
    WeightedPoly,
    XPoly,
    monic_normalize,
    xadd,
    xderiv,
    xdiv_exact,
    xmul,
    xscale,
    xshift,
    xsub,
    xtrim,
)
from .even import EllipticSolution, even_elliptic_solution, p_poly, x_second
from .params import ProblemParams

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SpectralResult:
    F_coeffs: tuple[WeightedPoly, ...]
    Q: WeightedPoly | RationalWeightedPoly
    norm_scalar: WeightedPoly
    y0: EllipticSolution
    n: int
    l: int

    @property
    def Q_raw(self) -> WeightedPoly:
        """Q before monic normalization (in the gauge beta_m = 1)."""
        if isinstance(self.Q, RationalWeightedPoly):
            return self.Q.num
        return self.Q * self.norm_scalar

    @property
    def degree(self) -> int:
        q = self.Q.num if isinstance(self.Q, RationalWeightedPoly) else self.Q
        return q.degree_b()


def expected_degree(n: int, l: int) -> int:
    return 2 * n + 3 * l + 2 if l % 2 else n + 3 * l + 1


def theta_closed(j: int, pp: ProblemParams) -> Fraction:
    m, l = pp.m, pp.l
    if l % 2:
        return 4 * (j - m) * (j - Fraction(l - 2, 2)) * (j + m - l + 2)
    return 4 * (j - m) * (j - Fraction(m - l - 1, 2)) * (j + l + 1)


def _xB() -> XPoly:
    return [WeightedPoly.B()]


def _monomial(i: int) -> XPoly:
    return xshift([WeightedPoly.const(1)], i)


def f_operator(F: XPoly, y0: XPoly, alpha, beta) -> XPoly:
    """Left side of the F-equation divided by wp', as a polynomial in x.

    y0^2 F''' - 3 y0 y0' F'' + [3 y0'^2 + 3 y0 y0'' + 4 p1 y0^2] F'
      + [-6 y0' y0'' - 6 p1 y0 y0' + 2 (p1' - p0) y0^2] F,
    with p1 = -(alpha wp + B), p0 = beta wp'.
    """
    p = p_poly()
    dp = xderiv(p)
    Fx = xderiv(F)
    Fxx = xderiv(Fx)
    Fxxx = xderiv(Fxx)
    y0x = xderiv(y0)
    F2 = x_second(F, Fx, Fxx)
    Y2 = x_second(y0, y0x)
    F3 = xadd(xadd(xmul(p, Fxxx), xscale(xmul(dp, Fxx), Fraction(3, 2))), xscale(xshift(Fx), 12))
    p1 = [-WeightedPoly.B(), WeightedPoly.const(-alpha)]
    y0sq = xmul(y0, y0)
    t1 = xmul(y0sq, F3)
    t2 = xscale(xmul(xmul(y0, y0x), F2), -3)
    c3 = xadd(xadd(xscale(xmul(p, xmul(y0x, y0x)), 3), xscale(xmul(y0, Y2), 3)), xscale(xmul(p1, y0sq), 4))
    c4 = xadd(
        xadd(xscale(xmul(y0x, Y2), -6), xscale(xmul(p1, xmul(y0, y0x)), -6)),
        xscale(y0sq, -2 * (Fraction(alpha) + Fraction(beta))),
    )
    return xtrim(xadd(xadd(t1, t2), xadd(xmul(c3, Fx), xmul(c4, F))))


def _coeff(a: XPoly, i: int) -> WeightedPoly:
    return a[i] if 0 <= i < len(a) else WeightedPoly.zero()


def _require_even(pp: ProblemParams) -> None:
    if pp.n % 2:
        raise RegimeError("symmetric-product construction needs n even")


def _solve_F(pp: ProblemParams, sol: EllipticSolution) -> list[WeightedPoly]:
    y0 = sol.as_xpoly()
    k, m = sol.degree, pp.m
    images = [f_operator(_monomial(i), y0, pp.alpha, pp.beta) for i in range(m + 1)]
    for i, img in enumerate(images):
        if len(img) - 1 > 2 * k + i:
            raise NonzeroRemainder(f"F-operator raises x-degree on x^{i}")
        top = _coeff(img, 2 * k + i)
        if not top.is_constant() or top.constant_value() != theta_closed(i, pp):
            raise NonzeroRemainder(f"leading coefficient of the F-operator on x^{i} is {top}, expected {theta_closed(i, pp)}")
    beta = [WeightedPoly.zero() for _ in range(m + 1)]
    beta[m] = WeightedPoly.const(1)
    for j in range(m - 1, -1, -1):
        acc = WeightedPoly.zero()
        for i in range(j + 1, m + 1):
            acc = acc + beta[i] * _coeff(images[i], 2 * k + j)
        beta[j] = acc.scale(-1 / theta_closed(j, pp))
    # the remaining 2k lower-order equations must hold identically
    residual: XPoly = []
    for i in range(m + 1):
        residual = xadd(residual, xscale(images[i], beta[i]))
    if residual:
        raise NonzeroRemainder("F-equation has a nonzero residual after solving for beta_j")
    return beta


def symmetric_product_coeffs(pp: ProblemParams) -> list[WeightedPoly]:
    _require_even(pp)
    return _solve_F(pp, even_elliptic_solution(pp))


def spectral_numerator(F: XPoly, y0: XPoly, alpha) -> XPoly:
    """Num(x) = y0^4 Q expressed through F, y0 and their x-derivatives."""
    p = p_poly()
    dp = xderiv(p)
    Fx, y0x = xderiv(F), xderiv(y0)
    Fxx, y0xx = xderiv(Fx), xderiv(y0x)
    Iy0sq = xadd(
        xmul([WeightedPoly.B(), WeightedPoly.const(alpha)], xmul(y0, y0)),
        xadd(
            xscale(xmul(xadd(xmul(p, y0xx), xscale(xmul(dp, y0x), _HALF)), y0), Fraction(-3, 2)),
            xscale(xmul(p, xmul(y0x, y0x)), Fraction(3, 4)),
        ),
    )
    W = xsub(xmul(Fx, y0), xmul(F, y0x))
    term1 = xmul(Iy0sq, xmul(F, F))
    term2 = xscale(xmul(p, xmul(W, W)), Fraction(1, 4))
    inner = xadd(
        xmul(p, xsub(xmul(xsub(xmul(Fxx, y0), xmul(F, y0xx)), y0), xscale(xmul(y0x, W), 2))),
        xscale(xmul(dp, xmul(y0, W)), _HALF),
    )
    term3 = xscale(xmul(F, inner), -_HALF)
    return xtrim(xadd(xadd(term1, term2), term3))


def spectral_polynomial(pp: ProblemParams) -> SpectralResult:
    _require_even(pp)
    sol = even_elliptic_solution(pp)
    beta = _solve_F(pp, sol)
    y0 = sol.as_xpoly()
    num = spectral_numerator(beta, y0, pp.alpha)
    y0sq = xmul(y0, y0)
    quo = xdiv_exact(num, xmul(y0sq, y0sq))
    if len(quo) > 1:
        raise NonzeroRemainder(f"Num / y0^4 has x-degree {len(quo) - 1}, expected 0")
    Q_raw = quo[0] if quo else WeightedPoly.zero()
    Q, lead = monic_normalize(Q_raw)
    return SpectralResult(tuple(beta), Q, lead, sol, pp.n, pp.l)


def spectral_value_at(res: SpectralResult, B: complex, z: complex, lat: LatticeData) -> complex:
    """Evaluate I Phi^2 + Phi'^2/4 - Phi Phi''/2 at a point z from wp-values (gauge of Q_raw)."""
    g2, g3 = lat.g2, lat.g3
    wp, dwp, ddwp = wp_eval(z, lat)
    F = np.array([c.evaluate(B, g2, g3) for c in res.F_coeffs])
    y = res.y0.specialize(B, g2, g3)
    P = np.polynomial.polynomial

    def derivs(c):
        c1 = P.polyder(c) if len(c) > 1 else np.zeros(1)
        c2 = P.polyder(c1) if len(c1) > 1 else np.zeros(1)
        return P.polyval(wp, c), P.polyval(wp, c1), P.polyval(wp, c2)

    f0, fx, fxx = derivs(F)
    y0, yx, yxx = derivs(y)
    # z-derivatives via the chain rule
    f1, f2 = dwp * fx, dwp**2 * fxx + ddwp * fx
    u1, u2 = dwp * yx, dwp**2 * yxx + ddwp * yx
    phi0 = f0 / y0
    phi1 = (f1 * y0 - f0 * u1) / y0**2
    phi2 = (f2 * y0 - f0 * u2) / y0**2 - 2 * u1 * (f1 * y0 - f0 * u1) / y0**3
    alpha = res.y0.alpha
    I = -1.5 * u2 / y0 + 0.75 * (u1 / y0) ** 2 + alpha * wp + B
    return I * phi0**2 + phi1**2 / 4 - phi0 * phi2 / 2


def z_independence(res: SpectralResult, B: complex, zs, lat: LatticeData) -> tuple[complex, float]:
    """Mean and sample standard deviation of the pointwise Q over the points zs."""
    vals = [spectral_value_at(res, B, z, lat) for z in zs]
    mean = sum(vals) / len(vals)
    sd = float(np.sqrt(np.sum(np.abs(np.array(vals) - mean) ** 2) / (len(vals) - 1)))
    return mean, sd


# ---------------------------------------------------------------- Lame

def lame_symmetric_square(m: int) -> list[WeightedPoly]:
    """Phi = sum phi_j x^j (phi_m = 1) with Phi''' - 4 I Phi' - 2 I' Phi = 0, I = m(m+1) wp + B.

    Coefficient of x^j after dividing by wp':
      d_j phi_j = 4B(j+1) phi_{j+1} + g2 (j+1)(j+2)(j+3/2) phi_{j+2} + g3 (j+1)(j+2)(j+3) phi_{j+3},
      d_j = 4j(j-1)(j-2) + 18j(j-1) + 12j - 2m(m+1)(2j+1).
    """
    mm = m * (m + 1)
    phi = [WeightedPoly.zero() for _ in range(m + 1)]
    phi[m] = WeightedPoly.const(1)

    def get(i):
        return phi[i] if i <= m else WeightedPoly.zero()

    for j in range(m - 1, -1, -1):
        d = 4 * j * (j - 1) * (j - 2) + 18 * j * (j - 1) + 12 * j - 2 * mm * (2 * j + 1)
        acc = WeightedPoly.B() * get(j + 1).scale(4 * (j + 1))
        acc = acc + WeightedPoly.g2() * get(j + 2).scale((j + 1) * (j + 2) * Fraction(2 * j + 3, 2))
        acc = acc + WeightedPoly.g3() * get(j + 3).scale((j + 1) * (j + 2) * (j + 3))
        phi[j] = acc.scale(Fraction(1, d))
    return phi


def lame_spectral_polynomial(m: int) -> WeightedPoly:
    """Monic l_m(B) of degree 2m+1 from the Lame symmetric square."""
    if m < 1:
        raise ValueError("m must be at least 1")
    Phi = lame_symmetric_square(m)
    p = p_poly()
    Px = xderiv(Phi)
    I = [WeightedPoly.B(), WeightedPoly.const(m * (m + 1))]
    Q = xadd(xmul(I, xmul(Phi, Phi)), xscale(xmul(p, xmul(Px, Px)), Fraction(1, 4)))
    Q = xsub(Q, xscale(xmul(Phi, x_second(Phi, Px)), _HALF))
    if len(Q) > 1:
        raise NonzeroRemainder(f"Lame Wronskian expression has x-degree {len(Q) - 1}")
    out, _ = Q[0].monic()
    return out


__all__ = [
    "SpectralResult",
    "expected_degree",
    "theta_closed",
    "f_operator",
    "symmetric_product_coeffs",
    "spectral_numerator",
    "spectral_polynomial",
    "spectral_value_at",
    "z_independence",
    "lame_symmetric_square",
    "lame_spectral_polynomial",
]
