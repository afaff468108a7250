"""Solutions of the form (wp - e_i)^{1/2} sum_j C_j (wp - e_i)^j for n odd, l even.

With u = wp - e_i the operator in x = wp becomes a three-term recursion
    a_j C_j = [(j+3/2) B + b_j e_i] C_{j+1} - 4 (j+2)(j+3/2)(j+5/2) theta_i C_{j+2},
theta_i = 3 e_i^2 - g2/4.  Solving downward from the top coefficient hits
a_j = 0 at j = l/2 - 1; the leftover equation there is a polynomial in B
(numeric, since it depends on e_i) that must agree with P_{n,l}.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..elliptic import LatticeData, wp_eval
from ..errors import CaseDegeneracy, NotApparent, NumericalInstability, RegimeError
from ..sympoly import NumPoly, specialize
from .params import ProblemParams, Regime

OVERFLOW = 1e150


def a_coeff(j: int, pp: ProblemParams) -> Fraction:
    """Diagonal term: the u^{j+1/2} coefficient of the operator applied to u^{j+1/2}."""
    s = Fraction(2 * j + 1, 2)
    return 4 * s * (s - 1) * (s - 2) + 18 * s * (s - 1) + (12 - pp.alpha) * s + pp.beta


def b_coeff(j: int, pp: ProblemParams) -> Fraction:
    """Minus the e_i part of the u^{j+1/2} coefficient contributed by u^{j+3/2}."""
    s = Fraction(2 * j + 3, 2)
    return -(12 * s * (s - 1) * (s - 2) + 36 * s * (s - 1) + (12 - pp.alpha) * s)


def c_coeff(j: int) -> Fraction:
    return 4 * (j + 2) * Fraction(2 * j + 3, 2) * Fraction(2 * j + 5, 2)


def top_index(pp: ProblemParams) -> int:
    return (pp.l + pp.n - 1) // 2


def _check_regime(pp: ProblemParams) -> None:
    if pp.regime is not Regime.ODD_EVEN:
        raise RegimeError("half-basis construction needs n odd and l even")


def _guard(p: NumPoly) -> NumPoly:
    if not np.all(np.isfinite(p.coeffs)) or p.norm() > OVERFLOW:
        raise NumericalInstability("half-basis recursion coefficients overflowed")
    return p


def halfbasis_polynomial(pp: ProblemParams, i: int, lat: LatticeData) -> NumPoly:
    _check_regime(pp)
    e = lat.ek(i)
    theta = 3 * e * e - lat.g2 / 4
    k = top_index(pp)
    stop = pp.l // 2 - 1
    one, zero = NumPoly.from_coeffs([1.0]), NumPoly.from_coeffs([0.0])
    C = {k: one, k + 1: zero, k + 2: zero}

    def rhs(j: int) -> NumPoly:
        lin = NumPoly.from_coeffs([complex(b_coeff(j, pp)) * e, float(Fraction(2 * j + 3, 2))])
        return lin * C[j + 1] - C[j + 2].scale(float(c_coeff(j)) * theta)

    for j in range(k - 1, stop, -1):
        a = a_coeff(j, pp)
        if a == 0:  # pragma: no cover - excluded by the factorization of a_j
            raise RegimeError(f"a_{j} vanishes inside the solved range")
        C[j] = _guard(rhs(j).scale(1 / float(a)))
    assert a_coeff(stop, pp) == 0
    return _guard(rhs(stop)).monic()


@dataclass(frozen=True)
class HalfBasisSolution:
    i: int
    coeffs: np.ndarray
    k_i: int
    B: complex
    lat: LatticeData = field(repr=False)
    case: str
    residual: float

    @property
    def e(self) -> complex:
        return self.lat.ek(self.i)

    def evaluate(self, z: complex) -> complex:
        u = wp_eval(z, self.lat)[0] - self.e
        return cmath.sqrt(u) * np.polynomial.polynomial.polyval(u, self.coeffs)

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "k_i": self.k_i,
            "B": [self.B.real, self.B.imag],
            "case": self.case,
            "residual": self.residual,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }


def _row_residual(j, C, pp, B, e, theta) -> tuple[complex, float]:
    def get(t):
        return C.get(t, 0j)

    a = complex(a_coeff(j, pp))
    lin = float(Fraction(2 * j + 3, 2)) * B + complex(b_coeff(j, pp)) * e
    c = float(c_coeff(j)) * theta
    res = a * get(j) - lin * get(j + 1) + c * get(j + 2)
    cmax = max(abs(v) for v in C.values())
    return res, (abs(a) + abs(lin) + abs(c)) * cmax


def halfbasis_solution(
    pp: ProblemParams, i: int, B: complex, lat: LatticeData, tol: float = 1e-8
) -> HalfBasisSolution:
    """Coefficients C_{i,j} of the solution attached to e_i at an apparent B."""
    _check_regime(pp)
    from .apparent import apparent_polynomial

    B = complex(B)
    P = specialize(apparent_polynomial(pp), lat.g2, lat.g3)
    scale = float(np.sum(np.abs(P.coeffs) * np.abs(B) ** np.arange(P.degree + 1)))
    if abs(P(B)) > tol * scale:
        raise NotApparent(f"P_{pp.n},{pp.l}(B) = {P(B):.3e} at B = {B}")

    e = lat.ek(i)
    theta = 3 * e * e - lat.g2 / 4
    k = top_index(pp)
    f = pp.l // 2 - 1  # index of the second free coefficient (absent when l = 0)

    # each C_j is a pair (coefficient of C_k, coefficient of C_f)
    C: dict[int, np.ndarray] = {k: np.array([1, 0], complex), k + 1: np.zeros(2, complex), k + 2: np.zeros(2, complex)}

    def rhs(j: int) -> np.ndarray:
        lin = float(Fraction(2 * j + 3, 2)) * B + complex(b_coeff(j, pp)) * e
        return lin * C[j + 1] - float(c_coeff(j)) * theta * C[j + 2]

    for j in range(k - 1, -1, -1):
        if j == f:
            r = rhs(j)
            row_scale = max(1.0, float(np.max(np.abs(C[j + 1]))) * (abs(B) + abs(e)) + abs(theta))
            if abs(r[0]) > 1e-6 * row_scale:
                raise NotApparent(f"obstruction at j={f} does not vanish: {r[0]:.3e}")
            C[j] = np.array([0, 1], complex)
            continue
        a = a_coeff(j, pp)
        C[j] = rhs(j) / float(a)
        if not np.all(np.isfinite(C[j])) or np.max(np.abs(C[j])) > OVERFLOW:
            raise NumericalInstability("half-basis solution coefficients overflowed")

    final = rhs(-1)  # equation at j = -1: 0 = (B/2 + b_{-1} e) C_0 - 3 theta C_1
    u, v = final
    mag = max(1.0, float(np.max(np.abs([C[0], C[min(1, k)]]))) * (abs(B) + abs(e) + abs(theta)))
    if f < 0:
        if abs(u) > 1e-6 * mag:
            raise NotApparent(f"j=-1 equation fails with residual {u:.3e}")
        weights, case = np.array([1, 0], complex), "top"
    elif abs(v) > 1e-10 * mag:
        weights, case = np.array([1, -u / v], complex), "top"
    elif abs(u) > 1e-10 * mag:
        weights, case = np.array([0, 1], complex), "low"
    else:
        raise CaseDegeneracy(f"both normalizations vanish at B={B}, i={i}")

    coeffs = np.array([C[j] @ weights for j in range(k + 1)], dtype=complex)
    if case == "low" or (f >= 0 and abs(coeffs[k]) == 0):
        k_i = f
        coeffs = coeffs[: f + 1]
    else:
        k_i = k
    full = {j: coeffs[j] for j in range(k_i + 1)}
    rows = [_row_residual(j, full, pp, B, e, theta) for j in range(-2, k_i + 1)]
    # residuals measured against coefficient size times the largest C_j
    top = max(sc for _, sc in rows)
    worst = max(abs(res) for res, _ in rows) / top if top else 0.0
    if worst >= 1e-9:
        raise NumericalInstability(f"half-basis residual {worst:.3e} exceeds 1e-9")
    return HalfBasisSolution(i, coeffs, k_i, B, lat, case, worst)


__all__ = [
    "a_coeff",
    "b_coeff",
    "halfbasis_polynomial",
    "halfbasis_solution",
    "HalfBasisSolution",
]
