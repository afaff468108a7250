"""Companion-matrix evaluators for the equations whose monodromy we compute."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..elliptic import LatticeData, wp_eval
from ..errors import PoleProximity, RegimeError
from ..recurrence import ProblemParams, even_elliptic_solution
from ..recurrence.even import EllipticSolution

KINDS = ("third", "dual", "reduced2", "lame")
ZERO_GUARD = 1e-8


@dataclass(frozen=True)
class ODESystem:
    """First-order companion form Y' = A(z) Y of a scalar equation."""

    order: int
    kind: str
    B: complex
    lat: LatticeData = field(repr=False)
    params: ProblemParams | None
    lame_m: int | None
    matrix: Callable[[complex], np.ndarray] = field(repr=False, compare=False)
    y0: EllipticSolution | None = field(default=None, repr=False, compare=False)
    # numeric coefficients of y0 in x (ascending), for the reduced equation
    y0_numeric: np.ndarray | None = field(default=None, repr=False, compare=False)


def _third(alpha: float, beta: complex, B: complex, lat: LatticeData):
    def A(z: complex) -> np.ndarray:
        wp, dwp, _ = wp_eval(z, lat)
        return np.array([[0, 1, 0], [0, 0, 1], [-beta * dwp, alpha * wp + B, 0]], dtype=complex)

    return A


def _reduced(alpha: float, B: complex, c: np.ndarray, lat: LatticeData):
    P = np.polynomial.polynomial
    c1 = P.polyder(c) if len(c) > 1 else np.zeros(1, complex)
    c2 = P.polyder(c1) if len(c1) > 1 else np.zeros(1, complex)
    scale = float(np.max(np.abs(c)))

    def A(z: complex) -> np.ndarray:
        wp, dwp, ddwp = wp_eval(z, lat)
        y = P.polyval(wp, c)
        if abs(y) < ZERO_GUARD * scale * (1 + abs(wp)) ** (len(c) - 1):
            raise PoleProximity(f"z={z} is too close to a zero of y0")
        yx, yxx = P.polyval(wp, c1), P.polyval(wp, c2)
        d1 = dwp * yx
        d2 = dwp * dwp * yxx + ddwp * yx
        p1 = -(alpha * wp + B)
        # f'' + 3 (y0'/y0) f' + (3 y0''/y0 + p1) f = 0
        return np.array([[0, 1], [-(3 * d2 / y + p1), -3 * d1 / y]], dtype=complex)

    return A


def _lame(m: int, B: complex, lat: LatticeData):
    mm = m * (m + 1)

    def A(z: complex) -> np.ndarray:
        wp = wp_eval(z, lat)[0]
        return np.array([[0, 1], [mm * wp + B, 0]], dtype=complex)

    return A


def build_system(
    pp: ProblemParams | None, B: complex, lat: LatticeData, kind: str = "third", m: int | None = None
) -> ODESystem:
    B = complex(B)
    if kind == "third":
        return ODESystem(3, kind, B, lat, pp, None, _third(pp.alpha, complex(pp.beta), B, lat))
    if kind == "dual":
        return ODESystem(3, kind, B, lat, pp, None, _third(pp.alpha, complex(pp.dual_beta), B, lat))
    if kind == "reduced2":
        if pp is None or pp.k is None:
            raise RegimeError("the reduced equation needs an even elliptic solution (n even or l odd)")
        sol = even_elliptic_solution(pp)
        c = sol.specialize(B, lat.g2, lat.g3)
        return ODESystem(2, kind, B, lat, pp, None, _reduced(pp.alpha, B, c, lat), sol, c)
    if kind == "lame":
        if m is None or m < 1:
            raise RegimeError("Lame systems need an index m >= 1")
        return ODESystem(2, kind, B, lat, pp, m, _lame(m, B, lat))
    raise RegimeError(f"unknown system kind {kind!r}; expected one of {KINDS}")


