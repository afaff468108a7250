"""Weierstrass functions for the lattice Z + tau Z.

Invariants come from Eisenstein q-series (g2, g3, eta1) and Jacobi theta
constants (e1, e2, e3); pointwise values of wp, zeta and sigma come from
theta quotients.  Every evaluation is carried out on a modular-equivalent
lattice whose period ratio lies in the standard fundamental domain, so the
series converge at a uniform rate however small Im tau is.  The original
lattice is recovered by the scaling Lambda_tau = mu * Lambda_tau'.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.special import elliprf

from .errors import ConvergenceFailure, DegenerateLattice, DomainError, PoleProximity

GUARD = 1e-8
TERM_CUTOFF = 1e-18
_ENV_TERMS = "LAME3_SERIES_TERMS"

__all__ = [
    "LatticeData",
    "lattice_data",
    "wp_eval",
    "zeta_eval",
    "sigma_eval",
    "zeta_sigma_eval",
    "invert_wp",
    "reduce_to_cell",
    "lattice_distance",
    "half_period",
]


def _env_terms() -> int | None:
    raw = os.environ.get(_ENV_TERMS)
    if raw is None or raw.strip() == "":
        return None
    value = int(raw)
    if value < 1:
        raise DomainError(f"{_ENV_TERMS} must be a positive integer, got {raw!r}")
    return value


def _reduce_tau(tau: complex) -> tuple[complex, tuple[int, int, int, int]]:
    """Move tau into the fundamental domain; return (tau', (a, b, c, d)) with
    tau' = (a tau + b) / (c tau + d)."""
    a, b, c, d = 1, 0, 0, 1
    t = complex(tau)
    for _ in range(200):
        k = math.floor(t.real + 0.5)
        if k:
            t -= k
            a, b = a - k * c, b - k * d
        if abs(t) < 1.0 - 1e-14:
            t = -1.0 / t
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:  # pragma: no cover - only for pathological input
        raise ConvergenceFailure(f"modular reduction of tau={tau} did not terminate")
    return t, (a, b, c, d)


def _theta_terms(im_tau: float, override: int | None) -> int:
    if override is not None:
        return override
    # |q^{(n+1/2)^2} e^{(2n+1)|Im v|}| <= exp(-pi Im tau (n^2 - 1/4)) on the centered cell
    need = -math.log(TERM_CUTOFF) / (math.pi * im_tau) + 0.25
    return max(3, int(math.ceil(math.sqrt(need))) + 2)


def _eisenstein(q: complex, override: int | None) -> tuple[complex, complex, complex, int]:
    """Return (E2, E4, E6, terms used) from Lambert series in the nome q."""
    s1 = s3 = s5 = 0j
    n = 0
    qn = 1.0 + 0j
    while True:
        n += 1
        qn *= q
        frac = qn / (1.0 - qn)
        t1, t3, t5 = n * frac, n**3 * frac, n**5 * frac
        s1 += t1
        s3 += t3
        s5 += t5
        if override is not None:
            if n >= override:
                break
        elif abs(t5) < TERM_CUTOFF and n > 2:
            break
        if n > 10_000:  # pragma: no cover
            raise ConvergenceFailure("Eisenstein series did not converge")
    return 1 - 24 * s1, 1 + 240 * s3, 1 - 504 * s5, n


class _Theta:
    """Jacobi theta series for the lattice Z + t Z (t in the fundamental domain)."""

    def __init__(self, t: complex, terms: int):
        self.t = t
        self.terms = terms
        n = np.arange(terms)
        self.odd = 2 * n + 1
        self.even = 2 * np.arange(1, terms + 1)
        self.qh = np.exp(1j * np.pi * t * (n + 0.5) ** 2)
        self.sgn = (-1.0) ** n
        m = np.arange(1, terms + 1)
        self.qi = np.exp(1j * np.pi * t * m**2)
        self.sgn_i = (-1.0) ** m
        self.sqh = self.sgn * self.qh
        self.t2 = complex(2 * np.sum(self.qh))
        self.t3 = complex(1 + 2 * np.sum(self.qi))
        self.t4 = complex(1 + 2 * np.sum(self.sgn_i * self.qi))
        self.t1p = complex(2 * np.sum(self.sqh * self.odd))

    def all(self, v: complex):
        """theta_1, theta_1', theta_2, theta_3, theta_4 at v."""
        ov = self.odd * v
        s, c = np.sin(ov), np.cos(ov)
        ce = np.cos(self.even * v)
        th1 = 2 * np.dot(self.sqh, s)
        th1p = 2 * np.dot(self.sqh * self.odd, c)
        th2 = 2 * np.dot(self.qh, c)
        th3 = 1 + 2 * np.dot(self.qi, ce)
        th4 = 1 + 2 * np.dot(self.sgn_i * self.qi, ce)
        return complex(th1), complex(th1p), complex(th2), complex(th3), complex(th4)


@dataclass(frozen=True)
class LatticeData:
    """Invariants of the lattice Z + tau Z.

    ``e1, e2, e3`` are wp at 1/2, tau/2 and (1+tau)/2.  ``eta1, eta2`` are the
    quasi-periods of zeta for the periods 1 and tau.
    """

    tau: complex
    q: complex
    g2: complex
    g3: complex
    e1: complex
    e2: complex
    e3: complex
    eta1: complex
    eta2: complex
    series_terms: int
    tau_reduced: complex = field(repr=False)
    mu: complex = field(repr=False)
    modular: tuple[int, int, int, int] = field(repr=False)
    _theta: _Theta = field(repr=False, compare=False)
    _red: tuple = field(repr=False, compare=False)

    @property
    def e(self) -> tuple[complex, complex, complex]:
        return (self.e1, self.e2, self.e3)

    @property
    def periods(self) -> tuple[complex, complex]:
        return (1.0 + 0j, complex(self.tau))

    @property
    def discriminant(self) -> complex:
        return self.g2**3 - 27 * self.g3**2

    def ek(self, i: int) -> complex:
        if i not in (1, 2, 3):
            raise DomainError(f"half-period index must be 1, 2 or 3, got {i}")
        return self.e[i - 1]


def half_period(i: int, tau: complex) -> complex:
    """omega_i / 2 with omega_1 = 1, omega_2 = tau, omega_3 = 1 + tau."""
    return {1: 0.5 + 0j, 2: tau / 2, 3: (1 + tau) / 2}[i]


def lattice_data(tau: complex, tol: float = 1e-12) -> LatticeData:
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got tau={tau}")
    if not 0 < tol <= 1e-6:
        raise DomainError(f"tol must lie in (0, 1e-6], got {tol}")
    override = _env_terms()

    t, (a, b, c, d) = _reduce_tau(tau)
    mu = c * tau + d
    th = _Theta(t, _theta_terms(t.imag, override))
    E2, E4, E6, n_eis = _eisenstein(cmath.exp(2j * math.pi * t), override)

    pi2 = math.pi**2
    g2r = (4 * math.pi**4 / 3) * E4
    g3r = (8 * math.pi**6 / 27) * E6
    disc_rel = abs(g2r**3 - 27 * g3r**2) / max(abs(g2r) ** 3, 27 * abs(g3r) ** 2)
    if not np.isfinite(disc_rel) or disc_rel < tol:
        raise DegenerateLattice(f"discriminant vanishes at tau={tau} (relative {disc_rel:.3e})")

    t2, t3, t4 = th.t2, th.t3, th.t4
    er = {
        (1, 0): (pi2 / 3) * (t3**4 + t4**4),
        (0, 1): -(pi2 / 3) * (t2**4 + t3**4),
        (1, 1): (pi2 / 3) * (t2**4 - t4**4),
    }
    eta1r = (pi2 / 3) * E2
    eta2r = t * eta1r - 2j * math.pi

    # half periods of Lambda in coordinates of Lambda' = Lambda / mu
    def label(x: int, y: int) -> tuple[int, int]:
        return (x % 2, y % 2)

    e1 = er[label(a, -c)] / mu**2
    e2 = er[label(-b, d)] / mu**2
    e3 = er[label(a - b, d - c)] / mu**2
    g2 = g2r / mu**4
    g3 = g3r / mu**6
    eta1 = (a * eta1r - c * eta2r) / mu
    eta2 = (d * eta2r - b * eta1r) / mu

    if tau.real == 0.0:
        # wp is real on the rectangular lattice; drop rounding noise in the imaginary parts
        g2, g3 = complex(g2.real, 0.0), complex(g3.real, 0.0)
        e1, e2, e3 = (complex(x.real, 0.0) for x in (e1, e2, e3))
        eta1 = complex(eta1.real, 0.0)
        if not (e1.real > e3.real > e2.real):
            e1, e3, e2 = sorted((e1, e2, e3), key=lambda x: -x.real)

    lat = LatticeData(
        tau=tau,
        q=cmath.exp(2j * math.pi * tau),
        g2=g2,
        g3=g3,
        e1=e1,
        e2=e2,
        e3=e3,
        eta1=eta1,
        eta2=eta2,
        series_terms=max(th.terms, n_eis),
        tau_reduced=t,
        mu=mu,
        modular=(a, b, c, d),
        _theta=th,
        _red=(er[(1, 0)], eta1r, eta2r, g2r, g3r),
    )
    _check_invariants(lat)
    return lat


def _check_invariants(lat: LatticeData) -> None:
    es = lat.e
    emax = max(abs(x) for x in es)
    if abs(sum(es)) > 1e-12 * emax:
        raise ConvergenceFailure(f"e1+e2+e3 = {sum(es)} at tau={lat.tau}")
    scale = abs(lat.g2) ** 1.5 + abs(lat.g3)
    for x in es:
        if abs(4 * x**3 - lat.g2 * x - lat.g3) > 1e-10 * scale:
            raise ConvergenceFailure(f"e={x} is not a root of 4x^3-g2x-g3 at tau={lat.tau}")
    if abs(lat.eta1 * lat.tau - lat.eta2 - 2j * math.pi) > 1e-10 * max(1.0, abs(lat.eta1 * lat.tau)):
        raise ConvergenceFailure(f"Legendre relation fails at tau={lat.tau}")


# ---------------------------------------------------------------- reductions

def _nearest(w: complex, t: complex) -> tuple[complex, int, int]:
    """Write w = r + m + n t with r closest to the origin among lattice translates."""
    n0 = math.floor(w.imag / t.imag + 0.5)
    r = w - n0 * t
    m0 = math.floor(r.real + 0.5)
    r -= m0
    best = (abs(r), r, m0, n0)
    for dm in (-1, 0, 1):
        for dn in (-1, 0, 1):
            if dm == 0 and dn == 0:
                continue
            cand = r - dm - dn * t
            if abs(cand) < best[0]:
                best = (abs(cand), cand, m0 + dm, n0 + dn)
    return best[1], best[2], best[3]


def reduce_to_cell(z: complex, lat: LatticeData) -> complex:
    """Representative of z in the parallelogram {a + b tau : a, b in [-1/2, 1/2)}."""
    tau = lat.tau
    b = z.imag / tau.imag
    a = z.real - b * tau.real
    return (a - math.floor(a + 0.5)) + (b - math.floor(b + 0.5)) * tau


def lattice_distance(z: complex, lat: LatticeData) -> float:
    """Distance from z to the nearest lattice point."""
    r, _, _ = _nearest(z / lat.mu, lat.tau_reduced)
    return abs(r * lat.mu)


# ---------------------------------------------------------------- evaluation

def _wp_reduced(w: complex, lat: LatticeData) -> tuple[complex, complex]:
    th = lat._theta
    v = math.pi * w
    th1, _, th2, th3, th4 = th.all(v)
    e1r = lat._red[0]
    ratio = math.pi * th.t3 * th.t4 * th2 / th1
    wp = e1r + ratio**2
    c = (th.t2 * th.t3 * th.t4) ** 2
    wpp = -2 * math.pi**3 * c * th2 * th3 * th4 / th1**3
    return wp, wpp


def wp_eval(z: complex, lat: LatticeData) -> tuple[complex, complex, complex]:
    """Return (wp(z), wp'(z), wp''(z))."""
    z = complex(z)
    mu = lat.mu
    r, _, _ = _nearest(z / mu, lat.tau_reduced)
    if abs(r * mu) < GUARD:
        raise PoleProximity(f"z={z} is within {GUARD} of a lattice point")
    wp, wpp = _wp_reduced(r, lat)
    wp, wpp = wp / mu**2, wpp / mu**3
    return wp, wpp, 6 * wp * wp - lat.g2 / 2


def zeta_eval(z: complex, lat: LatticeData) -> complex:
    z = complex(z)
    mu = lat.mu
    r, m, n = _nearest(z / mu, lat.tau_reduced)
    if abs(r * mu) < GUARD:
        raise PoleProximity(f"z={z} is within {GUARD} of a lattice point")
    _, eta1r, eta2r, _, _ = lat._red
    th1, th1p, *_ = lat._theta.all(math.pi * r)
    zr = eta1r * r + math.pi * th1p / th1 + m * eta1r + n * eta2r
    return zr / mu


def sigma_eval(z: complex, lat: LatticeData) -> complex:
    z = complex(z)
    mu = lat.mu
    r, m, n = _nearest(z / mu, lat.tau_reduced)
    _, eta1r, eta2r, _, _ = lat._red
    th = lat._theta
    th1, *_ = th.all(math.pi * r)
    sr = cmath.exp(eta1r * r * r / 2) * th1 / (math.pi * th.t1p)
    if m or n:
        om = m + n * lat.tau_reduced
        eta = m * eta1r + n * eta2r
        sign = -1 if (m + n + m * n) % 2 else 1
        sr = sign * cmath.exp(eta * (r + om / 2)) * sr
    return mu * sr


def zeta_sigma_eval(z: complex, lat: LatticeData) -> tuple[complex, complex]:
    return zeta_eval(z, lat), sigma_eval(z, lat)


# ---------------------------------------------------------------- inversion

def _newton_wp(z: complex, x: complex, lat: LatticeData, iters: int = 60) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return z
    for _ in range(iters):
        try:
            wp, dwp, _ = wp_eval(z, lat)
        except PoleProximity:
            break
        if dwp == 0:
            break
        step = (wp - x) / dwp
        # damp steps longer than a fraction of the shorter period
        cap = 0.25 * min(1.0, abs(lat.tau))
        if abs(step) > cap:
            step *= cap / abs(step)
        z = z - step
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            break
        if abs(step) < 1e-15 * (1 + abs(z)):
            break
    return z


def invert_wp(x: complex, lat: LatticeData) -> complex:
    """Return z in the centered fundamental parallelogram with wp(z) = x.

    The other preimage is -z modulo the lattice.
    """
    x = complex(x)
    if not (math.isfinite(x.real) and math.isfinite(x.imag)):
        raise DomainError("invert_wp needs a finite value")
    target = 1e-9 * (1 + abs(x))
    if abs(x) > 1e200:
        return reduce_to_cell(1 / cmath.sqrt(x), lat)

    def ok(z: complex) -> bool:
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            return False
        try:
            return abs(wp_eval(z, lat)[0] - x) <= 1e-2 * target
        except PoleProximity:
            return False

    seeds = []
    # near a critical value wp' vanishes; start from the quadratic expansion
    for i, ek in enumerate(lat.e, start=1):
        if abs(x - ek) <= 1e-6 * (1 + abs(x)):
            h = half_period(i, lat.tau)
            curv = 6 * ek * ek - lat.g2 / 2
            if x == ek or curv == 0:
                return reduce_to_cell(h, lat)
            seeds.append(h + cmath.sqrt(2 * (x - ek) / curv))
    seeds.append(complex(elliprf(x - lat.e1, x - lat.e2, x - lat.e3)))
    for z0 in seeds:
        z = _newton_wp(z0, x, lat)
        if ok(z):
            return reduce_to_cell(z, lat)
    grid = np.linspace(-0.45, 0.45, 7)
    cands = sorted(
        ((abs(wp_eval(a + b * lat.tau, lat)[0] - x), a + b * lat.tau)
         for a in grid for b in grid if abs(a) + abs(b) > 0.1),
        key=lambda p: p[0],
    )
    for _, z0 in cands[:8]:
        z = _newton_wp(complex(z0), x, lat)
        if ok(z):
            return reduce_to_cell(z, lat)
    raise ConvergenceFailure(f"could not invert wp at x={x}")
