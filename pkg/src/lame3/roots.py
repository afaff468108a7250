"""Polynomial roots by Aberth-Ehrlich iteration, with certification helpers."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sympoly import NumPoly

P = np.polynomial.polynomial

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class RootReport:
    roots: tuple[complex, ...]
    max_residual: float
    min_pairwise_gap: float
    all_real: bool
    distinct: bool = True
    real_tol: float = 0.0
    gap_tol: float = 0.0
    method: str = "aberth"
    converged: bool = True

    @property
    def scale(self) -> float:
        return 1.0 + max((abs(r) for r in self.roots), default=0.0)

    def to_dict(self) -> dict:
        return {
            "roots": [[float(r.real), float(r.imag)] for r in self.roots],
            "residual": float(self.max_residual),
            "gap": float(self.min_pairwise_gap),
            "all_real": bool(self.all_real),
            "distinct": bool(self.distinct),
            "method": self.method,
            "converged": bool(self.converged),
        }


ROOT_REPORT_SCHEMA = {
    "type": "object",
    "required": ["roots", "residual", "gap", "all_real"],
    "properties": {
        "roots": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        },
        "residual": {"type": "number", "minimum": 0},
        "gap": {"type": "number", "minimum": 0},
        "all_real": {"type": "boolean"},
        "distinct": {"type": "boolean"},
        "method": {"type": "string"},
        "converged": {"type": "boolean"},
    },
}


def relative_residual(c: np.ndarray, z: complex) -> float:
    """|p(z)| / sum |c_i| |z|^i, the backward-error style residual."""
    absz = abs(z)
    denom = float(np.sum(np.abs(c) * absz ** np.arange(len(c))))
    return abs(P.polyval(z, c)) / denom if denom else 0.0


def _initial(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    # radius from the geometric mean of the roots, bounded by the Cauchy radius
    lead = abs(c[-1])
    r = (abs(c[0]) / lead) ** (1.0 / n) if c[0] != 0 else 0.0
    cauchy = 1 + float(np.max(np.abs(c[:-1]))) / lead
    r = min(max(r, 1e-3 * cauchy), cauchy)
    ang = 2 * np.pi * np.arange(n) / n + 0.4
    shift = -c[-2] / (n * c[-1])
    return shift + r * np.exp(1j * ang)


def _aberth(c: np.ndarray, maxit: int = 500) -> tuple[np.ndarray, bool]:
    n = len(c) - 1
    dc = P.polyder(c)
    z = _initial(c)
    for _ in range(maxit):
        pz = P.polyval(z, c)
        dz = P.polyval(z, dc)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if np.all(np.abs(w) <= 1e-15 * (1 + np.abs(z))):
            return z, True
    res = max(relative_residual(c, zi) for zi in z)
    return z, res <= RESIDUAL_TOL


def _polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dc = P.polyder(c)
    out = z.copy()
    for k in range(len(out)):
        for _ in range(steps):
            d = P.polyval(out[k], dc)
            if d == 0:
                break
            step = P.polyval(out[k], c) / d
            cand = out[k] - step
            if relative_residual(c, cand) <= relative_residual(c, out[k]):
                out[k] = cand
            else:
                break
    return out


def _gap(z: np.ndarray) -> float:
    if len(z) < 2:
        return math.inf
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _sorted(z: np.ndarray) -> np.ndarray:
    return np.array(sorted(z, key=lambda t: (round(t.real, 12), round(t.imag, 12))))


def find_roots(p: NumPoly, real_tol: float = 1e-8, gap_tol: float = 0.0) -> RootReport:
    c = np.asarray(p.coeffs, dtype=complex)
    if len(c) < 2:
        raise DomainError("find_roots needs degree >= 1")
    if c[-1] == 0:
        raise DomainError("leading coefficient must be nonzero")
    c = c / c[-1]
    if len(c) == 2:
        z, ok, method = np.array([-c[0]]), True, "linear"
    else:
        z, ok = _aberth(c)
        method = "aberth"
        if ok:
            z = _polish(c, z)
        res = max(relative_residual(c, zi) for zi in z)
        if not ok or res > RESIDUAL_TOL:
            zc = _polish(c, np.roots(c[::-1]).astype(complex))
            rc = max(relative_residual(c, zi) for zi in zc)
            if rc < res or not ok:
                z, method = zc, "companion"
                ok = rc <= RESIDUAL_TOL
    z = _sorted(z)
    res = max(relative_residual(c, zi) for zi in z)
    scale = 1.0 + float(np.max(np.abs(z)))
    gap = _gap(z)
    all_real = bool(np.all(np.abs(z.imag) <= real_tol * scale))
    distinct = bool(gap >= gap_tol * scale)
    return RootReport(
        tuple(complex(x) for x in z),
        float(res),
        gap,
        all_real,
        distinct,
        real_tol,
        gap_tol,
        method,
        bool(ok and res <= RESIDUAL_TOL),
    )


def certify_real_distinct(p: NumPoly, real_tol: float = 1e-8, gap_tol: float = 1e-6) -> RootReport:
    """Roots with realness and separation flags judged against scale = 1 + max|root|."""
    return find_roots(p, real_tol=real_tol, gap_tol=gap_tol)


def sylvester_discriminant(p: NumPoly) -> complex:
    """Discriminant from the Sylvester matrix of p and p' (root-free)."""
    a = np.asarray(p.coeffs, dtype=complex)[::-1]  # descending
    n = len(a) - 1
    if n < 1:
        raise DomainError("discriminant needs degree >= 1")
    da = np.polyder(a)
    size = 2 * n - 1
    S = np.zeros((size, size), dtype=complex)
    for i in range(n - 1):
        S[i, i : i + n + 1] = a
    for i in range(n):
        S[n - 1 + i, i : i + n] = da
    res = np.linalg.det(S)
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * res / a[0]


__all__ = [
    "RootReport",
    "ROOT_REPORT_SCHEMA",
    "find_roots",
    "certify_real_distinct",
    "sylvester_discriminant",
    "relative_residual",
]
