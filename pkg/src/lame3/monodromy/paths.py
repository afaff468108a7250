"""Torus cycles based at z0, with detours around removable obstacles."""
from __future__ import annotations

import math
from typing import Iterable, Sequence

from ..elliptic import LatticeData
from ..errors import PathBlocked
from .integrate import PathSpec

BASE_COORDS = (0.37, 0.41)
# base-point offsets tried in order, in lattice coordinates (a, b): z0 = a + b tau
_OFFSETS = [(0.0, 0.0), (0.06, 0.0), (0.0, 0.06), (-0.06, 0.0), (0.0, -0.06), (0.06, 0.06), (-0.06, -0.06),
            (0.12, 0.0), (0.0, 0.12), (-0.12, 0.05), (0.05, -0.12)]


def min_clearance(lat: LatticeData) -> float:
    return 0.05 * min(1.0, lat.tau.imag)


def lattice_points(lat: LatticeData, lo: complex, hi: complex, pad: float) -> list[complex]:
    """Lattice points covering the box [lo, hi] enlarged by pad, with one extra layer on each side."""
    tau = lat.tau
    bmin = math.floor((min(lo.imag, hi.imag) - pad) / tau.imag) - 1
    bmax = math.ceil((max(lo.imag, hi.imag) + pad) / tau.imag) + 1
    out = []
    for b in range(bmin, bmax + 1):
        shift = b * tau.real
        amin = math.floor(min(lo.real, hi.real) - pad - shift) - 1
        amax = math.ceil(max(lo.real, hi.real) + pad - shift) + 1
        for a in range(amin, amax + 1):
            out.append(complex(a + b * tau))
    return out


def translates(points: Iterable[complex], lat: LatticeData, reach: int = 2) -> list[complex]:
    return [p + a + b * lat.tau for p in points for a in range(-reach, reach + 1) for b in range(-reach, reach + 1)]


def _seg_dist(c: complex, a: complex, b: complex) -> float:
    d = b - a
    t = ((c - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(c - (a + t * d))


def path_clearance(vertices: Sequence[complex], points: Iterable[complex]) -> float:
    pts = list(points)
    if not pts:
        return math.inf
    best = math.inf
    for a, b in zip(vertices, vertices[1:]):
        for c in pts:
            best = min(best, _seg_dist(c, a, b))
    return best


def _box(a: complex, b: complex) -> tuple[complex, complex]:
    return complex(min(a.real, b.real), min(a.imag, b.imag)), complex(max(a.real, b.real), max(a.imag, b.imag))


def _detour(a: complex, b: complex, obstacles: list[complex], clr: float, side_pref: int) -> list[complex]:
    """Straight segment a -> b with two-elbow bumps around obstacles closer than clr."""
    L = abs(b - a)
    d = (b - a) / L
    nrm = 1j * d
    hits = []
    for c in obstacles:
        rel = (c - a) * d.conjugate()
        s, o = rel.real, rel.imag
        if -clr < s < L + clr and abs(o) < clr:
            hits.append((s, o))
    if not hits:
        return [a, b]
    hits.sort()
    r = 2.0 * clr
    groups: list[list[tuple[float, float]]] = []
    for h in hits:
        if groups and h[0] - groups[-1][-1][0] < 2 * r:
            groups[-1].append(h)
        else:
            groups.append([h])
    verts = [a]
    for g in groups:
        s0, s1 = g[0][0] - r, g[-1][0] + r
        if s0 <= 0 or s1 >= L:
            raise PathBlocked("obstacle too close to the path endpoints")
        mean_o = sum(o for _, o in g) / len(g)
        side = side_pref * (-1 if mean_o > 0 else 1)
        H = side * (max(abs(o) for _, o in g) + r)
        verts += [a + s0 * d, a + s0 * d + H * nrm, a + s1 * d + H * nrm, a + s1 * d]
    verts.append(b)
    return verts


def cycle_path(
    z0: complex, omega: complex, lat: LatticeData, obstacles: Sequence[complex] = (), clearance: float | None = None
) -> PathSpec:
    """Polyline from z0 to z0 + omega clearing lattice points and detouring around obstacles."""
    clr = min_clearance(lat) if clearance is None else clearance
    a, b = complex(z0), complex(z0 + omega)
    lo, hi = _box(a, b)
    poles = lattice_points(lat, lo, hi, 1.0)
    if path_clearance([a, b], poles) < clr:
        raise PathBlocked("straight cycle segment passes too close to a lattice point")
    obs = [c for c in translates(obstacles, lat) if lo.real - 1 <= c.real <= hi.real + 1 and lo.imag - 1 <= c.imag <= hi.imag + 1]
    for side in (1, -1):
        verts = _detour(a, b, obs, clr, side)
        c_obs = path_clearance(verts, obs)
        c_pole = path_clearance(verts, poles)
        if c_obs >= 0.5 * clr and c_pole >= clr:
            return PathSpec(tuple(verts), min(c_obs, c_pole))
    raise PathBlocked(f"no detour clears the obstacles near {a} -> {b} at margin {clr}")


def base_point_candidates(lat: LatticeData) -> list[complex]:
    a0, b0 = BASE_COORDS
    return [complex((a0 + da) + (b0 + db) * lat.tau) for da, db in _OFFSETS]


def cycle_pair(lat: LatticeData, obstacles: Sequence[complex] = ()) -> tuple[complex, PathSpec, PathSpec]:
    """Base point and the two cycles, offsetting z0 until both paths are admissible."""
    clr = min_clearance(lat)
    last = None
    for z0 in base_point_candidates(lat):
        near = [c for c in translates(obstacles, lat) if abs(c - z0) < 2.5 * clr]
        if near:
            continue
        try:
            return z0, cycle_path(z0, 1.0, lat, obstacles, clr), cycle_path(z0, lat.tau, lat, obstacles, clr)
        except PathBlocked as exc:
            last = exc
    raise PathBlocked(f"no admissible base point: {last}")
