"""Adaptive Dormand-Prince 5(4) transport of fundamental matrices along polylines."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError, StepUnderflow, ToleranceNotMet

# Dormand-Prince tableau
_C = np.array([0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1, 1])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0])
_B4 = np.array([5179 / 57600, 0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

MAX_STEPS = 200_000
MIN_STEP = 1e-13


@dataclass(frozen=True)
class PathSpec:
    """Polyline in the complex plane with its minimum distance to excluded points."""

    vertices: tuple[complex, ...]
    clearance: float = float("inf")

    def __post_init__(self):
        if len(self.vertices) < 1:
            raise DomainError("a path needs at least one vertex")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise DomainError("consecutive path vertices must differ")

    @property
    def start(self) -> complex:
        return self.vertices[0]

    @property
    def end(self) -> complex:
        return self.vertices[-1]

    def reversed(self) -> "PathSpec":
        return PathSpec(tuple(reversed(self.vertices)), self.clearance)

    def __add__(self, other: "PathSpec") -> "PathSpec":
        if self.end != other.start:
            raise DomainError("paths do not join")
        return PathSpec(self.vertices + other.vertices[1:], min(self.clearance, other.clearance))


@dataclass
class IntegrationStats:
    steps: int = 0
    rejected: int = 0
    evaluations: int = 0


def _segment(
    matrix: Callable[[complex], np.ndarray],
    za: complex,
    zb: complex,
    W: np.ndarray,
    tol: float,
    stats: IntegrationStats,
    h0: float,
) -> tuple[np.ndarray, float]:
    dz = zb - za

    def f(t: float, Y: np.ndarray) -> np.ndarray:
        stats.evaluations += 1
        return dz * (matrix(za + t * dz) @ Y)

    t, h = 0.0, min(h0, 1.0)
    K = [None] * 7
    K[0] = f(0.0, W)
    steps = 0
    while t < 1.0:
        if steps > MAX_STEPS:
            raise ToleranceNotMet(f"more than {MAX_STEPS} steps on segment {za} -> {zb}")
        h = min(h, 1.0 - t)
        for s in range(1, 7):
            acc = W.copy()
            for j, a in enumerate(_A[s]):
                if a:
                    acc = acc + (h * a) * K[j]
            K[s] = f(t + _C[s] * h, acc)
        Wn = acc  # the seventh stage point equals the fifth-order solution
        err = sum((h * e) * K[j] for j, e in enumerate(_E) if e)
        scale = tol + tol * np.maximum(np.abs(W), np.abs(Wn))
        en = float(np.sqrt(np.mean(np.abs(err / scale) ** 2)))
        if not np.isfinite(en):
            en = 1e10
        if en <= 1.0:
            t += h
            W = Wn
            K[0] = K[6]
            steps += 1
            stats.steps += 1
            fac = 5.0 if en == 0 else min(5.0, max(0.2, 0.9 * en ** -0.2))
        else:
            stats.rejected += 1
            fac = max(0.1, 0.9 * en ** -0.2)
        h *= fac
        if h < MIN_STEP and t < 1.0:
            raise StepUnderflow(f"step size collapsed near z = {za + t * dz}")
    return W, h


def transport(
    matrix: Callable[[complex], np.ndarray],
    path: PathSpec,
    tol: float,
    order: int,
    stats: IntegrationStats | None = None,
) -> np.ndarray:
    """Fundamental matrix at the path end, starting from the identity."""
    if not 1e-12 <= tol <= 1e-4:
        raise DomainError(f"tol must lie in [1e-12, 1e-4], got {tol}")
    stats = stats if stats is not None else IntegrationStats()
    W = np.eye(order, dtype=complex)
    for za, zb in zip(path.vertices, path.vertices[1:]):
        W, _ = _segment(matrix, za, zb, W, tol, stats, 0.05)
    return W


def polyline(points: Sequence[complex], clearance: float = float("inf")) -> PathSpec:
    return PathSpec(tuple(complex(p) for p in points), clearance)
