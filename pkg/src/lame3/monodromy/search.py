"""Grid plus Newton search for B with unitary monodromy (n even)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..elliptic import LatticeData
from ..errors import Lame3Error, RegimeError
from ..recurrence import ProblemParams
from .core import DEFAULT_TOL, MonodromyReport, Tag, _nontrivial_pairs, classify, monodromy_pair

CERTIFY_TOL = 1e-8
NOT_FOUND = "not found at this resolution"


@dataclass(frozen=True)
class GridSpec:
    """Rectangle [re_min, re_max] x [im_min, im_max] sampled at n_re x n_im points."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    n_re: int = 5
    n_im: int = 5

    def __post_init__(self):
        if self.n_re < 2 or self.n_im < 2:
            raise ValueError("grid resolution must be at least 2 per axis")
        if not (self.re_min <= self.re_max and self.im_min <= self.im_max):
            raise ValueError("grid bounds are inverted")

    def points(self) -> list[complex]:
        xs = np.linspace(self.re_min, self.re_max, self.n_re)
        ys = np.linspace(self.im_min, self.im_max, self.n_im)
        return [complex(x, y) for y in ys for x in xs]


@dataclass(frozen=True)
class SearchResult:
    found: bool
    B: complex | None
    report: MonodromyReport | None = field(repr=False)
    status: str
    evaluations: int
    best_residual: float

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "B": None if self.B is None else [self.B.real, self.B.imag],
            "status": self.status,
            "evaluations": self.evaluations,
            "best_residual": self.best_residual,
            "classification": None if self.report is None else self.report.classification.tag.value,
        }


def _logs(rep: MonodromyReport, prev: np.ndarray | None) -> np.ndarray | None:
    """(log|l1|, log|l2|) of a nontrivial joint pair, the branch nearest prev."""
    if rep.classification.tag in (Tag.NON_APPARENT, Tag.INDETERMINATE, Tag.UNIPOTENT):
        return None
    nt = _nontrivial_pairs(list(rep.joint), 0)
    cands = [np.array([math.log(abs(a)), math.log(abs(b))]) for a, b in nt if a != 0 and b != 0]
    if not cands:
        return None
    if prev is None:
        return max(cands, key=lambda v: tuple(np.round(v, 9)))
    return min(cands, key=lambda v: float(np.linalg.norm(v - prev)))


def unitarity_search(
    pp: ProblemParams,
    lat: LatticeData,
    grid: GridSpec,
    tol: float = DEFAULT_TOL,
    seeds: int = 3,
    max_newton: int = 15,
) -> SearchResult:
    """Certified B with both ||l_j| - 1| <= 1e-8, or a resolution-bounded negative report."""
    if pp.n % 2:
        raise RegimeError("unitarity search covers the n even regime only")
    evals = 0

    def logs_at(B, prev=None):
        nonlocal evals
        evals += 1
        try:
            rep = monodromy_pair(pp, B, lat, tol)
        except Lame3Error:
            return None, None
        return rep, _logs(rep, prev)

    scored = []
    for B in grid.points():
        _, v = logs_at(B)
        if v is not None:
            scored.append((float(np.max(np.abs(v))), B))
    scored.sort(key=lambda t: (t[0], t[1].real, t[1].imag))
    best = scored[0][0] if scored else math.inf
    h = 1e-4 * max(1.0, grid.re_max - grid.re_min, grid.im_max - grid.im_min)

    for _, B in scored[:seeds]:
        rep, v = logs_at(B)
        for _ in range(max_newton):
            if v is None:
                break
            best = min(best, float(np.max(np.abs(v))))
            if np.max(np.abs(v)) <= CERTIFY_TOL:
                final = classify(rep, CERTIFY_TOL)
                if final.tag is Tag.UNITARY:
                    rep = replace(rep, classification=final)
                    return SearchResult(True, B, rep, "certified", evals, best)
                break
            _, vx = logs_at(B + h, v)
            _, vy = logs_at(B + 1j * h, v)
            if vx is None or vy is None:
                break
            J = np.column_stack([(vx - v) / h, (vy - v) / h])
            try:
                dx, dy = np.linalg.solve(J, -v)
            except np.linalg.LinAlgError:
                break
            step = complex(dx, dy)
            span = max(grid.re_max - grid.re_min, grid.im_max - grid.im_min, 1.0)
            if abs(step) > span:
                step *= span / abs(step)
            B = B + step
            rep, v = logs_at(B, v)
    return SearchResult(False, None, None, NOT_FOUND, evals, best)


__all__ = ["GridSpec", "SearchResult", "unitarity_search", "NOT_FOUND", "CERTIFY_TOL"]
