"""Monodromy pairs around the two torus cycles and their classification."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from ..elliptic import LatticeData
from ..errors import PathBlocked, RegimeError
from ..recurrence import ProblemParams
from ..recurrence.zeros import elliptic_solution_zeros
from .integrate import IntegrationStats, PathSpec, transport
from .paths import cycle_pair
from .systems import ODESystem, build_system

DEFAULT_TOL = 1e-10
C_PRIMARY = 0.6180339887498949
C_CONFIRM = -1.3247179572447460
NONAPPARENT_FACTOR = 1e3
UNIPOTENT_FACTOR = 1e3


class Tag(str, Enum):
    NON_APPARENT = "NonApparent"
    DIAGONALIZABLE = "DiagonalizablePair"
    UNITARY = "Unitary"
    KLEIN_FOUR = "KleinFour"
    UNIPOTENT = "UnipotentNontrivial"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Classification:
    tag: Tag
    lambdas: tuple[complex, complex] | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"tag": self.tag.value, "detail": self.detail}
        out["lambdas"] = None if self.lambdas is None else [[z.real, z.imag] for z in self.lambdas]
        return out


def _cmat(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


@dataclass(frozen=True)
class MonodromyReport:
    n: int | None
    l: int | None
    B: complex
    tau: complex
    N1: np.ndarray = field(repr=False)
    N2: np.ndarray = field(repr=False)
    base_point: complex
    ode_tol: float
    commutator_defect: float
    dets: tuple[complex, complex]
    eigen: tuple[tuple[complex, ...], tuple[complex, ...]]
    joint: tuple[tuple[complex, complex], ...] = ()
    classification: Classification | None = None
    kind: str = "third"

    @property
    def order(self) -> int:
        return self.N1.shape[0]

    def to_json(self) -> dict:
        cls = self.classification
        return {
            "n": self.n,
            "l": self.l,
            "kind": self.kind,
            "B": [self.B.real, self.B.imag],
            "tau": [self.tau.real, self.tau.imag],
            "base_point": [self.base_point.real, self.base_point.imag],
            "N1": _cmat(self.N1),
            "N2": _cmat(self.N2),
            "commutator_defect": self.commutator_defect,
            "dets": [[d.real, d.imag] for d in self.dets],
            "eigenvalues": [[[z.real, z.imag] for z in tri] for tri in self.eigen],
            "classification": cls.tag.value if cls else None,
            "lambdas": None if cls is None or cls.lambdas is None else [[z.real, z.imag] for z in cls.lambdas],
            "ode_tol": self.ode_tol,
        }


_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _PAIR}}
MONODROMY_REPORT_SCHEMA = {
    "type": "object",
    "required": ["n", "l", "B", "tau", "N1", "N2", "commutator_defect", "eigenvalues", "classification", "ode_tol"],
    "properties": {
        "n": {"type": ["integer", "null"]},
        "l": {"type": ["integer", "null"]},
        "B": _PAIR,
        "tau": _PAIR,
        "N1": _MATRIX,
        "N2": _MATRIX,
        "commutator_defect": {"type": "number", "minimum": 0},
        "eigenvalues": {"type": "array", "items": {"type": "array", "items": _PAIR}, "minItems": 2, "maxItems": 2},
        "classification": {"enum": [t.value for t in Tag] + [None]},
        "lambdas": {"anyOf": [{"type": "null"}, {"type": "array", "items": _PAIR}]},
        "ode_tol": {"type": "number", "exclusiveMinimum": 0},
    },
}


def transfer_matrix(sys: ODESystem, path: PathSpec, tol: float = DEFAULT_TOL, stats: IntegrationStats | None = None):
    """Fundamental matrix continued along the path, identity at the start."""
    if len(path.vertices) == 1:
        return np.eye(sys.order, dtype=complex)
    return transport(sys.matrix, path, tol, sys.order, stats)


def _obstacles(sys: ODESystem) -> list[complex]:
    if sys.kind != "reduced2":
        return []
    zs = elliptic_solution_zeros(sys.y0, sys.B, sys.lat)
    return [complex(z) for z in zs]


def _pair(sys: ODESystem, tol: float) -> tuple[complex, np.ndarray, np.ndarray]:
    z0, p1, p2 = cycle_pair(sys.lat, _obstacles(sys))
    return z0, transfer_matrix(sys, p1, tol), transfer_matrix(sys, p2, tol)


def _joint(N1: np.ndarray, N2: np.ndarray, c: float) -> list[tuple[complex, complex]]:
    _, V = np.linalg.eig(N1 + c * N2)
    out = []
    for k in range(V.shape[1]):
        v = V[:, k]
        vv = np.vdot(v, v)
        out.append((complex(np.vdot(v, N1 @ v) / vv), complex(np.vdot(v, N2 @ v) / vv)))
    return out


def _report(sys: ODESystem, z0, N1, N2, tol) -> MonodromyReport:
    pp = sys.params
    defect = float(np.linalg.norm(N1 @ N2 - N2 @ N1))
    eig = tuple(tuple(complex(x) for x in _sort(np.linalg.eigvals(N))) for N in (N1, N2))
    rep = MonodromyReport(
        pp.n if pp else None,
        pp.l if pp else None,
        sys.B,
        sys.lat.tau,
        N1,
        N2,
        z0,
        tol,
        defect,
        (complex(np.linalg.det(N1)), complex(np.linalg.det(N2))),
        eig,
        tuple(_joint(N1, N2, C_PRIMARY)),
        kind=sys.kind,
    )
    return replace(rep, classification=classify(rep, max(tol, 1e-8)))


def _sort(z) -> list[complex]:
    return sorted((complex(x) for x in z), key=lambda t: (round(t.real, 6), round(t.imag, 6)))


def monodromy_pair(
    pp: ProblemParams, B: complex, lat: LatticeData, tol: float = DEFAULT_TOL, kind: str = "third"
) -> MonodromyReport:
    """N1 along z0 -> z0 + 1 and N2 along z0 -> z0 + tau, classified."""
    sys = build_system(pp, B, lat, kind)
    z0, N1, N2 = _pair(sys, tol)
    return _report(sys, z0, N1, N2, tol)


# classification ------------------------------------------------------------

def _diagonalizable(N: np.ndarray, tol: float) -> bool:
    """Cluster eigenvalues and check the geometric multiplicity of each cluster."""
    w = np.linalg.eigvals(N)
    scale = max(1.0, float(np.linalg.norm(N)))
    delta = math.sqrt(tol) * scale
    used = [False] * len(w)
    for i in range(len(w)):
        if used[i]:
            continue
        members = [j for j in range(len(w)) if not used[j] and abs(w[j] - w[i]) <= 10 * delta]
        for j in members:
            used[j] = True
        r = len(members)
        if r < 2:
            continue
        mu = np.mean(w[members])
        sv = np.linalg.svd(N - mu * np.eye(len(w)), compute_uv=False)
        if sv[-r] > 100 * delta:
            return False
    return True


def _nontrivial_pairs(pairs, tol) -> list[tuple[complex, complex]]:
    """Drop the joint pair closest to (1, 1)."""
    if len(pairs) < 3:
        return list(pairs)
    k = min(range(len(pairs)), key=lambda i: abs(pairs[i][0] - 1) + abs(pairs[i][1] - 1))
    return [p for i, p in enumerate(pairs) if i != k]


def canonical_pair(pairs) -> tuple[complex, complex]:
    """Deterministic representative among {(l1, l2), (1/l1, 1/l2)}."""
    def key(p):
        a, b = math.log(abs(p[0])), math.log(abs(p[1]))
        return (round(a, 7), round(b, 7), round(cmath.phase(p[0]), 7))

    return max(pairs, key=key)


def _same_multiset(a, b, tol) -> bool:
    rest = list(b)
    for x in a:
        if not rest:
            return False
        k = min(range(len(rest)), key=lambda i: abs(rest[i][0] - x[0]) + abs(rest[i][1] - x[1]))
        if abs(rest[k][0] - x[0]) + abs(rest[k][1] - x[1]) > tol:
            return False
        rest.pop(k)
    return True


def classify(report: MonodromyReport, tol: float = 1e-6) -> Classification:
    N1, N2 = report.N1, report.N2
    dim = N1.shape[0]
    I = np.eye(dim)
    n1, n2 = float(np.linalg.norm(N1)), float(np.linalg.norm(N2))
    scale = max(1.0, n1 * n2)
    if report.commutator_defect > NONAPPARENT_FACTOR * tol * scale:
        return Classification(Tag.NON_APPARENT, None, f"defect {report.commutator_defect:.3e}")

    sq = max(float(np.linalg.norm(N @ N - I)) / max(1.0, float(np.linalg.norm(N)) ** 2) for N in (N1, N2))
    if dim == 3 and sq <= 10 * tol:
        tr = [np.trace(N1), np.trace(N2), np.trace(N1 @ N2)]
        if all(abs(t + 1) <= 10 * tol * scale for t in tr):
            return Classification(Tag.KLEIN_FOUR, None, "traces (-1,-1,-1)")

    if _diagonalizable(N1, tol) and _diagonalizable(N2, tol):
        p1, p2 = _joint(N1, N2, C_PRIMARY), _joint(N1, N2, C_CONFIRM)
        if _same_multiset(p1, p2, math.sqrt(tol) * scale):
            nt = _nontrivial_pairs(p1, tol)
            lam = canonical_pair(nt)
            if all(abs(abs(z) - 1) <= tol for p in nt for z in p):
                return Classification(Tag.UNITARY, lam, "diagonalizable, unimodular")
            return Classification(Tag.DIAGONALIZABLE, lam, "")

    eigs = np.concatenate([np.linalg.eigvals(N1), np.linalg.eigvals(N2)])
    if np.all(np.abs(eigs - 1) <= 10 * math.sqrt(tol)):
        dev = max(float(np.linalg.norm(N1 - I)), float(np.linalg.norm(N2 - I)))
        if dev >= UNIPOTENT_FACTOR * tol:
            return Classification(Tag.UNIPOTENT, None, f"max |N_j - I| = {dev:.3e}")
    return Classification(Tag.INDETERMINATE, None, "")


# auxiliary routes ----------------------------------------------------------

@dataclass(frozen=True)
class PairResult:
    """2x2 monodromy pair with its joint multipliers."""

    N1: np.ndarray = field(repr=False)
    N2: np.ndarray = field(repr=False)
    base_point: complex
    pairs: tuple[tuple[complex, complex], ...]
    dets: tuple[complex, complex]
    eigen: tuple[tuple[complex, ...], tuple[complex, ...]]
    commutator_defect: float

    @property
    def lambdas(self) -> tuple[complex, complex]:
        return canonical_pair(self.pairs)


def _pair_result(z0, N1, N2) -> PairResult:
    return PairResult(
        N1,
        N2,
        z0,
        tuple(_joint(N1, N2, C_PRIMARY)),
        (complex(np.linalg.det(N1)), complex(np.linalg.det(N2))),
        tuple(tuple(_sort(np.linalg.eigvals(N))) for N in (N1, N2)),
        float(np.linalg.norm(N1 @ N2 - N2 @ N1)),
    )


def reduced_monodromy(pp: ProblemParams, B: complex, lat: LatticeData, tol: float = DEFAULT_TOL) -> PairResult:
    if pp.n % 2:
        raise RegimeError("the reduced equation route is for n even")
    sys = build_system(pp, B, lat, "reduced2")
    return _pair_result(*_pair(sys, tol))


def reduced_eigenvalue_check(
    pp: ProblemParams, B: complex, lat: LatticeData, tol: float = DEFAULT_TOL
) -> tuple[complex, complex]:
    """Common-eigenvector multipliers (lambda1, lambda2) of the reduced second-order pair."""
    return reduced_monodromy(pp, B, lat, tol).lambdas


def lame_monodromy(m: int, B: complex, lat: LatticeData, tol: float = DEFAULT_TOL) -> PairResult:
    sys = build_system(None, B, lat, "lame", m=m)
    return _pair_result(*_pair(sys, tol))


def match_pairs(a, b) -> float:
    """Distance between two lambda pairs up to simultaneous inversion."""
    (x1, x2), (y1, y2) = a, b
    direct = max(abs(x1 - y1), abs(x2 - y2))
    inv = max(abs(x1 - 1 / y1), abs(x2 - 1 / y2))
    return min(direct, inv)


__all__ = [
    "Tag",
    "Classification",
    "MonodromyReport",
    "MONODROMY_REPORT_SCHEMA",
    "PairResult",
    "transfer_matrix",
    "monodromy_pair",
    "classify",
    "canonical_pair",
    "reduced_monodromy",
    "reduced_eigenvalue_check",
    "lame_monodromy",
    "match_pairs",
    "PathBlocked",
]
