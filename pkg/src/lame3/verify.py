"""Acceptance checks, grouped into suites runnable from the command line."""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .elliptic import lattice_data, reduce_to_cell, wp_eval
from .monodromy import Tag, lame_monodromy, match_pairs, monodromy_pair, reduced_eigenvalue_check
from .recurrence import (
    apparent_polynomial,
    even_elliptic_solution,
    halfbasis_polynomial,
    lame_spectral_polynomial,
    problem_params,
    second_elliptic_polynomial,
    spectral_polynomial,
)
from .recurrence.zeros import elliptic_solution_zeros
from .roots import certify_real_distinct
from .sympoly import NumPoly, WeightedPoly, specialize

B_, G2, G3 = WeightedPoly.B(), WeightedPoly.g2(), WeightedPoly.g3()
TAUS = (1j, 0.5 + 1j, 0.3 + 0.8j)


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.criterion:>2} {self.name}: {self.detail} ({self.seconds:.2f}s / {self.budget:g}s)"

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
        }


def _rel_coeff_diff(a: np.ndarray, b: np.ndarray) -> float:
    n = max(len(a), len(b))
    a = np.pad(np.asarray(a, complex), (0, n - len(a)))
    b = np.pad(np.asarray(b, complex), (0, n - len(b)))
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


# individual criteria: each returns (passed, detail) ---------------------------

def c1_low_apparent():
    bad = []
    for l in (0, 2, 4):
        if apparent_polynomial(problem_params(1, l)) != B_:
            bad.append(f"P_1,{l}")
    for l in (0, 2):
        want = B_ * B_ - G2.scale(3 * (l + 2) ** 2)
        if apparent_polynomial(problem_params(3, l)) != want:
            bad.append(f"P_3,{l}")
    return not bad, "all exact" if not bad else f"mismatch: {bad}"


def c2_odd_odd_pair():
    bad = []
    for n, l in [(1, 1), (3, 1), (5, 1), (1, 3), (3, 3)]:
        pp = problem_params(n, l)
        if apparent_polynomial(pp) != second_elliptic_polynomial(pp):
            bad.append((n, l))
    return not bad, "P = Ptilde for 5 pairs" if not bad else f"mismatch at {bad}"


def c3_halfbasis():
    worst = 0.0
    for n, l in [(3, 0), (3, 2), (5, 0)]:
        P = apparent_polynomial(problem_params(n, l))
        for tau in (1j, 0.5 + 1j, 0.3 + 0.8j):
            lat = lattice_data(tau)
            ref = specialize(P, lat.g2, lat.g3).monic()
            for i in (1, 2, 3):
                hb = halfbasis_polynomial(problem_params(n, l), i, lat)
                worst = max(worst, _rel_coeff_diff(hb.coeffs, ref.coeffs))
    return worst <= 1e-8, f"max relative coefficient difference {worst:.2e}"


def c4_lame_bridge():
    bad = []
    for n in (0, 2, 4):
        Q = spectral_polynomial(problem_params(n, 1)).Q
        if Q != lame_spectral_polynomial(n + 2):
            bad.append(n)
    return not bad, "Q_n,1 = l_n+2 for n = 0, 2, 4" if not bad else f"mismatch at n = {bad}"


def c5_lame_oracles():
    l1 = B_ ** 3 - G2.scale(Fraction(1, 4)) * B_ - G3.scale(Fraction(1, 4))
    exact = lame_spectral_polynomial(1) == l1
    l2 = lame_spectral_polynomial(2)
    worst = 0.0
    for tau in TAUS:
        lat = lattice_data(tau)
        oracle = np.polynomial.polynomial.polyfromroots(
            [math.sqrt(3) * cmath.sqrt(lat.g2), -math.sqrt(3) * cmath.sqrt(lat.g2), -3 * lat.e1, -3 * lat.e2, -3 * lat.e3]
        )
        worst = max(worst, _rel_coeff_diff(specialize(l2, lat.g2, lat.g3).coeffs, oracle))
    return exact and worst <= 1e-9, f"l1 exact={exact}, l2 relative error {worst:.2e}"


def c6_degrees():
    from .recurrence import expected_degree

    bad = []
    for n in (1, 3, 5, 7):
        for l in (0, 1, 2, 3):
            d = apparent_polynomial(problem_params(n, l)).degree_b()
            if d != (n + 1) // 2:
                bad.append(("P", n, l, d))
    for n in (0, 2, 4):
        for l in (0, 1, 2, 3):
            if n == l == 0:
                continue
            want = 2 * n + 3 * l + 2 if l % 2 else n + 3 * l + 1
            d = spectral_polynomial(problem_params(n, l)).degree
            if d != want or expected_degree(n, l) != want:
                bad.append(("Q", n, l, d))
    return not bad, "degree table matches" if not bad else f"mismatch: {bad}"


def c7_even_monodromy():
    pp = problem_params(0, 1)
    lat = lattice_data(0.2 + 1.1j)
    worst = {"defect": 0.0, "det": 0.0, "pairing": 0.0, "route": 0.0}
    ok_tags = True
    for B in (2, 1 + 1j, -3j):
        rep = monodromy_pair(pp, B, lat)
        worst["defect"] = max(worst["defect"], rep.commutator_defect)
        worst["det"] = max(worst["det"], *(abs(d - 1) for d in rep.dets))
        for tri in rep.eigen:
            k = min(range(3), key=lambda i: abs(tri[i] - 1))
            others = [tri[i] for i in range(3) if i != k]
            worst["pairing"] = max(worst["pairing"], abs(tri[k] - 1), abs(others[0] * others[1] - 1))
        ok_tags &= rep.classification.tag in (Tag.DIAGONALIZABLE, Tag.UNITARY)
        lam = rep.classification.lambdas
        red = reduced_eigenvalue_check(pp, B, lat)
        worst["route"] = max(worst["route"], match_pairs(lam, red) if lam else math.inf)
    ok = ok_tags and worst["defect"] <= 1e-6 and worst["det"] <= 1e-7 and worst["pairing"] <= 1e-6 and worst["route"] <= 1e-6
    return ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def c8_klein_four():
    lat = lattice_data(1j)
    r = cmath.sqrt(12 * lat.g2)
    cases = [((1, 0), 0), ((3, 0), r), ((3, 0), -r)]
    worst_sq, worst_tr = 0.0, 0.0
    for (n, l), B in cases:
        rep = monodromy_pair(problem_params(n, l), B, lat)
        I = np.eye(3)
        for N in (rep.N1, rep.N2):
            worst_sq = max(worst_sq, float(np.linalg.norm(N @ N - I)))
        for t in (np.trace(rep.N1), np.trace(rep.N2), np.trace(rep.N1 @ rep.N2)):
            worst_tr = max(worst_tr, abs(t + 1))
    return worst_sq <= 1e-5 and worst_tr <= 1e-5, f"max |N^2 - I| {worst_sq:.1e}, trace error {worst_tr:.1e}"


def c9_unipotent():
    rep = monodromy_pair(problem_params(1, 1), 0, lattice_data(1j))
    eig = max(abs(z - 1) for tri in rep.eigen for z in tri)
    dev = max(float(np.linalg.norm(N - np.eye(3))) for N in (rep.N1, rep.N2))
    ok = rep.commutator_defect <= 1e-6 and eig <= 1e-4 and dev >= 1e-3
    return ok, f"defect {rep.commutator_defect:.1e}, max |eig - 1| {eig:.1e}, max |N - I| {dev:.2f}"


def c10_non_apparent():
    rep = monodromy_pair(problem_params(1, 0), 1, lattice_data(1j))
    return rep.commutator_defect >= 1e-3, f"defect {rep.commutator_defect:.3f}, tag {rep.classification.tag.value}"


def c11_real_roots():
    lat = lattice_data(1j)
    details, ok = [], True
    for n, l in [(5, 0), (5, 2), (3, 1), (5, 1)]:
        p = specialize(apparent_polynomial(problem_params(n, l)), lat.g2, lat.g3)
        p = NumPoly.from_coeffs(np.real_if_close(p.coeffs, tol=1e3))
        rep = certify_real_distinct(p, 1e-8, 1e-6)
        ok &= rep.all_real and rep.distinct and rep.converged
        details.append(f"P_{n},{l}: gap {rep.min_pairwise_gap / rep.scale:.2e}")
    return ok, "; ".join(details)


def c12_weierstrass():
    rng = np.random.default_rng(20240611)
    taus = (1j, 0.5 + 1j, 0.3 + 0.8j, -0.4 + 1.5j, 0.1 + 2.3j)
    worst_id, worst_leg = 0.0, 0.0
    for tau in taus:
        lat = lattice_data(tau)
        for _ in range(100):
            a, b = rng.uniform(-0.5, 0.5, 2)
            z = a + b * tau
            if abs(reduce_to_cell(z, lat)) < 0.05:
                z += 0.1
            wp, dwp, _ = wp_eval(z, lat)
            lhs, rhs = dwp * dwp, 4 * wp**3 - lat.g2 * wp - lat.g3
            worst_id = max(worst_id, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
        worst_leg = max(worst_leg, abs(lat.eta1 * tau - lat.eta2 - 2j * math.pi))
    g3i = abs(lattice_data(1j).g3)
    ok = worst_id <= 1e-10 and worst_leg <= 1e-10 and g3i <= 1e-12
    return ok, f"identity {worst_id:.1e}, Legendre {worst_leg:.1e}, |g3(i)| {g3i:.1e}"


def c13_zero_collapse():
    pp = problem_params(0, 3)
    sol = even_elliptic_solution(pp)
    lat = lattice_data(1j)
    sizes, bounds = [], []
    for B in (10, 100, 1000):
        zs = elliptic_solution_zeros(sol, B, lat)
        sizes.append(max(abs(reduce_to_cell(z, lat)) for z in zs))
        bounds.append(2 * math.sqrt(24 / B))
    ok = sizes[0] > sizes[1] > sizes[2] and all(s <= b for s, b in zip(sizes, bounds))
    return ok, "max|p_j| = " + ", ".join(f"{s:.4f} (<= {b:.4f})" for s, b in zip(sizes, bounds))


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]], float]] = {
    1: ("apparent polynomials for n = 1, 3", c1_low_apparent, 1),
    2: ("P = Ptilde in the odd-odd regime", c2_odd_odd_pair, 5),
    3: ("half-basis polynomials match P numerically", c3_halfbasis, 10),
    4: ("Q_n,1 equals the Lame polynomial l_n+2", c4_lame_bridge, 10),
    5: ("Lame oracles l1, l2", c5_lame_oracles, 5),
    6: ("degree table for P and Q", c6_degrees, 10),
    7: ("even-n monodromy (0,1)", c7_even_monodromy, 30),
    8: ("Klein four-group monodromy", c8_klein_four, 30),
    9: ("odd-odd unipotent monodromy", c9_unipotent, 30),
    10: ("non-apparent detection", c10_non_apparent, 10),
    11: ("real distinct roots at tau = i", c11_real_roots, 5),
    12: ("Weierstrass layer", c12_weierstrass, 5),
    13: ("zero collapse for (0,3)", c13_zero_collapse, 5),
}

SUITES: dict[str, tuple[int, ...]] = {
    "weierstrass": (12,),
    "parity-odd-odd": (2, 6, 9, 11),
    "parity-odd-even": (1, 3, 8, 10, 11),
    "parity-even": (6, 7, 13),
    "lame-bridge": (4, 5),
}


def run_criterion(k: int) -> Check:
    name, fn, budget = CRITERIA[k]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported rather than raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if dt > budget:
        ok, detail = False, detail + f"; over runtime budget"
    return Check(k, name, bool(ok), detail, dt, budget)


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [run_criterion(k) for k in SUITES[name]]


def run_all() -> list[Check]:
    return [run_criterion(k) for k in sorted(CRITERIA)]
