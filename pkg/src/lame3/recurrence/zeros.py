"""Zeros of an even elliptic solution in the fundamental cell."""
from __future__ import annotations

from ..elliptic import LatticeData, invert_wp, reduce_to_cell
from ..errors import DomainError
from ..roots import find_roots
from ..sympoly import NumPoly
from .even import EllipticSolution


def elliptic_solution_zeros(sol: EllipticSolution, B: complex, lat: LatticeData) -> list[complex]:
    """The 2k zeros +-p_j of y0 = sum C_j(B) wp^j, each x-root giving a pair."""
    c = sol.specialize(B, lat.g2, lat.g3)
    if sol.degree == 0:
        return []
    if c[-1] == 0:
        raise DomainError("leading coefficient vanishes at this B")
    report = find_roots(NumPoly.from_coeffs(c))
    out = []
    for x in report.roots:
        z = invert_wp(x, lat)
        out.extend([z, reduce_to_cell(-z, lat)])
    return out
