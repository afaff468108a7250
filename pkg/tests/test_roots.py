import cmath

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lame3.elliptic import lattice_data
from lame3.errors import DomainError
from lame3.recurrence import apparent_polynomial, lame_spectral_polynomial, problem_params
from lame3.roots import ROOT_REPORT_SCHEMA, certify_real_distinct, find_roots, sylvester_discriminant
from lame3.sympoly import NumPoly, specialize

P = np.polynomial.polynomial
roots_st = st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=1, max_size=8)


def matched(found, want, tol):
    rest = list(want)
    for z in found:
        k = int(np.argmin([abs(z - w) for w in rest]))
        if abs(z - rest[k]) > tol:
            return False
        rest.pop(k)
    return True


def test_cubic_example():
    rep = find_roots(NumPoly.from_coeffs(P.polyfromroots([1, 2, 3])))
    assert np.allclose(rep.roots, [1, 2, 3], atol=1e-12)
    assert rep.all_real and rep.converged


def test_l1_roots_are_half_period_values():
    lat = lattice_data(0.3 + 0.9j)
    rep = find_roots(specialize(lame_spectral_polynomial(1), lat.g2, lat.g3))
    assert matched(rep.roots, lat.e, 1e-9 * (1 + max(abs(e) for e in lat.e)))


def test_p30_roots(lat_i):
    rep = certify_real_distinct(specialize(apparent_polynomial(problem_params(3, 0)), lat_i.g2, lat_i.g3))
    r = 2 * cmath.sqrt(3 * lat_i.g2)
    assert rep.all_real and rep.distinct
    assert matched(rep.roots, [r, -r], 1e-9 * abs(r))


def test_not_real():
    rep = certify_real_distinct(NumPoly.from_coeffs([1, 0, 1]))
    assert not rep.all_real


@pytest.mark.parametrize("n,l", [(5, 0), (5, 2), (3, 1), (5, 1), (7, 0), (7, 1)])
def test_real_distinct_on_square_lattice(n, l, lat_i):
    p = specialize(apparent_polynomial(problem_params(n, l)), lat_i.g2, lat_i.g3)
    rep = certify_real_distinct(p, 1e-8, 1e-6)
    assert len(rep.roots) == (n + 1) // 2
    assert rep.all_real and rep.distinct


@given(roots_st)
def test_recovers_random_roots(rs):
    # keep roots separated so the check is about the solver, not conditioning
    rs = [r for i, r in enumerate(rs) if all(abs(r - q) > 0.5 for q in rs[:i])]
    rep = find_roots(NumPoly.from_coeffs(P.polyfromroots(rs)))
    assert len(rep.roots) == len(rs)
    assert rep.max_residual <= 1e-10
    assert matched(rep.roots, rs, 1e-6 * (1 + max(abs(r) for r in rs)))


@given(roots_st, st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_scaling_invariance(rs, c):
    rs = [r for i, r in enumerate(rs) if all(abs(r - q) > 0.5 for q in rs[:i])]
    coeffs = P.polyfromroots(rs)
    a = find_roots(NumPoly.from_coeffs(coeffs))
    b = find_roots(NumPoly.from_coeffs(coeffs * c))
    assert matched(a.roots, b.roots, 1e-8 * (1 + max(abs(r) for r in rs)))


def test_discriminant_vs_gap():
    rng = np.random.default_rng(5)
    for _ in range(20):
        rs = rng.normal(size=3) + 1j * rng.normal(size=3)
        if rng.random() < 0.3:
            rs[2] = rs[1]
        p = NumPoly.from_coeffs(P.polyfromroots(rs))
        d = sylvester_discriminant(p)
        want = np.prod([(rs[i] - rs[j]) ** 2 for i in range(3) for j in range(i + 1, 3)])
        assert abs(d - want) <= 1e-8 * max(1.0, abs(want))
        rep = find_roots(p)
        assert (abs(d) > 1e-12) == (rep.min_pairwise_gap > 1e-5)


def test_report_schema():
    rep = find_roots(NumPoly.from_coeffs([2, -3, 1]))
    jsonschema.validate(rep.to_dict(), ROOT_REPORT_SCHEMA)


def test_degree_zero_rejected():
    with pytest.raises(DomainError):
        find_roots(NumPoly.from_coeffs([3.0]))
