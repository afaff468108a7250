import cmath
from dataclasses import replace

import jsonschema
import numpy as np
import pytest

from lame3.elliptic import lattice_data, wp_eval
from lame3.errors import DomainError, PathBlocked, RegimeError
from lame3.monodromy import (
    MONODROMY_REPORT_SCHEMA,
    NOT_FOUND,
    GridSpec,
    Tag,
    build_system,
    classify,
    cycle_path,
    lame_monodromy,
    match_pairs,
    monodromy_pair,
    polyline,
    reduced_monodromy,
    transfer_matrix,
    unitarity_search,
)
from lame3.monodromy.paths import base_point_candidates, min_clearance, path_clearance
from lame3.recurrence import elliptic_solution_zeros, even_elliptic_solution, problem_params
from lame3.sympoly import specialize
from lame3.recurrence import lame_spectral_polynomial

TAU_A = 0.2 + 1.1j


@pytest.fixture(scope="module")
def lat_a():
    return lattice_data(TAU_A)


def nearest_one(tri):
    k = min(range(3), key=lambda i: abs(tri[i] - 1))
    return tri[k], [tri[i] for i in range(3) if i != k]


# systems -------------------------------------------------------------------------

def test_third_order_coefficients(lat_a):
    z = 0.3 + 0.2j
    wp, dwp, _ = wp_eval(z, lat_a)
    A = build_system(problem_params(0, 1), 2.0, lat_a).matrix(z)
    assert A[2, 0] == 0
    assert abs(A[2, 1] - (6 * wp + 2)) <= 1e-12 * abs(wp)
    pp = problem_params(2, 2)
    D = build_system(pp, 1.0, lat_a, "dual").matrix(z)
    assert abs(D[2, 0] - (pp.alpha + pp.beta) * dwp) <= 1e-12 * abs(dwp) * pp.alpha


def test_lame_half_period_solution(lat_a):
    # y = (wp - e1)^{1/2} solves y'' = (2 wp + e1) y
    e1 = lat_a.e1
    sysm = build_system(None, e1, lat_a, "lame", m=1)
    for z in (0.3 + 0.2j, -0.1 + 0.4j):
        wp, dwp, ddwp = wp_eval(z, lat_a)
        y = cmath.sqrt(wp - e1)
        ypp = ddwp / (2 * y) - dwp**2 / (4 * y**3)
        A = sysm.matrix(z)
        assert abs(ypp - A[1, 0] * y) <= 1e-10 * abs(ypp)


def test_build_system_regimes(lat_a):
    with pytest.raises(RegimeError):
        build_system(problem_params(1, 2), 0, lat_a, "reduced2")
    with pytest.raises(RegimeError):
        build_system(None, 0, lat_a, "lame", m=0)
    with pytest.raises(RegimeError):
        build_system(problem_params(1, 2), 0, lat_a, "fourth")


# transport ------------------------------------------------------------------------

def test_transfer_null_path(lat_a):
    sysm = build_system(problem_params(0, 1), 2, lat_a)
    assert np.array_equal(transfer_matrix(sysm, polyline([0.3 + 0.4j])), np.eye(3))


def test_transfer_group_laws(lat_a):
    sysm = build_system(problem_params(0, 1), 1 + 1j, lat_a)
    tol = 1e-10
    a, b, c = 0.3 + 0.4j, 0.8 + 0.45j, 0.7 + 0.9j
    p = polyline([a, b])
    q = polyline([b, c])
    Wp = transfer_matrix(sysm, p, tol)
    back = transfer_matrix(sysm, p.reversed(), tol)
    assert np.linalg.norm(back @ Wp - np.eye(3)) <= 10 * tol * max(1, np.linalg.norm(Wp) ** 2)
    whole = transfer_matrix(sysm, p + q, tol)
    # fundamental matrices from the identity compose as W(q) W(p)
    assert np.linalg.norm(whole - transfer_matrix(sysm, q, tol) @ Wp) <= 10 * tol * np.linalg.norm(whole)


def test_transfer_tolerance_range(lat_a):
    sysm = build_system(problem_params(0, 1), 2, lat_a)
    with pytest.raises(DomainError):
        transfer_matrix(sysm, polyline([0.3, 0.4]), 1e-3)


def test_path_validation():
    with pytest.raises(DomainError):
        polyline([0.1, 0.1])


# paths --------------------------------------------------------------------------------

def test_cycle_path_blocked_by_lattice_point(lat_a):
    with pytest.raises(PathBlocked):
        cycle_path(-0.5 + 0.001j, 1.0, lat_a)


def test_detour_clears_obstacle(lat_a):
    z0 = base_point_candidates(lat_a)[0]
    obstacle = z0 + 0.5 + 0.001j
    path = cycle_path(z0, 1.0, lat_a, [obstacle])
    assert len(path.vertices) > 2
    assert path.start == z0 and path.end == z0 + 1
    assert path_clearance(path.vertices, [obstacle]) >= 0.5 * min_clearance(lat_a)
    # detour stays small compared with the lattice mesh
    assert max(abs((v - z0).imag) for v in path.vertices) < 0.5 * lat_a.tau.imag


# monodromy pairs ------------------------------------------------------------------------

@pytest.mark.parametrize("Bv", [2, 1 + 1j, -3j])
def test_even_n_commuting_and_reciprocal(Bv, lat_a):
    rep = monodromy_pair(problem_params(0, 1), Bv, lat_a)
    assert rep.commutator_defect <= 1e-6
    for d in rep.dets:
        assert abs(d - 1) <= 1e-7
    for tri in rep.eigen:
        one, rest = nearest_one(tri)
        assert abs(one - 1) <= 1e-6
        assert abs(rest[0] * rest[1] - 1) <= 1e-6
    assert rep.classification.tag is Tag.DIAGONALIZABLE
    jsonschema.validate(rep.to_json(), MONODROMY_REPORT_SCHEMA)


def test_non_apparent(lat_i):
    rep = monodromy_pair(problem_params(1, 0), 1, lat_i)
    assert rep.commutator_defect >= 1e-3
    assert rep.classification.tag is Tag.NON_APPARENT
    for d in rep.dets:
        assert abs(d - 1) <= 1e-7


def test_klein_four_example(lat_i):
    rep = monodromy_pair(problem_params(1, 0), 0, lat_i)
    assert rep.classification.tag is Tag.KLEIN_FOUR
    for t in (np.trace(rep.N1), np.trace(rep.N2), np.trace(rep.N1 @ rep.N2)):
        assert abs(t + 1) <= 1e-6


@pytest.mark.parametrize("n,l", [(1, 2), (3, 0), (3, 2), (5, 0)])
def test_klein_four_at_certified_roots(n, l, lat_i):
    from lame3.recurrence import apparent_polynomial
    from lame3.roots import certify_real_distinct

    p = specialize(apparent_polynomial(problem_params(n, l)), lat_i.g2, lat_i.g3)
    for Bv in certify_real_distinct(p).roots:
        rep = monodromy_pair(problem_params(n, l), Bv, lat_i)
        for N in (rep.N1, rep.N2):
            assert np.linalg.norm(N @ N - np.eye(3)) <= 1e-5
        assert rep.classification.tag is Tag.KLEIN_FOUR


def test_unipotent_odd_odd(lat_i):
    rep = monodromy_pair(problem_params(1, 1), 0, lat_i)
    assert rep.classification.tag is Tag.UNIPOTENT
    assert max(abs(z - 1) for tri in rep.eigen for z in tri) <= 1e-4


def test_commutator_grid_even_n():
    pp = problem_params(2, 0)
    for tau in (1j, TAU_A, -0.3 + 0.9j):
        lat = lattice_data(tau)
        for Bv in (0.5, -2 + 1j, 4j):
            rep = monodromy_pair(pp, Bv, lat)
            assert rep.commutator_defect <= 1e-6


def test_self_convergence(lat_a):
    pp = problem_params(0, 1)
    tol = 1e-9
    a = monodromy_pair(pp, 2, lat_a, tol)
    b = monodromy_pair(pp, 2, lat_a, tol / 2)
    assert np.abs(a.N1 - b.N1).max() <= 10 * tol
    assert np.abs(a.N2 - b.N2).max() <= 10 * tol


# classification on synthetic inputs ------------------------------------------------------

def synthetic(D1, D2, seed=0):
    rng = np.random.default_rng(seed)
    S = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    Si = np.linalg.inv(S)
    return S @ D1 @ Si, S @ D2 @ Si


def report_with(N1, N2, like):
    defect = float(np.linalg.norm(N1 @ N2 - N2 @ N1))
    return replace(like, N1=N1, N2=N2, commutator_defect=defect)


def test_classify_unitary_and_diagonalizable(lat_a):
    base = monodromy_pair(problem_params(0, 1), 2, lat_a)
    a, b = cmath.exp(0.7j), cmath.exp(-1.9j)
    N1, N2 = synthetic(np.diag([1, a, 1 / a]), np.diag([1, b, 1 / b]))
    cls = classify(report_with(N1, N2, base), 1e-8)
    assert cls.tag is Tag.UNITARY
    assert match_pairs(cls.lambdas, (a, b)) <= 1e-8
    N1, N2 = synthetic(np.diag([1, 2, 0.5]), np.diag([1, 1j, -1j]))
    assert classify(report_with(N1, N2, base), 1e-8).tag is Tag.DIAGONALIZABLE


def test_classify_unipotent_and_indeterminate(lat_a):
    base = monodromy_pair(problem_params(0, 1), 2, lat_a)
    J = np.eye(3, dtype=complex)
    J[0, 1] = 1
    N1, N2 = synthetic(J, np.eye(3))
    assert classify(report_with(N1, N2, base), 1e-8).tag is Tag.UNIPOTENT
    M = np.diag([1, -1, -1]).astype(complex)
    M[1, 2] = 1  # Jordan block at -1 commuting with a scalar pair only
    N1, N2 = synthetic(np.eye(3), M)
    assert classify(report_with(N1, N2, base), 1e-8).tag is Tag.INDETERMINATE


# auxiliary routes -------------------------------------------------------------------------------

@pytest.mark.parametrize("n,l,Bv", [(0, 1, 2), (0, 3, 1 + 1j), (2, 0, 3.0), (2, 1, -1 + 2j)])
def test_reduced_route_agrees(n, l, Bv, lat_a):
    pp = problem_params(n, l)
    rep = monodromy_pair(pp, Bv, lat_a)
    red = reduced_monodromy(pp, Bv, lat_a)
    assert match_pairs(rep.classification.lambdas, red.lambdas) <= 1e-6
    # f(z) and f(-z) carry reciprocal multipliers
    (a1, a2), (b1, b2) = red.pairs
    assert abs(a1 * b1 - 1) <= 1e-6 and abs(a2 * b2 - 1) <= 1e-6


def test_reduced_route_detours_around_zero_on_path():
    # for (0,3), y0 = wp + B/24; put a zero exactly on the first cycle's segment
    pp = problem_params(0, 3)
    lat = lattice_data(1j)
    z0 = base_point_candidates(lat)[0]
    Bv = -24 * wp_eval(z0 + 0.5, lat)[0]
    zs = elliptic_solution_zeros(even_elliptic_solution(pp), Bv, lat)
    assert min(abs(z - (z0 + 0.5 - w)) for z in zs for w in (0, 1, 1j, 1 + 1j, -1j)) <= 1e-8
    rep = monodromy_pair(pp, Bv, lat)
    red = reduced_monodromy(pp, Bv, lat)
    assert match_pairs(rep.classification.lambdas, red.lambdas) <= 1e-6


def test_reduced_multipliers_collide_at_spectral_root(lat_i):
    # B = -3 e1 is a root of Q_{0,1} = l_2
    Bv = -3 * lat_i.e1
    assert abs(specialize(lame_spectral_polynomial(2), lat_i.g2, lat_i.g3)(Bv)) <= 1e-8 * abs(Bv) ** 5
    red = reduced_monodromy(problem_params(0, 1), Bv, lat_i)
    for tri in red.eigen:
        a, b = tri
        assert abs(a - b) <= 1e-3
        assert min(abs(a - 1), abs(a + 1)) <= 1e-3


def test_reduced_rejects_odd(lat_a):
    with pytest.raises(RegimeError):
        reduced_monodromy(problem_params(1, 1), 0, lat_a)


@pytest.mark.parametrize("n", [0, 2])
def test_lame_bridge(n, lat_a):
    Bv = 1.5 - 0.5j
    rep = monodromy_pair(problem_params(n, 1), Bv, lat_a)
    lm = lame_monodromy(n + 2, Bv, lat_a)
    assert match_pairs(rep.classification.lambdas, lm.lambdas) <= 1e-6
    for d in lm.dets:
        assert abs(d - 1) <= 1e-7


def test_lame_half_period_multipliers(lat_a):
    lm = lame_monodromy(1, lat_a.e1, lat_a)
    for tri in lm.eigen:
        for z in tri:
            assert min(abs(z - 1), abs(z + 1)) <= 1e-4


# unitarity search ---------------------------------------------------------------------------------

def test_search_rejects_odd(lat_i):
    with pytest.raises(RegimeError):
        unitarity_search(problem_params(1, 0), lat_i, GridSpec(-1, 1, -1, 1, 2, 2))


def test_search_square_lattice_reports_absence(lat_i):
    res = unitarity_search(problem_params(0, 1), lat_i, GridSpec(-6, 6, -6, 6, 3, 3), seeds=1, max_newton=4)
    assert not res.found
    assert res.status == NOT_FOUND
    assert res.B is None


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 1, 1, 3)
    assert len(GridSpec(0, 1, 0, 1, 2, 3).points()) == 6


def test_rhombic_double_root_is_unipotent():
    # g2 vanishes at tau = exp(i pi/3), so B = 0 is a double root of Q_{0,1} = l_2
    lat = lattice_data(cmath.exp(1j * cmath.pi / 3))
    assert abs(lat.g2) < 1e-10
    rep = monodromy_pair(problem_params(0, 1), 0, lat)
    assert rep.commutator_defect < 1e-6
    assert rep.classification.tag is Tag.UNIPOTENT
