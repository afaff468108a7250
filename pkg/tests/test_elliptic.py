import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import gamma

from lame3.elliptic import (
    half_period,
    invert_wp,
    lattice_data,
    reduce_to_cell,
    sigma_eval,
    wp_eval,
    zeta_eval,
    zeta_sigma_eval,
)
from lame3.errors import DomainError, PoleProximity

# frozen from a 30-digit Eisenstein-series evaluation
G2_I = 189.07272012923385229
G2_A = complex(57.106531862970192199, 187.27518161185503734)  # tau = 0.3 + 0.8i
G3_A = complex(732.87981539327980518, -770.4618746281124177)
G2_B = complex(139.24912641334473413, 29.697532308527617847)  # tau = 0.2 + 1.1i
G3_B = complex(244.48951648391943076, -138.77335212911466677)
WP_A = complex(5.0799639693991414034, -2.71614045877752917)  # z = 0.31 + 0.17 tau at tau = 0.3 + 0.8i

taus = st.builds(complex, st.floats(-0.5, 0.5), st.floats(0.6, 2.0))
cell = st.tuples(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5)).filter(lambda p: abs(p[0]) + abs(p[1]) > 0.05)


def test_square_lattice_invariants(lat_i):
    assert abs(lat_i.g3) < 1e-12
    assert lat_i.g2.real > 0
    assert lat_i.g2 == pytest.approx(G2_I, rel=1e-13)
    # lemniscatic closed form
    assert lat_i.g2.real == pytest.approx(gamma(0.25) ** 8 / (16 * math.pi**2), rel=1e-13)


def test_square_lattice_e_ordering(lat_i):
    e1, e2, e3 = lat_i.e
    assert e3 == 0
    assert e1.real > e3.real > e2.real
    assert e1 == pytest.approx(math.sqrt(G2_I) / 2, rel=1e-13)
    assert e2 == pytest.approx(-math.sqrt(G2_I) / 2, rel=1e-13)


@pytest.mark.parametrize("tau,g2,g3", [(0.3 + 0.8j, G2_A, G3_A), (0.2 + 1.1j, G2_B, G3_B)])
def test_invariants_against_frozen(tau, g2, g3):
    lat = lattice_data(tau)
    assert abs(lat.g2 - g2) <= 1e-12 * abs(g2)
    assert abs(lat.g3 - g3) <= 1e-12 * abs(g3)


def test_wp_against_frozen():
    tau = 0.3 + 0.8j
    assert abs(wp_eval(0.31 + 0.17 * tau, lattice_data(tau))[0] - WP_A) <= 1e-12 * abs(WP_A)


@given(taus)
def test_lattice_invariants(tau):
    lat = lattice_data(tau)
    emax = max(abs(e) for e in lat.e)
    assert abs(sum(lat.e)) <= 1e-12 * emax
    for e in lat.e:
        assert abs(4 * e**3 - lat.g2 * e - lat.g3) <= 1e-10 * abs(lat.g2) ** 1.5
    assert abs(lat.eta1 * tau - lat.eta2 - 2j * math.pi) <= 1e-10


@given(taus)
def test_invariants_depend_on_lattice_only(tau):
    a, b = lattice_data(tau), lattice_data(tau + 1)
    assert abs(a.g2 - b.g2) <= 1e-12 * max(1, abs(a.g2))
    assert abs(a.g3 - b.g3) <= 1e-12 * max(1, abs(a.g3))


@given(taus)
def test_modular_weight(tau):
    a, b = lattice_data(tau), lattice_data(-1 / tau)
    # Z + (-1/tau) Z = tau^{-1} (Z + tau Z)
    assert abs(b.g2 - tau**4 * a.g2) <= 1e-10 * max(1, abs(b.g2))
    assert abs(b.g3 - tau**6 * a.g3) <= 1e-10 * max(1, abs(b.g3))


def test_half_period_values(lat):
    for i in (1, 2, 3):
        assert abs(wp_eval(half_period(i, lat.tau), lat)[0] - lat.ek(i)) <= 1e-12 * (1 + abs(lat.ek(i)))


@given(taus, cell)
def test_wp_identity_and_periodicity(tau, ab):
    lat = lattice_data(tau)
    z = ab[0] + ab[1] * tau
    wp, dwp, ddwp = wp_eval(z, lat)
    assert abs(dwp**2 - (4 * wp**3 - lat.g2 * wp - lat.g3)) <= 1e-10 * (1 + abs(wp) ** 3)
    assert abs(ddwp - (6 * wp**2 - lat.g2 / 2)) <= 1e-10 * (1 + abs(wp) ** 2)
    for w in (1, tau):
        assert abs(wp_eval(z + w, lat)[0] - wp) <= 1e-10 * (1 + abs(wp))


def test_parity(lat):
    z = 0.31 + 0.17 * lat.tau
    wp, dwp, _ = wp_eval(z, lat)
    wm, dwm, _ = wp_eval(-z, lat)
    assert abs(wp - wm) <= 1e-12 * abs(wp)
    assert abs(dwp + dwm) <= 1e-12 * abs(dwp)
    zp, sp = zeta_sigma_eval(z, lat)
    zm, sm = zeta_sigma_eval(-z, lat)
    assert abs(zp + zm) <= 1e-12 * abs(zp)
    assert abs(sp + sm) <= 1e-12 * abs(sp)


def test_zeta_quasi_periods(lat):
    z = 0.21 - 0.33 * lat.tau
    assert abs(zeta_eval(z + 1, lat) - zeta_eval(z, lat) - lat.eta1) <= 1e-10
    assert abs(zeta_eval(z + lat.tau, lat) - zeta_eval(z, lat) - lat.eta2) <= 1e-10


def test_zeta_sigma_finite_differences(lat):
    z, h = 0.27 + 0.19 * lat.tau, 1e-5
    zeta = zeta_eval(z, lat)
    fd = (sigma_eval(z + h, lat) - sigma_eval(z - h, lat)) / (2 * h * sigma_eval(z, lat))
    assert abs(fd - zeta) < 1e-6
    dz = -(zeta_eval(z + h, lat) - zeta_eval(z - h, lat)) / (2 * h)
    wp = wp_eval(z, lat)[0]
    assert abs(dz - wp) <= 1e-6 * abs(wp)


def test_sigma_entire_near_origin(lat):
    # sigma(z) = z + O(z^5)
    z = 1e-3 * (1 + 1j)
    assert abs(sigma_eval(z, lat) - z) <= 1e-12


def test_pole_guard(lat):
    with pytest.raises(PoleProximity):
        wp_eval(1 + lat.tau + 1e-10, lat)
    with pytest.raises(PoleProximity):
        zeta_eval(1e-12, lat)


@pytest.mark.parametrize("tau", [-1j, 0.3, 0.5 - 0.01j])
def test_rejects_lower_half_plane(tau):
    with pytest.raises(DomainError):
        lattice_data(tau)


def test_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        lattice_data(1j, tol=1e-3)


def test_invert_half_period(lat):
    z = invert_wp(lat.e1, lat)
    r = reduce_to_cell(z - 0.5, lat)
    assert abs(r) <= 1e-7


@given(taus, cell)
def test_invert_roundtrip(tau, ab):
    lat = lattice_data(tau)
    z0 = ab[0] + ab[1] * tau
    x = wp_eval(z0, lat)[0]
    z = invert_wp(x, lat)
    assert abs(wp_eval(z, lat)[0] - x) <= 1e-9 * (1 + abs(x))
    d = min(abs(reduce_to_cell(z - z0, lat)), abs(reduce_to_cell(z + z0, lat)))
    assert d <= 1e-6


def test_invert_large_argument(lat):
    sizes = []
    for x in (1e4, 1e6, 1e8):
        z = invert_wp(x, lat)
        sizes.append(abs(z))
        assert abs(z) == pytest.approx(x**-0.5, rel=1e-3)
    assert sizes == sorted(sizes, reverse=True)


def test_series_terms_override(monkeypatch):
    base = lattice_data(0.3 + 0.8j)
    monkeypatch.setenv("LAME3_SERIES_TERMS", "40")
    fixed = lattice_data(0.3 + 0.8j)
    assert fixed.series_terms == 40
    assert abs(fixed.g2 - base.g2) <= 1e-12 * abs(base.g2)


def test_random_identity_sweep():
    rng = np.random.default_rng(7)
    for tau in (1j, 0.5 + 1j, 0.3 + 0.8j, -0.45 + 0.95j, 0.1 + 3.0j):
        lat = lattice_data(tau)
        for a, b in rng.uniform(-0.5, 0.5, (100, 2)):
            z = a + b * tau
            if abs(reduce_to_cell(z, lat)) < 1e-3:
                continue
            wp, dwp, _ = wp_eval(z, lat)
            assert abs(dwp**2 - (4 * wp**3 - lat.g2 * wp - lat.g3)) <= 1e-10 * (1 + abs(wp) ** 3)
    assert cmath.isfinite(lat.eta1)
