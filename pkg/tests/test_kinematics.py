import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcherenkov import (CylindricalElectronState, PhotonState, Polarization,
                        Spin, beta_from_energy, energy_from_beta,
                        kinetic_energy, lorentz_factor, momenta,
                        photon_energy_ev, photon_wavelength_nm)
from qcherenkov.constants import ELECTRON_MC2_EV, PHOTON_EV_NM

mp.mp.dps = 50
MC2 = mp.mpf("510998.95")


def test_gamma_rest_frame():
    assert lorentz_factor(0.0) == 1.0
    assert kinetic_energy(0.0) == 0.0


def test_gamma_pythagorean_pair():
    assert lorentz_factor(0.8) == pytest.approx(5.0 / 3.0, rel=1e-15)


def test_kinetic_energy_near_threshold_beam():
    # beta = 0.685 corresponds to a ~190 keV electron
    ke = kinetic_energy(0.685)
    exact = (1 / mp.sqrt(1 - mp.mpf("0.685") ** 2) - 1) * MC2
    assert ke == pytest.approx(float(exact), rel=1e-13)
    assert 190.0e3 < ke < 191.0e3


def test_gamma_domain_errors():
    for bad in (-0.1, 1.0, 1.2):
        with pytest.raises(ValueError):
            lorentz_factor(bad)


@given(st.floats(min_value=0.0, max_value=0.999999),
       st.floats(min_value=0.0, max_value=0.999999))
def test_gamma_monotone(b1, b2):
    lo, hi = sorted((b1, b2))
    assert lorentz_factor(lo) <= lorentz_factor(hi)
    assert lorentz_factor(lo) >= 1.0


def test_energy_beta_round_trip():
    e = energy_from_beta(0.685)
    assert beta_from_energy(e) == pytest.approx(0.685, rel=1e-14)


def test_momenta_on_axis():
    e = energy_from_beta(0.5)
    pz, pr = momenta(e, 0.0)
    assert pr == 0.0
    assert pz == pytest.approx(0.5 * e, rel=1e-14)


def test_momenta_at_rest():
    pz, pr = momenta(ELECTRON_MC2_EV, 0.3)
    assert pz == 0.0 and pr == 0.0


def test_momenta_against_high_precision():
    # direct 50-digit evaluation of beta*E*cos/sin(theta)
    beta = mp.mpf("0.685")
    theta = mp.radians(mp.mpf("10.3"))
    e_mp = MC2 / mp.sqrt(1 - beta**2)
    pz_mp = beta * e_mp * mp.cos(theta)
    pr_mp = beta * e_mp * mp.sin(theta)
    e = float(e_mp)
    pz, pr = momenta(e, math.radians(10.3))
    assert pz == pytest.approx(float(pz_mp), rel=1e-12)
    assert pr == pytest.approx(float(pr_mp), rel=1e-12)


def test_momenta_domain_error():
    with pytest.raises(ValueError):
        momenta(0.5 * ELECTRON_MC2_EV, 0.0)


@settings(max_examples=200)
@given(st.floats(min_value=1e-6, max_value=0.999999),
       st.floats(min_value=0.0, max_value=math.pi / 2 - 1e-9))
def test_momentum_shell_identity(beta, theta):
    # identity in terms of the state: beta is the one derived from E
    e = energy_from_beta(beta)
    pz, pr = momenta(e, theta)
    p2 = (beta_from_energy(e) * e) ** 2
    assert pz * pz + pr * pr == pytest.approx(p2, rel=1e-10)


def test_photon_conversion_2ev_is_620nm():
    lam = photon_wavelength_nm(2.0)
    assert lam == pytest.approx(619.921, abs=1e-3)
    assert round(lam) == 620


def test_photon_conversion_unit_definition():
    assert photon_energy_ev(PHOTON_EV_NM) == 1.0


@given(st.floats(min_value=1e-3, max_value=1e7))
def test_photon_conversion_involution(x):
    assert photon_energy_ev(photon_wavelength_nm(x)) == pytest.approx(x, rel=1e-12)


def test_photon_conversion_domain():
    for f in (photon_energy_ev, photon_wavelength_nm):
        with pytest.raises(ValueError):
            f(0.0)
        with pytest.raises(ValueError):
            f(-1.0)


def test_electron_state_properties():
    e = energy_from_beta(0.685)
    state = CylindricalElectronState(e, Spin.UP, math.radians(10.3), oam_l=2)
    pz, pr = momenta(e, math.radians(10.3))
    assert state.p_z_c == pytest.approx(pz, rel=1e-14)
    assert state.p_r_c == pytest.approx(pr, rel=1e-14)
    assert state.beta == pytest.approx(0.685, rel=1e-14)
    assert state.gamma >= 1.0


def test_electron_state_validation():
    with pytest.raises(ValueError):
        CylindricalElectronState(0.9 * ELECTRON_MC2_EV)
    with pytest.raises(ValueError):
        CylindricalElectronState(2 * ELECTRON_MC2_EV, spread_angle_rad=math.pi / 2)
    with pytest.raises(ValueError):
        CylindricalElectronState(2 * ELECTRON_MC2_EV, oam_l=1.5)


def test_photon_state_wavenumber_shell():
    ph = PhotonState(2.0, Polarization.AZIMUTHAL, math.radians(40.0), oam_l=4)
    n = 1.46
    assert ph.k_z_c(n) ** 2 + ph.k_r_c(n) ** 2 == pytest.approx((n * 2.0) ** 2,
                                                                rel=1e-12)
    assert ph.wavelength_nm == pytest.approx(619.921, abs=1e-3)


def test_photon_state_validation():
    with pytest.raises(ValueError):
        PhotonState(0.0)
    with pytest.raises(ValueError):
        PhotonState(1.0, emission_angle_rad=3.2)
