import math

import mpmath as mp
import numpy as np
import pytest

from qcherenkov import (ConstantIndex, conservation_solve, conventional_angle,
                        cutoff_energy, double_cone, emission_allowed,
                        energy_from_beta, fused_silica, quantum_angle,
                        quantum_cutoff_wavelength)
from qcherenkov.amplitude import TriangleSides, triangle_area
from qcherenkov.constants import ELECTRON_MC2_EV, PHOTON_EV_NM

mp.mp.dps = 50
MC2 = mp.mpf("510998.95")


def _mp_quantum_cos(beta, n, hw):
    beta, n, hw = mp.mpf(beta), mp.mpf(n), mp.mpf(hw)
    return 1 / (beta * n) + (hw / MC2) * mp.sqrt(1 - beta**2) / beta \
        * (n**2 - 1) / (2 * n)


def _mp_cutoff(beta, n):
    beta, n = mp.mpf(beta), mp.mpf(n)
    return 2 * MC2 * (beta * n - 1) / ((n**2 - 1) * mp.sqrt(1 - beta**2))


# ---------------------------------------------------------------------------
# conventional angle
# ---------------------------------------------------------------------------

def test_conventional_angle_075_15():
    theta = conventional_angle(0.75, 1.5)
    assert theta == pytest.approx(float(mp.acos(mp.mpf(8) / 9)), rel=1e-14)
    assert math.degrees(theta) == pytest.approx(27.266, abs=1e-3)


def test_conventional_angle_near_threshold_beam():
    theta = conventional_angle(0.685, 1.45986)
    exact = mp.acos(1 / (mp.mpf("0.685") * mp.mpf("1.45986")))
    assert theta == pytest.approx(float(exact), rel=1e-10)
    assert math.degrees(theta) == pytest.approx(0.164, abs=2e-3)


def test_conventional_angle_threshold_and_below():
    assert conventional_angle(0.5, 2.0) == 0.0
    assert conventional_angle(0.5, 1.3) is None


def test_conventional_angle_domain():
    with pytest.raises(ValueError):
        conventional_angle(1.0, 1.5)
    with pytest.raises(ValueError):
        conventional_angle(0.5, 0.0)


# ---------------------------------------------------------------------------
# cutoff energy
# ---------------------------------------------------------------------------

def test_cutoff_energy_paper_beam():
    # near threshold the single product rounding in beta*n - 1 is amplified
    # by 1 ulp / (beta*n - 1) ~ 5e-11, so the re-evaluation tolerance is 1e-9
    cut = cutoff_energy(0.685, 1.45986)
    assert cut == pytest.approx(float(_mp_cutoff(0.685, 1.45986)), rel=1e-9)
    assert PHOTON_EV_NM / cut == pytest.approx(243.85, abs=0.01)


def test_cutoff_energy_away_from_threshold():
    cut = cutoff_energy(0.75, 1.5)
    assert cut == pytest.approx(float(_mp_cutoff(0.75, 1.5)), rel=1e-12)
    assert cut == pytest.approx(154.5e3, rel=1e-3)


def test_cutoff_linear_in_excess_speed():
    n = 1.5
    eps = 1e-6
    c1 = cutoff_energy((1 + eps) / n, n)
    c2 = cutoff_energy((1 + 2 * eps) / n, n)
    assert c2 / c1 == pytest.approx(2.0, rel=1e-5)


def test_cutoff_energy_signals():
    assert cutoff_energy(0.5, 1.5) is None
    with pytest.raises(ValueError):
        cutoff_energy(0.9, 1.0)
    with pytest.raises(ValueError):
        cutoff_energy(1.2, 1.5)


# ---------------------------------------------------------------------------
# quantum angle
# ---------------------------------------------------------------------------

def test_quantum_angle_zero_energy_reduces_to_conventional():
    for beta, n in ((0.75, 1.5), (0.685, 1.45986), (0.9, 1.2)):
        assert quantum_angle(beta, n, 0.0) == conventional_angle(beta, n)


def test_quantum_angle_exactly_zero_at_cutoff():
    for beta, n in ((0.685, 1.45986), (0.75, 1.5), (0.9, 1.8), (0.99, 1.1)):
        cut = cutoff_energy(beta, n)
        assert quantum_angle(beta, n, cut) == 0.0


def test_quantum_angle_absent_beyond_cutoff():
    cut = cutoff_energy(0.75, 1.5)
    assert quantum_angle(0.75, 1.5, cut * (1 + 1e-6)) is None
    assert quantum_angle(0.5, 1.3, 2.0) is None  # below threshold


def test_quantum_angle_against_high_precision():
    beta, n, hw = 0.685, 1.45986, 2.54
    theta = quantum_angle(beta, n, hw)
    exact = mp.acos(_mp_quantum_cos(beta, n, hw))
    assert theta == pytest.approx(float(exact), rel=1e-9)


def test_quantum_angle_strictly_decreasing_to_cutoff():
    beta, n = 0.685, 1.45986
    cut = cutoff_energy(beta, n)
    hws = np.linspace(0.0, cut, 200)
    thetas = [quantum_angle(beta, n, float(h)) for h in hws]
    assert all(t is not None for t in thetas)
    assert all(a > b for a, b in zip(thetas, thetas[1:]))


def test_quantum_angle_first_order_in_photon_energy():
    beta, n = 0.75, 1.5
    conv = conventional_angle(beta, n)
    err3 = abs(quantum_angle(beta, n, 1e-3) - conv)
    err6 = abs(quantum_angle(beta, n, 1e-6) - conv)
    assert err3 / err6 == pytest.approx(1e3, rel=0.05)


# ---------------------------------------------------------------------------
# self-consistent cutoff wavelength
# ---------------------------------------------------------------------------

def test_quantum_cutoff_wavelength_constant_model_is_exact():
    model = ConstantIndex(1.45986)
    lam = quantum_cutoff_wavelength(model, 0.685, (200.0, 800.0))
    assert lam == PHOTON_EV_NM / cutoff_energy(0.685, 1.45986)


def test_quantum_cutoff_wavelength_silica_residual():
    # at beta = 0.70 silica only reaches n = 1/beta in the infrared
    model = fused_silica()
    lam = quantum_cutoff_wavelength(model, 0.70, (300.0, 3500.0))
    assert lam is not None
    n = model.n_at(lam)
    residual = cutoff_energy(0.70, n) - PHOTON_EV_NM / lam
    assert abs(residual) < 1e-6


def test_quantum_cutoff_wavelength_silica_paper_beam():
    # for the near-threshold beam the recoil cutoff sits a fraction of a nm
    # below the n = 1/beta crossing
    model = fused_silica()
    lam = quantum_cutoff_wavelength(model, 0.685, (300.0, 800.0))
    assert lam is not None
    assert 535.0 < lam < 565.0
    from qcherenkov import dispersion_cutoff_wavelength
    disp = dispersion_cutoff_wavelength(model, 0.685, (300.0, 800.0))
    assert lam < disp
    assert disp - lam < 0.5


def test_quantum_cutoff_wavelength_absent_below_threshold():
    assert quantum_cutoff_wavelength(fused_silica(), 0.3, (300.0, 800.0)) is None
    assert quantum_cutoff_wavelength(ConstantIndex(1.2), 0.5, (300.0, 800.0)) is None


def test_quantum_cutoff_wavelength_bracket_validation():
    with pytest.raises(ValueError):
        quantum_cutoff_wavelength(fused_silica(), 0.685, (100.0, 800.0))


# ---------------------------------------------------------------------------
# double cone
# ---------------------------------------------------------------------------

def test_double_cone_plane_wave_limit():
    cone = double_cone(0.0, 0.3)
    assert cone.inner == cone.outer == 0.3


def test_double_cone_at_cutoff_collapses_to_theta_i():
    cone = double_cone(math.radians(10.3), 0.0)
    assert cone.inner == cone.outer == pytest.approx(math.radians(10.3))


def test_double_cone_backward():
    theta_cr = conventional_angle(0.99, 1.5)
    assert math.degrees(theta_cr) == pytest.approx(47.67, abs=0.01)
    cone = double_cone(math.radians(50.0), theta_cr)
    assert cone.backward
    assert math.degrees(cone.outer) > 90.0


def test_double_cone_validation():
    with pytest.raises(ValueError):
        double_cone(math.pi / 2, 0.1)
    with pytest.raises(ValueError):
        double_cone(0.1, math.pi)


# ---------------------------------------------------------------------------
# conservation solver
# ---------------------------------------------------------------------------

def test_conservation_solve_no_emission():
    E = energy_from_beta(0.685)
    theta_i = math.radians(10.3)
    kin = conservation_solve(E, theta_i, 0.0, 0.2, 1.46)
    assert kin.energy_ev == E
    assert kin.theta_rad == pytest.approx(theta_i, rel=1e-12)


def test_conservation_solve_total_energy_transfer():
    # photon takes all kinetic energy; theta_ph chosen so p_fz = 0
    E = 2.0 * ELECTRON_MC2_EV
    hw = E - ELECTRON_MC2_EV
    n = 2.0
    p_iz = math.sqrt(3.0) * ELECTRON_MC2_EV
    theta_ph = math.acos(p_iz / (n * hw))
    kin = conservation_solve(E, 0.0, hw, theta_ph, n)
    assert kin is not None
    assert kin.energy_ev == pytest.approx(ELECTRON_MC2_EV, rel=1e-14)
    assert abs(kin.p_z_c) < 1e-6
    assert kin.p_r_c == 0.0


def test_conservation_solve_forbidden_off_shell():
    E = energy_from_beta(0.685)
    # photon energy exceeding the kinetic energy drives E_f below mc^2
    assert conservation_solve(E, 0.0, E - 0.5 * ELECTRON_MC2_EV, 0.1, 1.5) is None


def test_conservation_solve_domain():
    with pytest.raises(ValueError):
        conservation_solve(0.5 * ELECTRON_MC2_EV, 0.0, 1.0, 0.1, 1.5)
    with pytest.raises(ValueError):
        conservation_solve(2 * ELECTRON_MC2_EV, 0.0, -1.0, 0.1, 1.5)


def test_zone_gates_agree_at_reference_point():
    # one point inside the permitted band: both the conservation route and
    # the triangle route must accept it, and build identical sides
    E = energy_from_beta(0.685)
    theta_i = math.radians(10.3)
    lam = 400.0
    hw = PHOTON_EV_NM / lam
    n = float(fused_silica().n_at(lam))
    theta_ph = math.radians(12.0)
    assert emission_allowed(E, theta_i, hw, theta_ph, n)
    kin = conservation_solve(E, theta_i, hw, theta_ph, n)
    sides = TriangleSides(math.sin(theta_i) * math.sqrt((E - ELECTRON_MC2_EV) * (E + ELECTRON_MC2_EV)),
                          kin.p_r_c, n * hw * math.sin(theta_ph))
    assert sides.is_formable()
    assert triangle_area(sides) is not None


def test_zone_gate_rejects_outside_band():
    E = energy_from_beta(0.685)
    theta_i = math.radians(10.3)
    lam = 400.0
    hw = PHOTON_EV_NM / lam
    n = float(fused_silica().n_at(lam))
    # at 400 nm the permitted band is roughly [3.5 deg, 17.1 deg]
    assert not emission_allowed(E, theta_i, hw, math.radians(2.0), n)
    assert not emission_allowed(E, theta_i, hw, math.radians(60.0), n)


def test_zone_gate_equals_double_cone_band():
    # third formulation of the same physics: the kinematic gate must accept
    # exactly the emission angles between the inner and outer cones
    rng = np.random.default_rng(17)
    checked = 0
    while checked < 300:
        beta = float(rng.uniform(0.3, 0.98))
        n = float(rng.uniform(1.05, 2.2))
        if beta * n <= 1.0 + 1e-6:
            continue
        E = energy_from_beta(beta)
        cut = cutoff_energy(beta, n)
        hw = float(rng.uniform(0.05, 0.95)) * min(cut, E - 0.5 * E)
        theta_cr = quantum_angle(beta, n, hw)
        if theta_cr is None or theta_cr == 0.0:
            continue
        theta_i = float(rng.uniform(0.0, math.pi / 2 - 0.05))
        cone = double_cone(theta_i, theta_cr)
        lo, hi = cone.inner, min(cone.outer, math.pi)
        for frac, inside in ((0.5, True), (-0.2, False), (1.2, False)):
            theta_ph = lo + frac * (hi - lo)
            if not 0.0 < theta_ph < math.pi:
                continue
            margin = min(abs(theta_ph - lo), abs(theta_ph - hi))
            if margin < 1e-9:
                continue
            assert emission_allowed(E, theta_i, hw, theta_ph, n) == inside, (
                beta, n, hw, theta_i, theta_ph)
        checked += 1


def test_cone_geometry_invariants():
    rng = np.random.default_rng(3)
    for _ in range(200):
        theta_i = float(rng.uniform(0.0, math.pi / 2 - 1e-6))
        theta_cr = float(rng.uniform(0.0, math.pi - 1e-6))
        cone = double_cone(theta_i, theta_cr)
        assert cone.inner <= cone.outer
        assert cone.backward == (cone.outer > math.pi / 2)
        if cone.inner == cone.outer:
            assert theta_i == 0.0 or theta_cr == 0.0
