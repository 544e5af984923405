"""Relativistic kinematics and the cylindrical-state data model.

Electron states are labelled by total energy E (rest mass included), spin
projection along the cylinder axis z, polar spread angle theta and orbital
angular momentum l. Longitudinal and transverse momenta follow
p_z*c = beta*E*cos(theta), p_r*c = beta*E*sin(theta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import ELECTRON_MC2_EV, PHOTON_EV_NM


class Spin(Enum):
    UP = "up"
    DOWN = "down"


class Polarization(Enum):
    AZIMUTHAL = "azimuthal"
    RADIAL = "radial"


def lorentz_factor(beta):
    """gamma = (1 - beta^2)^(-1/2) for beta in [0, 1). Scalar or array."""
    b = np.asarray(beta, dtype=float)
    if np.any(b < 0.0) or np.any(b >= 1.0):
        raise ValueError("beta must lie in [0, 1)")
    out = 1.0 / np.sqrt((1.0 - b) * (1.0 + b))
    return out.item() if out.ndim == 0 else out


def energy_from_beta(beta, mc2: float = ELECTRON_MC2_EV):
    """Total energy gamma*mc^2 in eV."""
    return lorentz_factor(beta) * mc2


def beta_from_energy(energy_ev, mc2: float = ELECTRON_MC2_EV):
    """Speed beta from total energy. Requires E >= mc^2."""
    e = np.asarray(energy_ev, dtype=float)
    if np.any(e < mc2):
        raise ValueError("total energy below rest energy")
    out = np.sqrt((e - mc2) * (e + mc2)) / e
    return out.item() if out.ndim == 0 else out


def kinetic_energy(beta, mc2: float = ELECTRON_MC2_EV):
    """Kinetic energy (gamma - 1)*mc^2 in eV."""
    return (lorentz_factor(beta) - 1.0) * mc2


def momenta(energy_ev, theta_rad, mc2: float = ELECTRON_MC2_EV):
    """Longitudinal and transverse momentum (as p*c in eV) of a state.

    p_z*c = beta*E*cos(theta), p_r*c = beta*E*sin(theta).
    """
    e = np.asarray(energy_ev, dtype=float)
    th = np.asarray(theta_rad, dtype=float)
    if np.any(e < mc2):
        raise ValueError("total energy below rest energy")
    if np.any(th < 0.0) or np.any(th > math.pi):
        raise ValueError("theta must lie in [0, pi]")
    pc = np.sqrt((e - mc2) * (e + mc2))
    pz = pc * np.cos(th)
    pr = pc * np.sin(th)
    if np.ndim(pz) == 0:
        return float(pz), float(pr)
    return pz, pr


def photon_wavelength_nm(energy_ev):
    """Vacuum wavelength in nm of a photon of given energy in eV."""
    e = np.asarray(energy_ev, dtype=float)
    if np.any(e <= 0.0):
        raise ValueError("photon energy must be positive")
    out = PHOTON_EV_NM / e
    return out.item() if out.ndim == 0 else out


def photon_energy_ev(wavelength_nm):
    """Photon energy in eV for a vacuum wavelength in nm."""
    lam = np.asarray(wavelength_nm, dtype=float)
    if np.any(lam <= 0.0):
        raise ValueError("wavelength must be positive")
    out = PHOTON_EV_NM / lam
    return out.item() if out.ndim == 0 else out


@dataclass(frozen=True)
class CylindricalElectronState:
    """Electron eigenstate |E, s, theta, l> of the cylindrical basis."""

    energy_ev: float
    spin: Spin = Spin.UP
    spread_angle_rad: float = 0.0
    oam_l: int = 0
    mc2_ev: float = ELECTRON_MC2_EV

    def __post_init__(self):
        if not math.isfinite(self.energy_ev) or self.energy_ev < self.mc2_ev:
            raise ValueError("total energy must be finite and >= mc^2")
        if not 0.0 <= self.spread_angle_rad < math.pi / 2:
            raise ValueError("spread angle must lie in [0, pi/2)")
        if not isinstance(self.oam_l, int):
            raise ValueError("oam_l must be an integer")

    @property
    def beta(self) -> float:
        return beta_from_energy(self.energy_ev, self.mc2_ev)

    @property
    def gamma(self) -> float:
        return self.energy_ev / self.mc2_ev

    @property
    def momentum_c(self) -> float:
        """|p|*c in eV."""
        return math.sqrt((self.energy_ev - self.mc2_ev) * (self.energy_ev + self.mc2_ev))

    @property
    def p_z_c(self) -> float:
        return self.momentum_c * math.cos(self.spread_angle_rad)

    @property
    def p_r_c(self) -> float:
        return self.momentum_c * math.sin(self.spread_angle_rad)


@dataclass(frozen=True)
class PhotonState:
    """Photon state |hbar*omega, s_ph, theta_ph, l_ph> in a medium."""

    energy_ev: float
    polarization: Polarization = Polarization.AZIMUTHAL
    emission_angle_rad: float = 0.0
    oam_l: int = 0

    def __post_init__(self):
        if not math.isfinite(self.energy_ev) or self.energy_ev <= 0.0:
            raise ValueError("photon energy must be positive")
        if not 0.0 <= self.emission_angle_rad <= math.pi:
            raise ValueError("emission angle must lie in [0, pi]")
        if not isinstance(self.oam_l, int):
            raise ValueError("oam_l must be an integer")

    @property
    def wavelength_nm(self) -> float:
        return PHOTON_EV_NM / self.energy_ev

    def k_z_c(self, n: float) -> float:
        """Longitudinal hbar*k_z*c in eV for refractive index n."""
        return n * self.energy_ev * math.cos(self.emission_angle_rad)

    def k_r_c(self, n: float) -> float:
        """Transverse hbar*k_r*c in eV for refractive index n."""
        return n * self.energy_ev * math.sin(self.emission_angle_rad)
