"""Emission angles, spectral cutoffs, double-cone geometry and the
conservation-law solver for the outgoing electron.

The recoil-corrected cone angle is

    cos(theta_cr) = 1/(beta*n) + (hbar*omega/mc^2) * sqrt(1-beta^2)/beta
                                * (n^2-1)/(2n)

which closes at the cutoff

    hbar*omega_cut = 2*mc^2*(beta*n - 1) / ((n^2 - 1)*sqrt(1 - beta^2)).

Both are implemented through u = beta*n - 1 and
v = hbar*omega*(n^2-1)*sqrt(1-beta^2)/(2*mc^2), so that the cosine argument
is (1+v)/(1+u) and the cutoff is exactly v = u. Emission requires v <= u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import bisect_root
from .constants import ELECTRON_MC2_EV, PHOTON_EV_NM
from .dispersion import ConstantIndex, DispersionModel

# Cosine arguments within this absolute band above 1 clamp to theta = 0;
# beyond it the photon is past cutoff and the angle is absent.
COS_CLAMP_ABOVE = 1e-12
# Relative band below the cutoff in which the angle snaps to exactly 0,
# absorbing float noise when probing at the computed cutoff energy. Real
# angles suppressed by the snap are below ~1e-5 rad.
CUTOFF_SNAP_REL = 1e-10

_WAVELENGTH_TOL_NM = 1e-9


def _uv(beta: float, n: float, hbar_omega: float, mc2: float):
    u = beta * n - 1.0
    v = hbar_omega * (n * n - 1.0) * math.sqrt((1.0 - beta) * (1.0 + beta)) / (2.0 * mc2)
    return u, v


def conventional_angle(beta: float, n: float):
    """Frank-Tamm cone angle arccos(1/(beta*n)), None below threshold."""
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    if n <= 0.0:
        raise ValueError("refractive index must be positive")
    bn = beta * n
    if bn < 1.0:
        return None
    return math.acos(1.0 / bn)


def cutoff_energy(beta: float, n: float, mc2: float = ELECTRON_MC2_EV):
    """Recoil cutoff hbar*omega_cut in eV; None at or below threshold.

    Linear in (beta*n - 1) near threshold, which is what drags the cutoff
    into the optical range for beta close to 1/n.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    if n <= 1.0:
        raise ValueError("cutoff requires n > 1")
    u = beta * n - 1.0
    if u <= 0.0:
        return None
    return 2.0 * mc2 * u / ((n * n - 1.0) * math.sqrt((1.0 - beta) * (1.0 + beta)))


def quantum_angle(beta: float, n: float, hbar_omega: float,
                  mc2: float = ELECTRON_MC2_EV):
    """Recoil-corrected cone angle in rad, or None when absent.

    Absent covers both below-threshold (beta*n <= 1) and beyond-cutoff
    photons. At hbar_omega = 0 this reduces bit-for-bit to
    conventional_angle. Exactly at the cutoff the angle is 0.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    if n <= 0.0:
        raise ValueError("refractive index must be positive")
    if hbar_omega < 0.0:
        raise ValueError("photon energy must be non-negative")
    u, v = _uv(beta, n, hbar_omega, mc2)
    if u < 0.0:
        return None
    if v > u + COS_CLAMP_ABOVE * (1.0 + u):
        return None
    if v >= u * (1.0 - CUTOFF_SNAP_REL):
        return 0.0
    return math.acos(min(1.0, (1.0 + v) / (beta * n)))


def quantum_cutoff_wavelength(model: DispersionModel, beta: float,
                              bracket: tuple[float, float],
                              mc2: float = ELECTRON_MC2_EV):
    """Self-consistent wavelength where the photon energy meets the cutoff
    for the local index, hbar*omega(lambda) = hbar*omega_cut(beta, n(lambda)).

    Returns None when no sign change exists in the bracket. For a constant
    index the fixed point is explicit and returned without iteration.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    lo, hi = bracket
    if not lo < hi:
        raise ValueError("bracket must be ordered (low, high)")
    if not model.covers(lo) or not model.covers(hi):
        raise ValueError("bracket outside model validity window")

    if isinstance(model, ConstantIndex):
        if model.n <= 1.0:
            return None
        cut = cutoff_energy(beta, model.n, mc2)
        if cut is None:
            return None
        lam = PHOTON_EV_NM / cut
        return lam if lo <= lam <= hi else None

    def excess(lam: float) -> float:
        n = model.n_at(lam)
        u = beta * n - 1.0
        if n <= 1.0 or u <= 0.0:
            return -PHOTON_EV_NM / lam
        wcut = 2.0 * mc2 * u / ((n * n - 1.0) * math.sqrt((1.0 - beta) * (1.0 + beta)))
        return wcut - PHOTON_EV_NM / lam

    return bisect_root(excess, lo, hi, xtol=_WAVELENGTH_TOL_NM)


@dataclass(frozen=True)
class ConeGeometry:
    """Inner and outer emission cones of a state with spread angle theta_i."""

    theta_cr: float
    inner: float
    outer: float
    backward: bool


def double_cone(theta_i: float, theta_cr: float) -> ConeGeometry:
    """Split the emission into the |theta_i - theta_cr| and theta_i + theta_cr
    cones; the outer one points backward once it exceeds 90 degrees."""
    if not 0.0 <= theta_i < math.pi / 2:
        raise ValueError("theta_i must lie in [0, pi/2)")
    if not 0.0 <= theta_cr < math.pi:
        raise ValueError("theta_cr must lie in [0, pi)")
    outer = theta_i + theta_cr
    return ConeGeometry(
        theta_cr=theta_cr,
        inner=abs(theta_i - theta_cr),
        outer=outer,
        backward=outer > math.pi / 2,
    )


@dataclass(frozen=True)
class OutgoingKinematics:
    """On-shell outgoing electron fixed by energy and z-momentum conservation."""

    energy_ev: float
    p_z_c: float
    p_r_c: float
    theta_rad: float


def _radicand(E_i: float, theta_i: float, hbar_omega: float, theta_ph: float,
              n: float, mc2: float):
    """(p_fr*c)^2 together with the fixed quantities it derives from."""
    E_f = E_i - hbar_omega
    p_i_c = math.sqrt((E_i - mc2) * (E_i + mc2))
    p_iz = p_i_c * math.cos(theta_i)
    p_ir = p_i_c * math.sin(theta_i)
    p_fz = p_iz - n * hbar_omega * math.cos(theta_ph)
    k_r = n * hbar_omega * math.sin(theta_ph)
    D = (E_f - mc2) * (E_f + mc2) - p_fz * p_fz
    return E_f, p_ir, p_fz, k_r, D


def conservation_solve(E_i: float, theta_i: float, hbar_omega: float,
                       theta_ph: float, n: float,
                       mc2: float = ELECTRON_MC2_EV):
    """Outgoing electron from E_f = E_i - hbar*omega and
    p_fz*c = p_iz*c - n*hbar*omega*cos(theta_ph), or None when the electron
    would be off shell (E_f < mc^2 or negative transverse radicand)."""
    if E_i < mc2:
        raise ValueError("total energy below rest energy")
    if hbar_omega < 0.0:
        raise ValueError("photon energy must be non-negative")
    E_f, _, p_fz, _, D = _radicand(E_i, theta_i, hbar_omega, theta_ph, n, mc2)
    if E_f < mc2:
        return None
    # tolerate the rounding floor of the radicand, e.g. a total-energy
    # transfer leaving the electron exactly at rest
    if D < 0.0:
        if D < -64.0 * np.finfo(float).eps * (E_f + mc2) ** 2:
            return None
        D = 0.0
    p_fr = math.sqrt(D)
    return OutgoingKinematics(
        energy_ev=E_f,
        p_z_c=p_fz,
        p_r_c=p_fr,
        theta_rad=math.atan2(p_fr, p_fz),
    )


def _theta_state(beta: float, n: float, hbar_omega: float, mc2: float):
    """(theta_cr or NaN, below_threshold, beyond_cutoff) for one photon.

    Mirrors quantum_angle but keeps the reason the angle is absent, which the
    rate formulas turn into flag columns.
    """
    u, v = _uv(beta, n, hbar_omega, mc2)
    if u <= 0.0:
        if u == 0.0 and v <= COS_CLAMP_ABOVE:
            return 0.0, True, False
        return math.nan, True, False
    if v > u + COS_CLAMP_ABOVE * (1.0 + u):
        return math.nan, False, True
    if v >= u * (1.0 - CUTOFF_SNAP_REL):
        return 0.0, False, False
    return math.acos(min(1.0, (1.0 + v) / (beta * n))), False, False


def _theta_state_arrays(beta, n, hbar_omega, mc2: float):
    """Vectorised cos(theta_cr), stable sin^2(theta_cr) and status masks.

    beta, n and hbar_omega broadcast. sin^2 is computed as
    (u - v)(2 + u + v)/(beta n)^2, which keeps full precision next to the
    cutoff where 1 - cos^2 would cancel.
    """
    beta = np.asarray(beta, dtype=float)
    n = np.asarray(n, dtype=float)
    hw = np.asarray(hbar_omega, dtype=float)
    bn = beta * n
    u = bn - 1.0
    v = hw * (n * n - 1.0) * np.sqrt((1.0 - beta) * (1.0 + beta)) / (2.0 * mc2)
    below = u <= 0.0
    beyond = ~below & (v > u + COS_CLAMP_ABOVE * (1.0 + u))
    snapped = ~below & ~beyond & (v >= u * (1.0 - CUTOFF_SNAP_REL))
    emitting = ~below & ~beyond
    with np.errstate(invalid="ignore"):
        cos_cr = np.where(snapped, 1.0, np.minimum(1.0, (1.0 + v) / bn))
        sin2_cr = np.where(snapped, 0.0, (u - v) * (2.0 + u + v) / (bn * bn))
    cos_cr = np.where(emitting, cos_cr, np.nan)
    sin2_cr = np.where(emitting, np.maximum(sin2_cr, 0.0), np.nan)
    return cos_cr, sin2_cr, below, beyond


def emission_allowed(E_i: float, theta_i: float, hbar_omega: float,
                     theta_ph: float, n: float,
                     mc2: float = ELECTRON_MC2_EV) -> bool:
    """Kinematic permitted-zone test at fixed (hbar_omega, theta_ph).

    On-shellness alone does not make the transition possible: the transverse
    momenta must also close a vector triangle, which in radicand form reads
    (p_ir - k_r)^2 <= p_fr^2 <= (p_ir + k_r)^2. This is the same region where
    the radial overlap integral of the amplitude machinery is non-zero, stated
    through conserved quantities instead of side lengths.
    """
    E_f, p_ir, _, k_r, D = _radicand(E_i, theta_i, hbar_omega, theta_ph, n, mc2)
    if E_f < mc2 or D < 0.0:
        return False
    lo = p_ir - k_r
    return lo * lo <= D <= (p_ir + k_r) * (p_ir + k_r)
