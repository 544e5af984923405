"""Photon-emission rates per unit frequency: the conventional Frank-Tamm
form, the spin-flip azimuthal channel, and the spin/polarization-summed
total, plus spectrum scans and the analytic cutoff discontinuities.

All rates are dimensionless (alpha*beta*sin^2 convention). beta is always
derived from the total electron energy so on-shell consistency cannot be
violated. Below-threshold and beyond-cutoff photons yield flagged zeros,
never exceptions: spectra must render gaps. The scalar operations delegate
to the same array kernels used by scans and beam averaging, so a zero-width
beam average reproduces the pointwise rate bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angles import _theta_state_arrays
from .constants import ALPHA, ELECTRON_MC2_EV, PHOTON_EV_NM
from .dispersion import DispersionModel
from .kinematics import beta_from_energy

CHANNELS = ("frank_tamm", "flip_azimuthal", "total")


@dataclass(frozen=True)
class RateResult:
    gamma_omega: float
    channel: str
    below_threshold: bool = False
    beyond_cutoff: bool = False

    def __post_init__(self):
        if not self.gamma_omega >= 0.0:
            raise ValueError("rates are non-negative")
        if (self.below_threshold or self.beyond_cutoff) and self.gamma_omega != 0.0:
            raise ValueError("flagged results must carry a zero rate")


# ---------------------------------------------------------------------------
# array kernels (shared by the scalar operations, scans and beam averaging)
# ---------------------------------------------------------------------------

def _frank_tamm_arrays(beta, n):
    beta = np.asarray(beta, dtype=float)
    n = np.asarray(n, dtype=float)
    bn = beta * n
    u = bn - 1.0
    below = ~(u > 0.0)
    with np.errstate(invalid="ignore"):
        rate = np.where(u > 0.0, ALPHA * beta * u * (2.0 + u) / (bn * bn), 0.0)
    return rate, below


def _flip_azimuthal_arrays(E_i, theta_i, n, hbar_omega, mc2):
    # integer powers are spelled as products: numpy's scalar and vector
    # pow paths round differently, and the scalar operations must be
    # bit-identical to scan columns and quadrature nodes
    E_i = np.asarray(E_i, dtype=float)
    n = np.asarray(n, dtype=float)
    hw = np.asarray(hbar_omega, dtype=float)
    beta = np.sqrt((E_i - mc2) * (E_i + mc2)) / E_i
    cos_cr, sin2_cr, below, beyond = _theta_state_arrays(beta, n, hw, mc2)
    emitting = ~below & ~beyond
    with np.errstate(invalid="ignore"):
        E_f = E_i - hw
        cos_i = np.cos(theta_i)
        sin_i = np.sin(theta_i)
        kick = beta * E_i - n * (E_i + mc2) * cos_cr
        term1 = cos_i * cos_i * kick * kick / ((E_i + mc2) * (E_f + mc2))
        term2 = (0.5 * n * n * sin_i * sin_i * sin2_cr
                 * (E_i + mc2) / (E_f + mc2))
        recoil = hw / E_i
        rate = (ALPHA / (4.0 * beta)) * recoil * recoil * (term1 + term2)
    return np.where(emitting, rate, 0.0), below, beyond


def _total_arrays(E_i, n, hbar_omega, mc2):
    E_i = np.asarray(E_i, dtype=float)
    n = np.asarray(n, dtype=float)
    hw = np.asarray(hbar_omega, dtype=float)
    beta = np.sqrt((E_i - mc2) * (E_i + mc2)) / E_i
    _, sin2_cr, below, beyond = _theta_state_arrays(beta, n, hw, mc2)
    emitting = ~below & ~beyond
    with np.errstate(invalid="ignore"):
        recoil = hw / E_i
        rate = (ALPHA * beta * sin2_cr
                + (ALPHA / beta) * recoil * recoil * (n * n - 1.0) / 2.0)
    return np.where(emitting, rate, 0.0), below, beyond


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------

def frank_tamm(beta: float, n: float) -> RateResult:
    """Conventional rate alpha*beta*sin^2(theta_c) with cos(theta_c)=1/(beta*n).

    Below threshold (beta*n <= 1) the rate is a flagged zero.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    if n <= 0.0:
        raise ValueError("refractive index must be positive")
    rate, below = _frank_tamm_arrays(beta, n)
    return RateResult(float(rate), "frank_tamm", below_threshold=bool(below))


def _check_rate_domain(E_i: float, hbar_omega: float, mc2: float):
    if E_i <= mc2:
        raise ValueError("total energy must exceed the rest energy")
    if not 0.0 < hbar_omega < E_i - mc2:
        raise ValueError("photon energy must lie in (0, E_i - mc^2)")


def rate_flip_azimuthal(E_i: float, theta_i: float, n: float,
                        hbar_omega: float,
                        mc2: float = ELECTRON_MC2_EV) -> RateResult:
    """Spin-flip rate into azimuthally polarised photons.

    Gamma = (alpha/4 beta) (hw/E_i)^2 {
        cos^2(theta_i) (beta E_i - n (E_i+mc^2) cos(theta_cr))^2
            / ((E_i+mc^2)(E_f+mc^2))
      + (1/2) n^2 sin^2(theta_i) sin^2(theta_cr) (E_i+mc^2)/(E_f+mc^2) }

    with theta_cr the recoil-corrected cone angle. The second brace term
    vanishes at the cutoff while the first stays finite, so the spectrum
    jumps to zero there.
    """
    _check_rate_domain(E_i, hbar_omega, mc2)
    rate, below, beyond = _flip_azimuthal_arrays(E_i, theta_i, n, hbar_omega, mc2)
    return RateResult(float(rate), "flip_azimuthal",
                      below_threshold=bool(below), beyond_cutoff=bool(beyond))


def rate_total(E_i: float, n: float, hbar_omega: float,
               mc2: float = ELECTRON_MC2_EV) -> RateResult:
    """Spin- and polarization-summed rate

        Gamma = alpha beta sin^2(theta_cr) + (alpha/beta)(hw/E_i)^2 (n^2-1)/2

    with the recoil-corrected theta_cr. Independent of the spread angle by
    construction, which is why theta_i is not a parameter. Approaches the
    Frank-Tamm rate as hw/E_i goes to 0 and drops to a flagged zero past the
    cutoff, leaving a finite step there.
    """
    _check_rate_domain(E_i, hbar_omega, mc2)
    rate, below, beyond = _total_arrays(E_i, n, hbar_omega, mc2)
    return RateResult(float(rate), "total",
                      below_threshold=bool(below), beyond_cutoff=bool(beyond))


def discontinuity_at_cutoff(E_i: float, theta_i: float, n: float,
                            channel: str,
                            mc2: float = ELECTRON_MC2_EV) -> float:
    """Analytic left limit of a quantum channel at its cutoff, equal to the
    jump magnitude since the rate past the cutoff is exactly zero.

    Obtained by substituting theta_cr = 0 (and the cutoff photon energy)
    into the channel formula.
    """
    if channel not in ("flip_azimuthal", "total"):
        raise ValueError("channel must be flip_azimuthal or total")
    if E_i <= mc2:
        raise ValueError("total energy must exceed the rest energy")
    beta = beta_from_energy(E_i, mc2)
    if n <= 1.0 or beta * n <= 1.0:
        raise ValueError("no cutoff below the Cherenkov threshold")
    u = beta * n - 1.0
    hw_cut = 2.0 * mc2 * u / ((n * n - 1.0) * math.sqrt((1.0 - beta) * (1.0 + beta)))
    if channel == "total":
        return (ALPHA / beta) * (hw_cut / E_i) ** 2 * (n * n - 1.0) / 2.0
    E_f = E_i - hw_cut
    return ((ALPHA / (4.0 * beta)) * (hw_cut / E_i) ** 2
            * math.cos(theta_i) ** 2
            * (beta * E_i - n * (E_i + mc2)) ** 2
            / ((E_i + mc2) * (E_f + mc2)))


# ---------------------------------------------------------------------------
# spectrum scans
# ---------------------------------------------------------------------------

@dataclass
class SpectrumTable:
    """Rate-vs-wavelength rows with per-row flags.

    rates maps channel name (plus optional '<channel>_avg' columns) to an
    array aligned with lambda_nm. Flags are 0/1 arrays: below_threshold,
    beyond_cutoff, invalid_medium. theta_cr_rad is NaN wherever the quantum
    angle is absent.
    """

    lambda_nm: np.ndarray
    hbar_omega_ev: np.ndarray
    n: np.ndarray
    theta_cr_rad: np.ndarray
    rates: dict[str, np.ndarray]
    flags: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def columns(self) -> dict[str, np.ndarray]:
        cols = {
            "lambda_nm": self.lambda_nm,
            "hbar_omega_ev": self.hbar_omega_ev,
            "n": self.n,
            "theta_cr_rad": self.theta_cr_rad,
        }
        for name in sorted(self.rates):
            cols[f"rate_{name}"] = self.rates[name]
        for name in ("below_threshold", "beyond_cutoff", "invalid_medium"):
            cols[name] = self.flags[name]
        return cols


def _resolve_channels(channels) -> tuple[str, ...]:
    for ch in channels:
        if ch not in CHANNELS:
            raise ValueError(f"unknown channel {ch!r}")
    return tuple(dict.fromkeys(("frank_tamm",) + tuple(channels)))


def spectrum_scan(E_i: float, theta_i: float, model: DispersionModel,
                  lambda_range: tuple[float, float], n_points: int,
                  channels=("flip_azimuthal", "total"),
                  mc2: float = ELECTRON_MC2_EV) -> SpectrumTable:
    """Scan the requested channels over a wavelength range.

    The Frank-Tamm reference column is always included. Wavelengths outside
    the dispersion window become flagged gap rows (NaN) instead of aborting.
    """
    if n_points < 2:
        raise ValueError("need at least two scan points")
    lo, hi = lambda_range
    if not lo < hi:
        raise ValueError("lambda range must be ordered (low, high)")
    return _scan_rows(E_i, theta_i, model, np.linspace(lo, hi, n_points),
                      channels, mc2)


def _scan_rows(E_i: float, theta_i: float, model: DispersionModel,
               lam: np.ndarray, channels, mc2: float) -> SpectrumTable:
    """Scan over an explicit wavelength array (row-parallel building block)."""
    wanted = _resolve_channels(channels)
    hw = PHOTON_EV_NM / lam
    w_lo, w_hi = model.window_nm
    in_window = (lam >= w_lo) & (lam <= w_hi)
    n_col = np.full(lam.shape, np.nan)
    if np.any(in_window):
        n_col[in_window] = np.asarray(model.n_at(lam[in_window]), dtype=float)

    beta = beta_from_energy(E_i, mc2)
    with np.errstate(invalid="ignore"):
        cos_cr, _, below, beyond = _theta_state_arrays(beta, n_col, hw, mc2)
        theta_cr = np.arccos(np.clip(cos_cr, -1.0, 1.0))

    rates: dict[str, np.ndarray] = {}
    for ch in wanted:
        if ch == "frank_tamm":
            col, _ = _frank_tamm_arrays(beta, n_col)
        elif ch == "flip_azimuthal":
            col, _, _ = _flip_azimuthal_arrays(E_i, theta_i, n_col, hw, mc2)
        else:
            col, _, _ = _total_arrays(E_i, n_col, hw, mc2)
        rates[ch] = np.where(in_window, col, np.nan)

    flags = {
        "below_threshold": (below & in_window).astype(np.uint8),
        "beyond_cutoff": (beyond & in_window).astype(np.uint8),
        "invalid_medium": (~in_window).astype(np.uint8),
    }
    return SpectrumTable(
        lambda_nm=lam,
        hbar_omega_ev=hw,
        n=n_col,
        theta_cr_rad=np.where(in_window, theta_cr, np.nan),
        rates=rates,
        flags=flags,
        metadata={"E_i_ev": E_i, "beta": beta, "theta_i_rad": theta_i,
                  "channels": list(wanted)},
    )
