"""Transition-amplitude machinery: OAM selection rules, transverse-momentum
triangle geometry, the closed-form triple-Bessel overlap and amplitude maps
over the (wavelength, emission angle) plane.

The radial overlap of the three cylindrical waves is

    integral_0^inf J_li(s_i r) J_lf(s_f r) J_{li-lf}(s_ph r) r dr
        = cos((li - lf)*alpha_f - lf*alpha_ph) / (2*pi*S)

whenever the transverse momenta (s_i, s_f, s_ph) close a triangle of area S,
with alpha_* the interior angle opposite side s_*. Outside the triangle
region the overlap vanishes; on the degenerate boundary it diverges as 1/S.
The cosine pairing used here is validated against direct quadrature of the
oscillatory integral (see oracle.py), including negative OAM orders; an
equivalent form is (-1)^lf * cos(li*alpha_f + lf*alpha_i) / (2*pi*S).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angles import _theta_state, conventional_angle, quantum_cutoff_wavelength
from .constants import ELECTRON_MC2_EV, PHOTON_EV_NM
from .dispersion import DispersionModel
from .kinematics import CylindricalElectronState, Polarization

ZONE_EXTERIOR = 0
ZONE_INTERIOR = 1
ZONE_BOUNDARY = 2

# Cells with S below this fraction of (max side)^2 count as boundary-divergent.
BOUNDARY_AREA_FRACTION = 1e-9


@dataclass(frozen=True)
class TriangleSides:
    """Transverse momenta (as p*c in eV) entering the radial overlap."""

    s_i: float
    s_f: float
    s_ph: float

    def __post_init__(self):
        if min(self.s_i, self.s_f, self.s_ph) < 0.0:
            raise ValueError("triangle sides must be non-negative")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.s_i, self.s_f, self.s_ph)

    @property
    def max_side(self) -> float:
        return max(self.s_i, self.s_f, self.s_ph)

    def is_formable(self) -> bool:
        """Each side no longer than the sum of the other two (degenerate ok)."""
        a, b, c = self.as_tuple()
        return a <= b + c and b <= a + c and c <= a + b


@dataclass(frozen=True)
class TriangleAngles:
    """Interior angles opposite s_i, s_f and s_ph respectively."""

    alpha_i: float
    alpha_f: float
    alpha_ph: float


def triangle_area(sides: TriangleSides):
    """Area from the side lengths, or None when no triangle can be made.

    Uses Kahan's sorted-sides product, which stays accurate for needle-like
    triangles; the degenerate boundary gives exactly 0.0.
    """
    x, y, z = sorted(sides.as_tuple(), reverse=True)
    t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    if t < 0.0:
        return None
    return 0.25 * math.sqrt(t)


def triangle_angles(sides: TriangleSides) -> TriangleAngles:
    """Law-of-cosines interior angles; requires a non-degenerate triangle."""
    area = triangle_area(sides)
    if area is None or area == 0.0:
        raise ValueError("angles need a non-degenerate triangle")
    a, b, c = sides.as_tuple()

    def _ang(opp, s1, s2):
        return math.acos(max(-1.0, min(1.0, (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2))))

    return TriangleAngles(
        alpha_i=_ang(a, b, c),
        alpha_f=_ang(b, a, c),
        alpha_ph=_ang(c, a, b),
    )


def closed_form_amplitude(l_i: int, l_f: int, sides: TriangleSides) -> float:
    """Closed-form radial overlap for orders (l_i, l_f, l_i - l_f), in eV^-2.

    Returns 0.0 outside the triangle region and a signed infinity on the
    degenerate boundary, where the 1/S divergence is real.
    """
    area = triangle_area(sides)
    if area is None:
        return 0.0
    a, b, c = sides.as_tuple()

    def _cos_opp(opp, s1, s2):
        denom = 2.0 * s1 * s2
        if denom == 0.0:
            return 1.0
        return max(-1.0, min(1.0, (s1 * s1 + s2 * s2 - opp * opp) / denom))

    alpha_f = math.acos(_cos_opp(b, a, c))
    alpha_ph = math.acos(_cos_opp(c, a, b))
    osc = math.cos((l_i - l_f) * alpha_f - l_f * alpha_ph)
    if area == 0.0:
        return math.copysign(math.inf, osc if osc != 0.0 else 1.0)
    return osc / (2.0 * math.pi * area)


def spinor_factor_flip_azimuthal(E_i: float, E_f: float, p_iz_c: float,
                                 p_fz_c: float,
                                 mc2: float = ELECTRON_MC2_EV) -> float:
    """Spin-flip, azimuthal-polarization spinor weight of the interaction
    density: [p_fz(E_i + mc^2) - p_iz(E_f + mc^2)] normalised by
    2*sqrt(E_i E_f (E_i + mc^2)(E_f + mc^2)). Dimensionless; vanishes without
    recoil."""
    for e, pz in ((E_i, p_iz_c), (E_f, p_fz_c)):
        if e < mc2:
            raise ValueError("spinor factor needs on-shell energies (E >= mc^2)")
        if pz * pz > (e - mc2) * (e + mc2) * (1.0 + 1e-12):
            raise ValueError("longitudinal momentum exceeds the on-shell total")
    num = p_fz_c * (E_i + mc2) - p_iz_c * (E_f + mc2)
    den = 2.0 * math.sqrt(E_i * E_f * (E_i + mc2) * (E_f + mc2))
    return num / den


@dataclass(frozen=True)
class ChannelSelection:
    """OAM bookkeeping for one emission channel.

    The photon Bessel order is always m = l_i - l_f. Without spin flip the
    OAM balance is l_ph + l_f = l_i, so m = l_ph; a flip shifts it to
    m = l_ph + flip_sign with flip_sign in {+1, -1} (both signs occur, one
    per flip direction; +1 is the azimuthal-flip channel computed here).
    """

    spin_flip: bool
    polarization: Polarization = Polarization.AZIMUTHAL
    flip_sign: int = +1

    def __post_init__(self):
        if self.flip_sign not in (-1, +1):
            raise ValueError("flip_sign must be +1 or -1")

    def photon_bessel_order(self, l_ph: int) -> int:
        return l_ph + (self.flip_sign if self.spin_flip else 0)

    def outgoing_oam(self, l_i: int, l_ph: int) -> int:
        return l_i - self.photon_bessel_order(l_ph)


@dataclass
class AmplitudeMap:
    """Amplitude, zone mask and boundary curves over a (lambda, theta) grid.

    amplitude, s_delta, zone and spinor are (n_lambda, n_theta) arrays in
    row-major (lambda outer) order. Boundary curves hold, per wavelength, the
    emission angles where the triangle degenerates: theta_i + theta_cr
    (outer), theta_i - theta_cr and theta_cr - theta_i (inner pair, NaN where
    negative), plus the conventional-angle reference. cutoff_lambda_nm is the
    wavelength where the permitted zone closes, when inside the scanned range.
    """

    lambda_nm: np.ndarray
    theta_ph_rad: np.ndarray
    amplitude: np.ndarray
    s_delta: np.ndarray
    zone: np.ndarray
    spinor: np.ndarray
    theta_outer: np.ndarray
    theta_inner: np.ndarray
    theta_mirror: np.ndarray
    theta_conventional: np.ndarray
    cutoff_lambda_nm: float | None
    metadata: dict = field(default_factory=dict)


def _zone_row(E_i, p_iz, p_ir, hbar_omega, n, theta_ph, mc2):
    """Vectorised kinematics and triangle data for one wavelength row."""
    E_f = E_i - hbar_omega
    p_fz = p_iz - n * hbar_omega * np.cos(theta_ph)
    k_r = n * hbar_omega * np.sin(theta_ph)
    D = (E_f - mc2) * (E_f + mc2) - p_fz * p_fz
    on_shell = (E_f >= mc2) & (D >= 0.0)
    s_f = np.sqrt(np.where(D >= 0.0, D, np.nan))
    # triangle predicate on the side lengths
    formable = on_shell & (p_ir <= s_f + k_r) & (s_f <= p_ir + k_r) & (k_r <= p_ir + s_f)
    return E_f, p_fz, s_f, k_r, formable


def _area_row(s_i, s_f, s_ph):
    """Kahan area along a row; valid only where the sides are formable.

    The median side is selected, not recomputed by subtraction, so the
    result matches triangle_area bit for bit.
    """
    hi = np.maximum(np.maximum(s_i, s_f), s_ph)
    lo = np.minimum(np.minimum(s_i, s_f), s_ph)
    mid = np.minimum(np.maximum(s_i, s_f),
                     np.maximum(np.minimum(s_i, s_f), s_ph))
    t = (hi + (mid + lo)) * (lo - (hi - mid)) * (lo + (hi - mid)) * (hi + (mid - lo))
    return 0.25 * np.sqrt(np.maximum(t, 0.0))


def amplitude_map(beam: CylindricalElectronState, model: DispersionModel,
                  l_ph: int, spin_flip: bool,
                  lambda_range: tuple[float, float],
                  theta_range: tuple[float, float],
                  grid: tuple[int, int],
                  flip_sign: int = +1) -> AmplitudeMap:
    """Scan the closed-form amplitude over a (lambda, theta_ph) grid.

    Each cell solves the outgoing kinematics, fixes l_f from the OAM balance,
    builds the transverse-momentum triangle and evaluates the closed form.
    Cells are classified interior / boundary-divergent / exterior; the
    spin-flip spinor weight is reported alongside but never multiplied into
    the amplitude. Wavelengths outside the dispersion model window become
    all-exterior rows with NaN amplitude.
    """
    n_lam, n_th = grid
    if n_lam < 2 or n_th < 2:
        raise ValueError("grid must be at least 2x2")
    lo_l, hi_l = lambda_range
    lo_t, hi_t = theta_range
    if not (lo_l < hi_l and lo_t < hi_t):
        raise ValueError("ranges must be ordered (low, high)")
    result = _map_rows(beam, model, l_ph, spin_flip,
                       np.linspace(lo_l, hi_l, n_lam),
                       np.linspace(lo_t, hi_t, n_th), flip_sign)
    try:
        result.cutoff_lambda_nm = quantum_cutoff_wavelength(
            model, beam.beta, (lo_l, hi_l), beam.mc2_ev)
    except ValueError:
        result.cutoff_lambda_nm = None
    return result


def _map_rows(beam: CylindricalElectronState, model: DispersionModel,
              l_ph: int, spin_flip: bool, lambdas: np.ndarray,
              thetas: np.ndarray, flip_sign: int = +1) -> AmplitudeMap:
    """Amplitude map over explicit grids (row-parallel building block).

    cutoff_lambda_nm is left unset (None); the public wrapper and the scan
    assembler fill it from the full wavelength range.
    """
    n_lam = lambdas.size
    n_th = thetas.size
    channel = ChannelSelection(spin_flip=spin_flip, flip_sign=flip_sign)
    l_f = channel.outgoing_oam(beam.oam_l, l_ph)
    l_i = beam.oam_l
    mc2 = beam.mc2_ev

    E_i = beam.energy_ev
    beta = beam.beta
    p_iz = beam.p_z_c
    p_ir = beam.p_r_c
    theta_i = beam.spread_angle_rad

    amp = np.zeros((n_lam, n_th))
    s_delta = np.full((n_lam, n_th), np.nan)
    zone = np.zeros((n_lam, n_th), dtype=np.uint8)
    spinor = np.full((n_lam, n_th), np.nan)
    th_outer = np.full(n_lam, np.nan)
    th_inner = np.full(n_lam, np.nan)
    th_mirror = np.full(n_lam, np.nan)
    th_conv = np.full(n_lam, np.nan)

    for j, lam in enumerate(lambdas):
        if not model.covers(lam):
            amp[j, :] = np.nan
            continue
        n = float(model.n_at(lam))
        hw = PHOTON_EV_NM / lam
        E_f, p_fz, s_f, k_r, formable = _zone_row(
            E_i, p_iz, p_ir, hw, n, thetas, mc2)
        area = _area_row(p_ir, s_f, k_r)
        max_side = np.maximum(np.maximum(p_ir, s_f), k_r)
        divergent = formable & (area < BOUNDARY_AREA_FRACTION * max_side**2)
        interior = formable & ~divergent

        with np.errstate(invalid="ignore", divide="ignore"):
            cos_af = np.clip((p_ir**2 + k_r**2 - s_f**2) / (2.0 * p_ir * k_r), -1.0, 1.0)
            cos_aph = np.clip((p_ir**2 + s_f**2 - k_r**2) / (2.0 * p_ir * s_f), -1.0, 1.0)
            osc = np.cos((l_i - l_f) * np.arccos(cos_af) - l_f * np.arccos(cos_aph))
            row = np.where(interior, osc / (2.0 * math.pi * area), 0.0)
            row = np.where(divergent, np.copysign(np.inf, np.where(osc == 0.0, 1.0, osc)), row)
        amp[j, :] = row
        s_delta[j, :] = np.where(formable, area, np.nan)
        zone[j, :] = np.where(interior, ZONE_INTERIOR,
                              np.where(divergent, ZONE_BOUNDARY, ZONE_EXTERIOR))
        on_shell = E_f >= mc2
        num = p_fz * (E_i + mc2) - p_iz * (E_f + mc2)
        den = 2.0 * np.sqrt(np.where(on_shell, E_i * E_f * (E_i + mc2) * (E_f + mc2), np.nan))
        spinor[j, :] = num / den

        theta_cr, _, _ = _theta_state(beta, n, hw, mc2)
        if not math.isnan(theta_cr):
            th_outer[j] = theta_i + theta_cr
            if theta_i >= theta_cr:
                th_inner[j] = theta_i - theta_cr
            else:
                th_mirror[j] = theta_cr - theta_i
        conv = conventional_angle(beta, n)
        th_conv[j] = np.nan if conv is None else conv

    return AmplitudeMap(
        lambda_nm=lambdas,
        theta_ph_rad=thetas,
        amplitude=amp,
        s_delta=s_delta,
        zone=zone,
        spinor=spinor,
        theta_outer=th_outer,
        theta_inner=th_inner,
        theta_mirror=th_mirror,
        theta_conventional=th_conv,
        cutoff_lambda_nm=None,
        metadata={
            "l_i": l_i,
            "l_f": l_f,
            "l_ph": l_ph,
            "spin_flip": spin_flip,
            "flip_sign": flip_sign,
            "beta": beta,
            "theta_i_rad": theta_i,
        },
    )
