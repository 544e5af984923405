"""Quantum Cherenkov radiation observables for shaped electron beams.

Emission angles and double-cone splitting, recoil and dispersion spectral
cutoffs, per-channel emission rates with their cutoff discontinuities,
closed-form transition-amplitude maps validated against an independent
oscillatory-quadrature oracle, and Gaussian-beam averaging of all rates.
"""

from .amplitude import (AmplitudeMap, ChannelSelection, TriangleAngles,
                        TriangleSides, ZONE_BOUNDARY, ZONE_EXTERIOR,
                        ZONE_INTERIOR, amplitude_map, closed_form_amplitude,
                        spinor_factor_flip_azimuthal, triangle_angles,
                        triangle_area)
from .angles import (ConeGeometry, OutgoingKinematics, conservation_solve,
                     conventional_angle, cutoff_energy, double_cone,
                     emission_allowed, quantum_angle,
                     quantum_cutoff_wavelength)
from .beams import (GaussianBeam, QuadratureSpec, average_rate,
                    averaged_spectrum_scan)
from .constants import (ALPHA, DEFAULT_UNITS, ELECTRON_MC2_EV, HBARC_EV_NM,
                        PHOTON_EV_NM, UnitsConvention)
from .dispersion import (ConstantIndex, DispersionModel, SellmeierModel,
                         TabulatedIndex, dispersion_cutoff_wavelength,
                         fused_silica, threshold_beta)
from .kinematics import (CylindricalElectronState, PhotonState, Polarization,
                         Spin, beta_from_energy, energy_from_beta,
                         kinetic_energy, lorentz_factor, momenta,
                         photon_energy_ev, photon_wavelength_nm)
from .oracle import OracleResult, oracle_triple_bessel, random_interior_cases
from .rates import (CHANNELS, RateResult, SpectrumTable,
                    discontinuity_at_cutoff, frank_tamm, rate_flip_azimuthal,
                    rate_total, spectrum_scan)
from .scan import (ConfigError, ScanConfig, ScanResult, config_from_dict,
                   model_from_config, run_scan)

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "AmplitudeMap", "CHANNELS", "ChannelSelection", "ConeGeometry",
    "ConfigError", "ConstantIndex", "CylindricalElectronState",
    "DEFAULT_UNITS", "DispersionModel", "ELECTRON_MC2_EV", "GaussianBeam",
    "HBARC_EV_NM", "OracleResult", "OutgoingKinematics", "PHOTON_EV_NM",
    "PhotonState", "Polarization", "QuadratureSpec", "RateResult",
    "ScanConfig", "ScanResult", "SellmeierModel", "Spin", "SpectrumTable",
    "TabulatedIndex", "TriangleAngles", "TriangleSides", "UnitsConvention",
    "ZONE_BOUNDARY", "ZONE_EXTERIOR", "ZONE_INTERIOR", "amplitude_map",
    "average_rate", "averaged_spectrum_scan", "beta_from_energy",
    "closed_form_amplitude", "config_from_dict", "conservation_solve",
    "conventional_angle", "cutoff_energy", "discontinuity_at_cutoff",
    "dispersion_cutoff_wavelength", "double_cone", "emission_allowed",
    "energy_from_beta", "frank_tamm", "fused_silica", "kinetic_energy",
    "lorentz_factor", "model_from_config", "momenta", "oracle_triple_bessel",
    "photon_energy_ev", "photon_wavelength_nm", "quantum_angle",
    "quantum_cutoff_wavelength", "random_interior_cases",
    "rate_flip_azimuthal", "rate_total", "run_scan",
    "spectrum_scan", "spinor_factor_flip_azimuthal", "threshold_beta",
    "triangle_angles", "triangle_area",
]
