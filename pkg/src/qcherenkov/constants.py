"""Unit convention and physical constants.

Everything internal to this package uses eV for energies, eV for momenta
stored as p*c, nm for wavelengths and radians for angles. Photon emission
rates follow the dimensionless per-unit-frequency convention alpha*beta*sin^2.
"""

from dataclasses import dataclass

ELECTRON_MC2_EV = 510998.95    # electron rest energy mc^2, eV (CODATA)
HBARC_EV_NM = 197.3269804      # hbar*c, eV*nm
PHOTON_EV_NM = 1239.8420       # 2*pi*hbar*c: lambda[nm] * (hbar*omega)[eV]
ALPHA = 1.0 / 137.035999       # fine-structure constant


@dataclass(frozen=True)
class UnitsConvention:
    """The eV / nm / rad bookkeeping shared by every module.

    The rest energy is a parameter: all results hold for any charged
    spin-1/2 fermion, the electron value is only the default.
    """

    rest_energy_ev: float = ELECTRON_MC2_EV
    hbar_c_ev_nm: float = HBARC_EV_NM
    photon_ev_nm: float = PHOTON_EV_NM
    fine_structure: float = ALPHA


DEFAULT_UNITS = UnitsConvention()


def constants_block() -> dict:
    """Constants embedded in every output file for reproducibility."""
    return {
        "mc2_ev": ELECTRON_MC2_EV,
        "hbar_c_ev_nm": HBARC_EV_NM,
        "photon_ev_nm": PHOTON_EV_NM,
        "alpha": ALPHA,
    }
