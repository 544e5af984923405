"""Gaussian-beam averaging: what survives a realistic energy spread.

The recoil cutoff shifts by about 2 eV per eV of beam energy near the
Cherenkov threshold, so an energy spread smears the cutoff strongly: with
sigma_E = 0.5 eV the spin-flip edge at 244 nm broadens into a bump peaking
tens of nm longer, while with a few-meV spread the edge (and its peak)
survives almost intact. The dispersive-silica cutoff at ~551 nm barely
moves, because there the cutoff position is pinned by the refractive index,
not by the beam energy. The total rate, discontinuous for a monoenergetic
beam, becomes a continuous roll-off.

Run:  python demos/05_gaussian_beams.py [outdir]
"""

import math
import sys
from pathlib import Path

import numpy as np

from qcherenkov import (ConstantIndex, GaussianBeam, QuadratureSpec,
                        average_rate, averaged_spectrum_scan, cutoff_energy,
                        energy_from_beta, fused_silica)
from qcherenkov.constants import PHOTON_EV_NM
from qcherenkov.io import write_spectrum_csv, write_spectrum_svg

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
outdir.mkdir(parents=True, exist_ok=True)

BETA = 0.685
E0 = energy_from_beta(BETA)
MODEL = ConstantIndex(1.45986)
CUT = cutoff_energy(BETA, 1.45986)
LAM_CUT = PHOTON_EV_NM / CUT

print(f"monoenergetic cutoff: {CUT:.4f} eV = {LAM_CUT:.2f} nm")
print(f"cutoff sensitivity: d(cutoff)/dE ~ 2, so sigma_E = 0.5 eV smears it "
      f"by ~1 eV\n")

print("== where does the averaged spin-flip peak sit? ==")
lam = np.arange(238.0, 320.0, 0.5)
for sigma_e in (0.5, 0.05, 0.005):
    beam = GaussianBeam(E0, sigma_e, math.radians(0.1),
                        QuadratureSpec(8, 48, 4.0))
    vals = [average_rate("flip_azimuthal", beam, MODEL,
                         float(PHOTON_EV_NM / l)).gamma_omega for l in lam]
    peak = lam[int(np.argmax(vals))]
    print(f"  sigma_E = {sigma_e:5.3f} eV: peak at {peak:.1f} nm "
          f"({peak - LAM_CUT:+.1f} nm from the monoenergetic cutoff)")

print("\n== continuity of the averaged total rate ==")
beam = GaussianBeam(E0, 0.5, math.radians(0.1), QuadratureSpec(8, 48, 4.0))
left = average_rate("total", beam, MODEL, CUT * (1 - 1e-6)).gamma_omega
right = average_rate("total", beam, MODEL, CUT * (1 + 1e-6)).gamma_omega
print(f"  just below / just above the nominal cutoff: {left:.4e} / {right:.4e}")
print("  (the monoenergetic rate would jump to exactly zero here)\n")

print("== full averaged scans (solid vs dashed curves) ==")
table = averaged_spectrum_scan(beam, MODEL, (200.0, 400.0), 300,
                               channels=("flip_azimuthal", "total"),
                               reference_theta_i=math.radians(0.1))
p = outdir / "averaged_constant.csv"
write_spectrum_csv(table, p)
write_spectrum_svg(table, p.with_suffix(".svg"))
print(f"wrote {p} and {p.with_suffix('.svg')}")

silica_beam = GaussianBeam(E0, 0.5, math.radians(10.3),
                           QuadratureSpec(16, 32, 4.0))
table2 = averaged_spectrum_scan(silica_beam, fused_silica(), (450.0, 650.0),
                                200, channels=("flip_azimuthal",),
                                reference_theta_i=math.radians(10.3))
p2 = outdir / "averaged_silica.csv"
write_spectrum_csv(table2, p2)
write_spectrum_svg(table2, p2.with_suffix(".svg"))
print(f"wrote {p2} and {p2.with_suffix('.svg')}")
print("\nin the silica table the averaged and unaveraged flip columns")
print("coincide through the ~551 nm cutoff: that discontinuity is set by")
print("the index crossing and survives the energy spread")
