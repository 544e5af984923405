"""Emission spectra: conventional vs recoil-corrected rates and their
cutoff discontinuities.

Two settings for the same beta = 0.685 beam:
  * constant n = 1.45986: the recoil cutoff truncates the spectrum at
    ~244 nm, with a jump in the spin-flip channel and a (much smaller)
    step in the total rate;
  * dispersive silica: the index crossing n = 1/beta silences everything
    past ~551 nm, again discontinuously.

Run:  python demos/03_emission_spectra.py [outdir]
"""

import math
import sys
from pathlib import Path

from qcherenkov import (ConstantIndex, cutoff_energy, discontinuity_at_cutoff,
                        energy_from_beta, frank_tamm, fused_silica,
                        quantum_cutoff_wavelength, spectrum_scan)
from qcherenkov.constants import PHOTON_EV_NM
from qcherenkov.io import write_spectrum_csv, write_spectrum_svg

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
outdir.mkdir(parents=True, exist_ok=True)

BETA = 0.685
E0 = energy_from_beta(BETA)

print("== constant-index medium: the recoil cutoff ==")
model = ConstantIndex(1.45986)
table = spectrum_scan(E0, math.radians(0.1), model, (200.0, 400.0), 400)
lam_cut = PHOTON_EV_NM / cutoff_energy(BETA, 1.45986)
flip = table.rates["flip_azimuthal"]
alive = table.lambda_nm > lam_cut
print(f"cutoff at {lam_cut:.2f} nm; flip rate just above it: "
       f"{flip[alive][0]:.3e}, below it: {flip[~alive][-1]:.3e}")
print(f"analytic jump (flip):  "
      f"{discontinuity_at_cutoff(E0, math.radians(0.1), 1.45986, 'flip_azimuthal'):.3e}")
print(f"analytic jump (total): "
      f"{discontinuity_at_cutoff(E0, 0.0, 1.45986, 'total'):.3e}")
ft = frank_tamm(BETA, 1.45986).gamma_omega
print(f"for scale, the conventional rate is {ft:.3e}: the flip channel is "
      f"suppressed by the squared recoil ratio (hw/E)^2")
p1 = outdir / "spectrum_constant.csv"
write_spectrum_csv(table, p1)
write_spectrum_svg(table, p1.with_suffix(".svg"))
print(f"wrote {p1} and {p1.with_suffix('.svg')}\n")

print("== dispersive silica: the index-crossing cutoff ==")
silica = fused_silica()
table2 = spectrum_scan(E0, math.radians(10.3), silica, (400.0, 700.0), 400)
lam_q = quantum_cutoff_wavelength(silica, BETA, (400.0, 700.0))
flip2 = table2.rates["flip_azimuthal"]
below = table2.lambda_nm < lam_q
print(f"emission lives below {lam_q:.2f} nm and is silent above;")
print(f"left limit at the cutoff: {flip2[below][-1]:.3e}, "
      f"first silent row: {flip2[~below][0]:.3e}")
p2 = outdir / "spectrum_silica.csv"
write_spectrum_csv(table2, p2)
write_spectrum_svg(table2, p2.with_suffix(".svg"))
print(f"wrote {p2} and {p2.with_suffix('.svg')}")
