"""Emission angles, the double cone, and both kinds of spectral cutoff.

Walks the near-threshold electron beam (beta = 0.685) through the angle
observables: the conventional cone, the recoil-corrected cone that shrinks
with photon energy, the inner/outer cone pair of a tilted beam, the backward
cone of a fast tilted beam, and the two spectral cutoffs (recoil cutoff in a
constant-index medium, index crossing in dispersive silica).

Run:  python demos/01_cones_and_cutoffs.py
"""

import math

from qcherenkov import (conventional_angle, cutoff_energy,
                        dispersion_cutoff_wavelength, double_cone,
                        fused_silica, photon_wavelength_nm, quantum_angle,
                        quantum_cutoff_wavelength, threshold_beta)

BETA = 0.685
N = 1.45986

deg = math.degrees

print("== threshold ==")
print(f"medium n = {N}: emission needs beta > {threshold_beta(N):.6f}")
print(f"chosen beta = {BETA} sits {BETA - threshold_beta(N):.2e} above it\n")

print("== cone angles ==")
conv = conventional_angle(BETA, N)
print(f"conventional cone: {deg(conv):.4f} deg (independent of photon energy)")
for hw in (0.5, 2.0, 4.0, 5.0):
    q = quantum_angle(BETA, N, hw)
    print(f"  recoil-corrected cone at {hw:4.1f} eV "
          f"({photon_wavelength_nm(hw):6.1f} nm): {deg(q):.4f} deg")

cut = cutoff_energy(BETA, N)
print(f"\nthe cone closes at the recoil cutoff: {cut:.4f} eV "
      f"= {photon_wavelength_nm(cut):.2f} nm")
print(f"  quantum_angle exactly at the cutoff: "
      f"{quantum_angle(BETA, N, cut)} rad\n")

print("== double cone of a tilted beam (theta_i = 10.3 deg) ==")
theta_i = math.radians(10.3)
for hw in (2.0, 4.0, cut):
    cone = double_cone(theta_i, quantum_angle(BETA, N, hw))
    print(f"  hw = {hw:6.4f} eV: inner {deg(cone.inner):7.3f} deg, "
          f"outer {deg(cone.outer):7.3f} deg")
print("  at the cutoff both cones collapse onto theta_i itself\n")

print("== backward cone ==")
fast = conventional_angle(0.99, 1.5)
cone = double_cone(math.radians(50.0), fast)
print(f"beta = 0.99, n = 1.5, theta_i = 50 deg: outer cone "
      f"{deg(cone.outer):.2f} deg -> backward = {cone.backward}\n")

print("== cutoffs in dispersive silica ==")
silica = fused_silica()
disp = dispersion_cutoff_wavelength(silica, BETA, (300.0, 800.0))
quant = quantum_cutoff_wavelength(silica, BETA, (300.0, 800.0))
print(f"index crossing n(lambda) = 1/beta at {disp:.2f} nm")
print(f"self-consistent recoil cutoff at   {quant:.2f} nm")
print("the recoil cutoff sits a fraction of a nm below the crossing; in the")
print("constant-index medium above it instead sits at "
      f"{photon_wavelength_nm(cut):.1f} nm, deep in the UV")
