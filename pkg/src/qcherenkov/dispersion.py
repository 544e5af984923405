"""Refractive-index models n(lambda) and threshold / cutoff solvers.

Three model flavours: a constant index, a three-term Sellmeier form
n^2 = 1 + sum B_k lam^2 / (lam^2 - C_k) with lam in micrometres, and a
tabulated set of (lambda, n) points with linear interpolation.
"""

from __future__ import annotations

import csv
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from ._util import bisect_root

# Malitson 1965 fused-silica coefficients, C in um^2; valid 210 nm - 3710 nm.
MALITSON_B = (0.6961663, 0.4079426, 0.8974794)
MALITSON_C_UM2 = (0.0684043**2, 0.1162414**2, 9.896161**2)
SILICA_WINDOW_NM = (210.0, 3710.0)

_WAVELENGTH_TOL_NM = 1e-9  # bisection bracket width at convergence


class DispersionModel(ABC):
    """Refractive index as a function of vacuum wavelength in nm."""

    window_nm: tuple[float, float]

    @abstractmethod
    def n_at(self, wavelength_nm):
        """Refractive index at the given wavelength(s); raises outside window."""

    def covers(self, wavelength_nm) -> bool:
        lam = np.asarray(wavelength_nm, dtype=float)
        lo, hi = self.window_nm
        return bool(np.all((lam >= lo) & (lam <= hi)))

    def describe(self) -> dict:
        """JSON-serialisable description for output metadata."""
        raise NotImplementedError

    def _check_window(self, lam):
        lo, hi = self.window_nm
        if np.any(lam < lo) or np.any(lam > hi):
            raise ValueError(
                f"wavelength outside model validity window [{lo}, {hi}] nm"
            )


@dataclass(frozen=True)
class ConstantIndex(DispersionModel):
    n: float
    window_nm: tuple[float, float] = (1e-6, math.inf)

    def __post_init__(self):
        if not (self.n > 0.0 and math.isfinite(self.n)):
            raise ValueError("constant index must be positive and finite")

    def n_at(self, wavelength_nm):
        lam = np.asarray(wavelength_nm, dtype=float)
        self._check_window(lam)
        out = np.full_like(lam, self.n, dtype=float)
        return out.item() if out.ndim == 0 else out

    def describe(self) -> dict:
        return {"kind": "constant", "n": self.n}


@dataclass(frozen=True)
class SellmeierModel(DispersionModel):
    b: tuple[float, float, float]
    c_um2: tuple[float, float, float]
    window_nm: tuple[float, float] = SILICA_WINDOW_NM

    def n_at(self, wavelength_nm):
        lam = np.asarray(wavelength_nm, dtype=float)
        self._check_window(lam)
        l2 = (lam / 1000.0) ** 2
        n2 = 1.0 + sum(bk * l2 / (l2 - ck) for bk, ck in zip(self.b, self.c_um2))
        if np.any(n2 <= 0.0):
            raise ValueError("Sellmeier form yields n^2 <= 0 inside the window")
        out = np.sqrt(n2)
        return out.item() if out.ndim == 0 else out

    def describe(self) -> dict:
        return {"kind": "sellmeier", "b": list(self.b), "c_um2": list(self.c_um2),
                "window_nm": list(self.window_nm)}


def fused_silica() -> SellmeierModel:
    """Default silica model (Malitson 1965 three-term Sellmeier fit)."""
    return SellmeierModel(MALITSON_B, MALITSON_C_UM2, SILICA_WINDOW_NM)


@dataclass(frozen=True)
class TabulatedIndex(DispersionModel):
    wavelengths_nm: tuple[float, ...]
    indices: tuple[float, ...]
    window_nm: tuple[float, float] = field(init=False)

    def __post_init__(self):
        lam = np.asarray(self.wavelengths_nm, dtype=float)
        ns = np.asarray(self.indices, dtype=float)
        if lam.size < 2 or lam.size != ns.size:
            raise ValueError("need at least two (wavelength, n) points")
        if np.any(np.diff(lam) <= 0.0):
            raise ValueError("wavelength grid must be strictly increasing")
        if np.any(ns <= 0.0):
            raise ValueError("tabulated n must be positive")
        object.__setattr__(self, "window_nm", (float(lam[0]), float(lam[-1])))

    def n_at(self, wavelength_nm):
        lam = np.asarray(wavelength_nm, dtype=float)
        self._check_window(lam)
        out = np.interp(lam, self.wavelengths_nm, self.indices)
        return out.item() if out.ndim == 0 else out

    def describe(self) -> dict:
        return {"kind": "tabulated",
                "wavelengths_nm": list(self.wavelengths_nm),
                "indices": list(self.indices)}

    @classmethod
    def from_csv(cls, path) -> "TabulatedIndex":
        """Load a two-column CSV (lambda_nm, n); a header row is optional."""
        lams: list[float] = []
        ns: list[float] = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) < 2:
                    raise ValueError(f"expected two columns, got {row!r}")
                try:
                    lam, n = float(row[0]), float(row[1])
                except ValueError:
                    if not lams:  # tolerate a single header row
                        continue
                    raise ValueError(f"non-numeric row {row!r}")
                lams.append(lam)
                ns.append(n)
        return cls(tuple(lams), tuple(ns))


def threshold_beta(n: float):
    """Minimum speed 1/n for emission, or None when n <= 1 (no threshold)."""
    if n <= 1.0:
        return None
    return 1.0 / n


def dispersion_cutoff_wavelength(model: DispersionModel, beta: float,
                                 bracket: tuple[float, float]):
    """Wavelength where n(lambda) crosses 1/beta, or None without a crossing.

    Root of n(lambda) - 1/beta by bisection; the bracket must sit inside the
    model validity window. The bracket width at convergence is 1e-9 nm so the
    index residual is far below 1e-9.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    lo, hi = bracket
    if not (lo < hi):
        raise ValueError("bracket must be ordered (low, high)")
    if not model.covers(lo) or not model.covers(hi):
        raise ValueError("bracket outside model validity window")
    target = 1.0 / beta
    return bisect_root(lambda lam: model.n_at(lam) - target, lo, hi,
                       xtol=_WAVELENGTH_TOL_NM)
