"""Grid orchestration: validated scan configurations, optional process
parallelism over wavelength rows, and deterministic result assembly.

Every row is a pure function of its wavelength, and chunks receive exact
slices of the one full wavelength grid, so partitioning across workers
cannot change any value; assembly is row-major and results are
byte-identical for any worker count. Execution parameters (worker count,
output destinations) are excluded from the config hash and from embedded
metadata for the same reason.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .amplitude import AmplitudeMap, _map_rows
from .angles import quantum_cutoff_wavelength
from .beams import GaussianBeam, QuadratureSpec, _averaged_rows
from .constants import ELECTRON_MC2_EV, constants_block
from .dispersion import (ConstantIndex, DispersionModel, SellmeierModel,
                         TabulatedIndex, fused_silica)
from .kinematics import (CylindricalElectronState, Spin, beta_from_energy,
                         energy_from_beta)
from .rates import SpectrumTable, _scan_rows

SCAN_KINDS = ("spectrum", "averaged-spectrum", "ampmap")


class ConfigError(ValueError):
    """Malformed scan configuration; the message names the offending block."""


@dataclass(frozen=True)
class ScanConfig:
    kind: str
    energy_ev: float
    theta_i_rad: float
    oam_l: int
    model: DispersionModel
    channels: tuple[str, ...]
    lambda_range: tuple[float, float]
    n_points: int = 0
    theta_range: tuple[float, float] | None = None
    grid: tuple[int, int] | None = None
    photon_oam: int = 0
    spin_flip: bool = True
    flip_sign: int = +1
    beam_gaussian: GaussianBeam | None = None
    mc2_ev: float = ELECTRON_MC2_EV
    workers: int = 1
    basename: str = "scan"
    physics_config: dict = field(default_factory=dict)

    def config_hash(self) -> str:
        payload = json.dumps(self.physics_config, sort_keys=True,
                             separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class ScanResult:
    data: SpectrumTable | AmplitudeMap
    metadata: dict


def _resolve_workers(workers) -> int:
    if workers in (None, "auto"):
        return max(1, min(8, os.cpu_count() or 1))
    w = int(workers)
    if w < 1:
        raise ConfigError("workers must be at least 1")
    return w


def _chunk_bounds(n: int, workers: int) -> list[tuple[int, int]]:
    n_chunks = min(n, max(1, 4 * workers)) if workers > 1 else 1
    bounds = np.linspace(0, n, n_chunks + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _full_lambda_grid(cfg: ScanConfig) -> np.ndarray:
    n_rows = cfg.grid[0] if cfg.kind == "ampmap" else cfg.n_points
    return np.linspace(cfg.lambda_range[0], cfg.lambda_range[1], n_rows)


def _run_slice(cfg: ScanConfig, lo_idx: int, hi_idx: int):
    lam = _full_lambda_grid(cfg)[lo_idx:hi_idx]
    if cfg.kind == "ampmap":
        beam = CylindricalElectronState(cfg.energy_ev, Spin.UP, cfg.theta_i_rad,
                                        cfg.oam_l, cfg.mc2_ev)
        thetas = np.linspace(cfg.theta_range[0], cfg.theta_range[1], cfg.grid[1])
        return _map_rows(beam, cfg.model, cfg.photon_oam, cfg.spin_flip,
                         lam, thetas, cfg.flip_sign)
    if cfg.kind == "spectrum":
        return _scan_rows(cfg.energy_ev, cfg.theta_i_rad, cfg.model, lam,
                          cfg.channels, cfg.mc2_ev)
    return _averaged_rows(cfg.beam_gaussian, cfg.model, lam, cfg.channels,
                          reference_theta_i=cfg.theta_i_rad)


def _worker(args):
    cfg, lo, hi = args
    return _run_slice(cfg, lo, hi)


def run_scan(config: ScanConfig) -> ScanResult:
    """Execute a scan; the result is independent of the worker count, and
    per-row physics gaps become flags rather than failures."""
    if config.kind not in SCAN_KINDS:
        raise ConfigError(f"unknown scan kind {config.kind!r}")
    t0 = time.perf_counter()
    n_rows = config.grid[0] if config.kind == "ampmap" else config.n_points
    workers = _resolve_workers(config.workers)
    chunks = _chunk_bounds(n_rows, workers)

    if workers == 1 or len(chunks) == 1:
        parts = [_run_slice(config, lo, hi) for lo, hi in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, [(config, lo, hi) for lo, hi in chunks]))

    data = _assemble(config, parts)
    data.metadata.update({
        "config": config.physics_config,
        "config_hash": config.config_hash(),
    })
    meta = {
        "config": config.physics_config,
        "config_hash": config.config_hash(),
        "constants": constants_block(),
        "wall_time_s": time.perf_counter() - t0,
        "workers": workers,
    }
    return ScanResult(data=data, metadata=meta)


def _assemble(config: ScanConfig, parts):
    if config.kind == "ampmap":
        first = parts[0]
        joined = first if len(parts) == 1 else AmplitudeMap(
            lambda_nm=np.concatenate([p.lambda_nm for p in parts]),
            theta_ph_rad=first.theta_ph_rad,
            amplitude=np.concatenate([p.amplitude for p in parts], axis=0),
            s_delta=np.concatenate([p.s_delta for p in parts], axis=0),
            zone=np.concatenate([p.zone for p in parts], axis=0),
            spinor=np.concatenate([p.spinor for p in parts], axis=0),
            theta_outer=np.concatenate([p.theta_outer for p in parts]),
            theta_inner=np.concatenate([p.theta_inner for p in parts]),
            theta_mirror=np.concatenate([p.theta_mirror for p in parts]),
            theta_conventional=np.concatenate([p.theta_conventional for p in parts]),
            cutoff_lambda_nm=None,
            metadata=dict(first.metadata),
        )
        try:
            joined.cutoff_lambda_nm = quantum_cutoff_wavelength(
                config.model, beta_from_energy(config.energy_ev, config.mc2_ev),
                config.lambda_range, config.mc2_ev)
        except ValueError:
            joined.cutoff_lambda_nm = None
        return joined
    if len(parts) == 1:
        return parts[0]
    first = parts[0]
    return SpectrumTable(
        lambda_nm=np.concatenate([p.lambda_nm for p in parts]),
        hbar_omega_ev=np.concatenate([p.hbar_omega_ev for p in parts]),
        n=np.concatenate([p.n for p in parts]),
        theta_cr_rad=np.concatenate([p.theta_cr_rad for p in parts]),
        rates={name: np.concatenate([p.rates[name] for p in parts])
               for name in first.rates},
        flags={name: np.concatenate([p.flags[name] for p in parts])
               for name in first.flags},
        metadata=dict(first.metadata),
    )


# ---------------------------------------------------------------------------
# JSON config parsing
# ---------------------------------------------------------------------------

def model_from_config(block: dict) -> DispersionModel:
    if not isinstance(block, dict):
        raise ConfigError("medium: expected an object")
    if "constant_n" in block:
        return ConstantIndex(float(block["constant_n"]))
    if "material" in block:
        name = block["material"]
        if name != "silica":
            raise ConfigError(f"medium.material: unknown material {name!r}")
        return fused_silica()
    if "sellmeier" in block:
        s = block["sellmeier"]
        try:
            return SellmeierModel(tuple(float(x) for x in s["b"]),
                                  tuple(float(x) for x in s["c_um2"]),
                                  tuple(float(x) for x in s.get("window_nm",
                                                                (210.0, 3710.0))))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"medium.sellmeier: {exc}") from exc
    if "csv" in block:
        return TabulatedIndex.from_csv(block["csv"])
    raise ConfigError("medium: need one of constant_n, material, sellmeier, csv")


def config_from_dict(raw: dict, workers=1) -> ScanConfig:
    """Validate a JSON-style config dict (beam / medium / scan / channels /
    output blocks) into a ScanConfig."""
    if not isinstance(raw, dict):
        raise ConfigError("top level: expected an object")
    for block in ("beam", "medium", "scan"):
        if block not in raw:
            raise ConfigError(f"{block}: missing block")
    beam = raw["beam"]
    scan = raw["scan"]
    mc2 = float(beam.get("mc2_ev", ELECTRON_MC2_EV))
    if "beta" in beam:
        energy = float(energy_from_beta(float(beam["beta"]), mc2))
    elif "energy_ev" in beam:
        energy = float(beam["energy_ev"])
    else:
        raise ConfigError("beam: need beta or energy_ev")
    theta_i = float(np.radians(float(beam.get("theta_i_deg", 0.0))))
    oam_l = int(beam.get("oam_l", 0))

    kind = scan.get("kind")
    if kind not in SCAN_KINDS:
        raise ConfigError(f"scan.kind: expected one of {SCAN_KINDS}, got {kind!r}")
    try:
        lam_lo, lam_hi = (float(x) for x in scan["lambda_nm"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"scan.lambda_nm: {exc}") from exc
    if not lam_lo < lam_hi:
        raise ConfigError("scan.lambda_nm: must be ordered (low, high)")

    channels = tuple(raw.get("channels", ["flip_azimuthal", "total"]))
    model = model_from_config(raw["medium"])

    n_points = 0
    theta_range = None
    grid = None
    gaussian = None
    if kind == "ampmap":
        try:
            th_lo, th_hi = (float(np.radians(float(x)))
                            for x in scan["theta_ph_deg"])
            grid = tuple(int(x) for x in scan["grid"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"scan: ampmap needs theta_ph_deg and grid ({exc})") from exc
        if len(grid) != 2 or grid[0] < 2 or grid[1] < 2:
            raise ConfigError("scan.grid: need two sizes, each at least 2")
        if not th_lo < th_hi:
            raise ConfigError("scan.theta_ph_deg: must be ordered (low, high)")
        theta_range = (th_lo, th_hi)
    else:
        n_points = int(scan.get("points", 0))
        if n_points < 2:
            raise ConfigError("scan.points: need at least 2")
    if kind == "averaged-spectrum":
        g = beam.get("gaussian")
        if not isinstance(g, dict):
            raise ConfigError("beam.gaussian: required for averaged-spectrum")
        try:
            quad = QuadratureSpec(
                n_theta=int(g.get("n_theta", 32)),
                n_energy=int(g.get("n_energy", 32)),
                span_sigmas=float(g.get("span_sigmas", 4.0)),
            )
            gaussian = GaussianBeam(
                mean_energy_ev=energy,
                energy_sigma_ev=float(g.get("energy_sigma_ev", 0.0)),
                theta_fwhm_rad=float(np.radians(float(g.get("theta_fwhm_deg", 0.0)))),
                quadrature=quad,
                mc2_ev=mc2,
            )
        except ValueError as exc:
            raise ConfigError(f"beam.gaussian: {exc}") from exc

    output = raw.get("output", {})
    basename = str(output.get("basename", "scan"))

    return ScanConfig(
        kind=kind,
        energy_ev=energy,
        theta_i_rad=theta_i,
        oam_l=oam_l,
        model=model,
        channels=channels,
        lambda_range=(lam_lo, lam_hi),
        n_points=n_points,
        theta_range=theta_range,
        grid=grid,
        photon_oam=int(scan.get("photon_oam", 0)),
        spin_flip=bool(scan.get("spin_flip", True)),
        flip_sign=int(scan.get("flip_sign", 1)),
        beam_gaussian=gaussian,
        mc2_ev=mc2,
        workers=_resolve_workers(workers),
        basename=basename,
        physics_config=_canonical_physics(raw),
    )


def _canonical_physics(raw: dict) -> dict:
    """The physics blocks of a raw config, with execution details stripped."""
    keep = {block: raw[block] for block in ("beam", "medium", "scan", "channels")
            if block in raw}
    return json.loads(json.dumps(keep, sort_keys=True))
