"""CSV / JSON / SVG emission and CSV read-back.

Every output file embeds the effective physics config, its hash and the
constants block in a '#' preamble (CSV) or a metadata object (JSON/SVG),
and contains nothing run-dependent, so re-running the same config
reproduces the file byte for byte. Floats are written with repr, which
round-trips exactly at 17 significant digits.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .amplitude import (AmplitudeMap, ZONE_BOUNDARY, ZONE_EXTERIOR,
                        ZONE_INTERIOR)
from .rates import SpectrumTable

_ZONE_LABEL = {ZONE_EXTERIOR: "exterior", ZONE_INTERIOR: "interior",
               ZONE_BOUNDARY: "boundary"}


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    v = float(x)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def _meta_lines(kind: str, metadata: dict) -> list[str]:
    payload = json.dumps(metadata, sort_keys=True, separators=(",", ":"),
                         allow_nan=True)
    return [f"# qcherenkov {kind} v1", f"# metadata: {payload}"]


def _clean_meta(metadata: dict) -> dict:
    """Keep only json-stable reproducible entries."""
    return json.loads(json.dumps(metadata, sort_keys=True, default=str))


def write_spectrum_csv(table: SpectrumTable, path) -> None:
    cols = table.columns()
    names = list(cols)
    lines = _meta_lines("spectrum", _clean_meta(table.metadata))
    lines.append(",".join(names))
    arrays = [np.asarray(cols[name]) for name in names]
    for i in range(arrays[0].size):
        lines.append(",".join(_fmt(a[i]) for a in arrays))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_spectrum_json(table: SpectrumTable, path) -> None:
    payload = {
        "format": "qcherenkov-spectrum-v1",
        "metadata": _clean_meta(table.metadata),
        "columns": {name: [None if (isinstance(v, float) and math.isnan(v)) else v
                           for v in np.asarray(col).tolist()]
                    for name, col in table.columns().items()},
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")


def write_ampmap_csv(amap: AmplitudeMap, path) -> None:
    meta = dict(amap.metadata)
    meta["cutoff_lambda_nm"] = amap.cutoff_lambda_nm
    lines = _meta_lines("ampmap", _clean_meta(meta))
    lines.append("lambda_nm,theta_ph_rad,zone,amplitude,s_delta")
    for j, lam in enumerate(amap.lambda_nm):
        for k, th in enumerate(amap.theta_ph_rad):
            lines.append(",".join((
                _fmt(lam), _fmt(th),
                _ZONE_LABEL[int(amap.zone[j, k])],
                _fmt(amap.amplitude[j, k]),
                _fmt(amap.s_delta[j, k]),
            )))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_ampmap_json(amap: AmplitudeMap, path) -> None:
    def listed(a):
        return [None if (isinstance(v, float) and not math.isfinite(v)) else v
                for v in np.asarray(a).ravel().tolist()]

    meta = dict(amap.metadata)
    meta["cutoff_lambda_nm"] = amap.cutoff_lambda_nm
    payload = {
        "format": "qcherenkov-ampmap-v1",
        "metadata": _clean_meta(meta),
        "lambda_nm": listed(amap.lambda_nm),
        "theta_ph_rad": listed(amap.theta_ph_rad),
        "shape": list(amap.amplitude.shape),
        "amplitude": listed(amap.amplitude),
        "s_delta": listed(amap.s_delta),
        "zone": [int(z) for z in amap.zone.ravel()],
        "boundary_curves": {
            "theta_outer": listed(amap.theta_outer),
            "theta_inner": listed(amap.theta_inner),
            "theta_mirror": listed(amap.theta_mirror),
            "theta_conventional": listed(amap.theta_conventional),
        },
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_table_csv(path):
    """Read back a CSV written by this module.

    Returns (metadata, columns) where columns maps names to float arrays;
    the zone column of amplitude maps comes back as integer codes.
    """
    metadata: dict = {}
    names: list[str] | None = None
    rows: list[list[str]] = []
    with open(path, newline="") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith("# metadata: "):
                    metadata = json.loads(line[len("# metadata: "):])
                continue
            if names is None:
                names = line.split(",")
            else:
                rows.append(line.split(","))
    if names is None:
        raise ValueError(f"{path}: no header row found")
    label_to_code = {v: k for k, v in _ZONE_LABEL.items()}
    columns: dict[str, np.ndarray] = {}
    for idx, name in enumerate(names):
        raw = [r[idx] for r in rows]
        if name == "zone":
            columns[name] = np.array([label_to_code[v] for v in raw], dtype=np.uint8)
        else:
            columns[name] = np.array([float(v) for v in raw], dtype=float)
    return metadata, columns


# ---------------------------------------------------------------------------
# minimal SVG rendering (verification aid, not publication graphics)
# ---------------------------------------------------------------------------

_SVG_W, _SVG_H = 860.0, 520.0
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70.0, 20.0, 30.0, 50.0
_SERIES_COLORS = ("#1f6fb2", "#d1495b", "#3a7d44", "#e08a1e", "#7b5ea7",
                  "#4c4c4c")


def _desc(metadata: dict) -> list[str]:
    payload = json.dumps(metadata, sort_keys=True, separators=(",", ":"))
    payload = payload.replace("&", "&amp;").replace("<", "&lt;")
    return [f"<desc>{payload}</desc>"]


def _axes(x_label: str, y_label: str, title: str) -> list[str]:
    x0, y0 = _MARGIN_L, _SVG_H - _MARGIN_B
    x1, y1 = _SVG_W - _MARGIN_R, _MARGIN_T
    return [
        f'<rect x="0" y="0" width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{0.5 * (x0 + x1)}" y="{_SVG_H - 12}" text-anchor="middle" '
        f'font-size="14">{x_label}</text>',
        f'<text x="16" y="{0.5 * (y0 + y1)}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {0.5 * (y0 + y1)})">{y_label}</text>',
        f'<text x="{0.5 * (x0 + x1)}" y="20" text-anchor="middle" '
        f'font-size="15">{title}</text>',
    ]


def _x_map(values: np.ndarray):
    lo, hi = float(np.nanmin(values)), float(np.nanmax(values))
    span = hi - lo if hi > lo else 1.0

    def to_px(v):
        return _MARGIN_L + (v - lo) / span * (_SVG_W - _MARGIN_L - _MARGIN_R)

    return to_px, lo, hi


def write_spectrum_svg(table: SpectrumTable, path, log_y: bool = True) -> None:
    """Line chart of the rate columns against wavelength, with cutoff markers
    where the beyond-cutoff flag switches."""
    lam = table.lambda_nm
    to_x, lam_lo, lam_hi = _x_map(lam)
    series = {name: np.asarray(col, dtype=float)
              for name, col in sorted(table.rates.items())}
    finite = np.concatenate([c[np.isfinite(c) & (c > 0)] for c in series.values()]) \
        if series else np.array([1.0])
    if finite.size == 0:
        finite = np.array([1.0])
    if log_y:
        y_hi = math.log10(float(finite.max()))
        y_lo = math.log10(float(finite.min()))
        if y_hi - y_lo < 1e-9:
            y_lo = y_hi - 1.0
        y_lo = max(y_lo, y_hi - 20.0)
    else:
        y_hi, y_lo = float(finite.max()), 0.0

    def to_y(v):
        if log_y:
            v = math.log10(v) if v > 0 else y_lo
        v = min(max(v, y_lo), y_hi)
        return (_SVG_H - _MARGIN_B) - (v - y_lo) / (y_hi - y_lo) * \
            (_SVG_H - _MARGIN_T - _MARGIN_B)

    parts = _desc(_clean_meta(table.metadata))
    parts += _axes("wavelength (nm)",
                   "rate per unit frequency" + (" (log10)" if log_y else ""),
                   "emission spectrum")
    parts.append(f'<text x="{_MARGIN_L}" y="{_SVG_H - 28}" font-size="11">'
                 f'{lam_lo:.6g} nm</text>')
    parts.append(f'<text x="{_SVG_W - _MARGIN_R}" y="{_SVG_H - 28}" '
                 f'text-anchor="end" font-size="11">{lam_hi:.6g} nm</text>')

    beyond = table.flags["beyond_cutoff"].astype(bool)
    edges = np.nonzero(np.diff(beyond.astype(int)) != 0)[0]
    for e in edges:
        x = to_x(0.5 * (lam[e] + lam[e + 1]))
        parts.append(f'<line x1="{x:.2f}" y1="{_MARGIN_T}" x2="{x:.2f}" '
                     f'y2="{_SVG_H - _MARGIN_B}" stroke="#888" '
                     'stroke-dasharray="6 4"/>')

    for i, (name, col) in enumerate(series.items()):
        color = _SERIES_COLORS[i % len(_SERIES_COLORS)]
        pts = []
        for x_val, y_val in zip(lam, col):
            if not math.isfinite(y_val) or (log_y and y_val <= 0):
                if len(pts) > 1:
                    parts.append(_polyline(pts, color))
                pts = []
                continue
            pts.append((to_x(x_val), to_y(y_val)))
        if len(pts) > 1:
            parts.append(_polyline(pts, color))
        parts.append(f'<text x="{_SVG_W - _MARGIN_R - 6}" '
                     f'y="{_MARGIN_T + 16 + 16 * i}" text-anchor="end" '
                     f'font-size="12" fill="{color}">{name}</text>')

    _write_svg(path, parts)


def _polyline(pts, color, dashed=False, width=1.5) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
    dash = ' stroke-dasharray="7 5"' if dashed else ""
    return (f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"{dash}/>')


def _heat_color(t: float) -> str:
    """0 -> near white, 1 -> dark blue; simple two-stop ramp."""
    t = min(max(t, 0.0), 1.0)
    r = int(round(247 - 215 * t))
    g = int(round(251 - 187 * t))
    b = int(round(255 - 121 * t))
    return f"rgb({r},{g},{b})"


def write_ampmap_svg(amap: AmplitudeMap, path) -> None:
    """Heatmap of |amplitude| with a saturated scale plus the degenerate
    boundary curves, the conventional-angle reference and the cutoff line."""
    lam = amap.lambda_nm
    th_deg = np.degrees(amap.theta_ph_rad)
    to_x, _, _ = _x_map(lam)
    t_lo, t_hi = float(th_deg.min()), float(th_deg.max())
    t_span = t_hi - t_lo if t_hi > t_lo else 1.0

    def to_y(v):
        return (_SVG_H - _MARGIN_B) - (v - t_lo) / t_span * \
            (_SVG_H - _MARGIN_T - _MARGIN_B)

    absval = np.abs(amap.amplitude)
    finite = absval[np.isfinite(absval) & (absval > 0)]
    vmax = float(np.percentile(finite, 95)) if finite.size else 1.0
    meta = dict(amap.metadata)
    meta["cutoff_lambda_nm"] = amap.cutoff_lambda_nm
    parts = _desc(_clean_meta(meta))
    parts += _axes("wavelength (nm)", "emission angle (deg)",
                   "transition amplitude map")

    cell_w = (to_x(lam[-1]) - to_x(lam[0])) / max(len(lam) - 1, 1)
    cell_h = (to_y(t_lo) - to_y(t_hi)) / max(len(th_deg) - 1, 1)
    for j in range(len(lam)):
        x = to_x(lam[j]) - 0.5 * cell_w
        for k in range(len(th_deg)):
            zone = int(amap.zone[j, k])
            if zone == ZONE_EXTERIOR:
                continue
            if zone == ZONE_BOUNDARY:
                color = "#08172b"
            else:
                color = _heat_color(min(absval[j, k] / vmax, 1.0))
            y = to_y(th_deg[k]) - 0.5 * cell_h
            parts.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cell_w + 0.25:.2f}" '
                         f'height="{cell_h + 0.25:.2f}" fill="{color}"/>')

    for curve, color in ((amap.theta_outer, "#d1495b"),
                         (amap.theta_inner, "#1f6fb2"),
                         (amap.theta_mirror, "#3a7d44"),
                         (amap.theta_conventional, "#222222")):
        pts = []
        for x_val, y_val in zip(lam, np.degrees(curve)):
            if not math.isfinite(y_val) or not t_lo <= y_val <= t_hi:
                if len(pts) > 1:
                    parts.append(_polyline(pts, color, dashed=True, width=1.2))
                pts = []
                continue
            pts.append((to_x(x_val), to_y(y_val)))
        if len(pts) > 1:
            parts.append(_polyline(pts, color, dashed=True, width=1.2))

    if amap.cutoff_lambda_nm is not None and \
            lam[0] <= amap.cutoff_lambda_nm <= lam[-1]:
        x = to_x(amap.cutoff_lambda_nm)
        parts.append(f'<line x1="{x:.2f}" y1="{_MARGIN_T}" x2="{x:.2f}" '
                     f'y2="{_SVG_H - _MARGIN_B}" stroke="#7b2d8b" '
                     'stroke-width="2"/>')

    _write_svg(path, parts)


def _write_svg(path, parts: list[str]) -> None:
    body = "\n".join(parts)
    doc = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W:.0f}" '
           f'height="{_SVG_H:.0f}" viewBox="0 0 {_SVG_W:.0f} {_SVG_H:.0f}">\n'
           f"{body}\n</svg>\n")
    with open(path, "w", newline="\n") as fh:
        fh.write(doc)
