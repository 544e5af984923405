"""Command-line surface: angle and cutoff reports, spectrum / amplitude-map
scans driven by JSON configs, and the closed-form-vs-quadrature check.

Angles are accepted in degrees and reported in both degrees and radians.
Exit codes: 0 success (a below-threshold result is a success), 1 usage or
config error, 2 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path

from . import angles as ang
from .amplitude import closed_form_amplitude, triangle_area
from .constants import ELECTRON_MC2_EV, PHOTON_EV_NM
from .dispersion import ConstantIndex, TabulatedIndex, fused_silica
from .io import (write_ampmap_csv, write_ampmap_json, write_ampmap_svg,
                 write_spectrum_csv, write_spectrum_json, write_spectrum_svg)
from .oracle import oracle_triple_bessel, random_interior_cases
from .rates import SpectrumTable
from .scan import ConfigError, config_from_dict, run_scan

USAGE_ERROR = 1
NUMERICAL_ERROR = 2

_BUNDLED = ("fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig3d")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _add_medium_args(p: _Parser):
    p.add_argument("--n", type=float, help="constant refractive index")
    p.add_argument("--material", choices=["silica"],
                   help="built-in dispersive material")
    p.add_argument("--index-csv", help="two-column CSV (lambda_nm, n)")


def _resolve_medium(args):
    given = [x for x in (args.n, args.material, args.index_csv) if x is not None]
    if len(given) != 1:
        raise ConfigError("give exactly one of --n, --material, --index-csv")
    if args.n is not None:
        return ConstantIndex(args.n)
    if args.material is not None:
        return fused_silica()
    return TabulatedIndex.from_csv(args.index_csv)


def _print_report(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=1))
        return
    for key, value in report.items():
        print(f"{key}: {value}")


def _angle_entry(theta_rad):
    if theta_rad is None:
        return None
    return {"deg": math.degrees(theta_rad), "rad": theta_rad}


def cmd_angle(args) -> int:
    model = _resolve_medium(args)
    if isinstance(model, ConstantIndex):
        n = model.n
    else:
        lam = args.lambda_nm
        if lam is None and args.photon_ev is not None:
            lam = PHOTON_EV_NM / args.photon_ev
        if lam is None:
            raise ConfigError("dispersive medium needs --lambda-nm or --photon-ev")
        n = float(model.n_at(lam))
    hw = args.photon_ev
    if hw is None and args.lambda_nm is not None:
        hw = PHOTON_EV_NM / args.lambda_nm
    theta_i = math.radians(args.theta_i_deg)

    report = {"beta": args.beta, "n": n, "theta_i_deg": args.theta_i_deg}
    conv = ang.conventional_angle(args.beta, n)
    report["conventional_angle"] = _angle_entry(conv)
    if conv is None:
        report["status"] = "below threshold (beta * n <= 1): no emission"
        _print_report(report, args.json)
        return 0
    theta = conv
    if hw is not None:
        report["photon_ev"] = hw
        q = ang.quantum_angle(args.beta, n, hw, args.mc2_ev)
        report["quantum_angle"] = _angle_entry(q)
        if q is None:
            report["status"] = "beyond cutoff: no emission at this photon energy"
            _print_report(report, args.json)
            return 0
        theta = q
    cone = ang.double_cone(theta_i, theta)
    report["inner_cone"] = _angle_entry(cone.inner)
    report["outer_cone"] = _angle_entry(cone.outer)
    report["backward"] = cone.backward
    report["status"] = "ok"
    _print_report(report, args.json)
    return 0


def cmd_cutoff(args) -> int:
    model = _resolve_medium(args)
    report = {"beta": args.beta}
    if isinstance(model, ConstantIndex):
        n = model.n
        report["n"] = n
        if n <= 1.0 or args.beta * n <= 1.0:
            report["status"] = "below threshold (beta * n <= 1): no cutoff"
            _print_report(report, args.json)
            return 0
        cut = ang.cutoff_energy(args.beta, n, args.mc2_ev)
        report["cutoff_ev"] = cut
        report["cutoff_lambda_nm"] = PHOTON_EV_NM / cut
        report["status"] = "ok"
        _print_report(report, args.json)
        return 0
    lo, hi = args.bracket
    lo = max(lo, model.window_nm[0])
    hi = min(hi, model.window_nm[1])
    disp = None
    try:
        from .dispersion import dispersion_cutoff_wavelength
        disp = dispersion_cutoff_wavelength(model, args.beta, (lo, hi))
    except ValueError as exc:
        raise ConfigError(str(exc))
    q = ang.quantum_cutoff_wavelength(model, args.beta, (lo, hi), args.mc2_ev)
    report["bracket_nm"] = [lo, hi]
    report["dispersion_cutoff_nm"] = disp
    report["quantum_cutoff_nm"] = q
    if disp is None and q is None:
        report["status"] = ("no cutoff crossing inside the bracket "
                            "(emission everywhere or nowhere)")
    else:
        report["status"] = "ok"
    _print_report(report, args.json)
    return 0


def _load_config(spec: str) -> dict:
    path = Path(spec)
    if path.is_file():
        text = path.read_text()
    else:
        stem = spec.removesuffix(".json")
        if stem not in _BUNDLED:
            raise ConfigError(
                f"config {spec!r} is neither a file nor one of {_BUNDLED}")
        text = resources.files("qcherenkov.configs").joinpath(f"{stem}.json") \
            .read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{spec}: line {exc.lineno}: {exc.msg}")


def _run_and_write(args, expected_kind: str) -> int:
    raw = _load_config(args.config)
    if args.points is not None:
        raw.setdefault("scan", {})["points"] = args.points
    cfg = config_from_dict(raw, workers=args.workers)
    if cfg.kind != expected_kind:
        raise ConfigError(
            f"scan.kind: expected {expected_kind!r}, got {cfg.kind!r}")
    result = run_scan(cfg)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    formats = [f.strip() for f in args.formats.split(",") if f.strip()]
    written = []
    base = outdir / cfg.basename
    data = result.data
    for fmt in formats:
        path = base.with_suffix("." + fmt)
        if isinstance(data, SpectrumTable):
            writer = {"csv": write_spectrum_csv, "json": write_spectrum_json,
                      "svg": write_spectrum_svg}.get(fmt)
        else:
            writer = {"csv": write_ampmap_csv, "json": write_ampmap_json,
                      "svg": write_ampmap_svg}.get(fmt)
        if writer is None:
            raise ConfigError(f"unknown output format {fmt!r}")
        writer(data, path)
        written.append(str(path))
    print(f"config_hash: {result.metadata['config_hash']}")
    print(f"workers: {result.metadata['workers']}  "
          f"wall_time_s: {result.metadata['wall_time_s']:.3f}")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_spectrum(args) -> int:
    return _run_and_write(args, "averaged-spectrum"
                          if _config_kind(args) == "averaged-spectrum"
                          else "spectrum")


def _config_kind(args) -> str:
    return _load_config(args.config).get("scan", {}).get("kind", "spectrum")


def cmd_ampmap(args) -> int:
    return _run_and_write(args, "ampmap")


def cmd_oracle(args) -> int:
    cases = random_interior_cases(args.cases, args.seed)
    rows = []
    worst = 0.0
    for idx, (l_i, l_f, sides) in enumerate(cases):
        cf = closed_form_amplitude(l_i, l_f, sides)
        res = oracle_triple_bessel(l_i, l_f, l_i - l_f, sides)
        rel = abs(res.value - cf) / abs(cf)
        worst = max(worst, rel)
        rows.append((idx, l_i, l_f, *sides.as_tuple(), cf, res.value, rel,
                     res.spread, int(res.reliable)))
        area = triangle_area(sides)
        print(f"case {idx:3d}  l_i={l_i:+d} l_f={l_f:+d} "
              f"S={area:.4f}  closed={cf:+.6e}  quad={res.value:+.6e}  "
              f"rel={rel:.2e}")
    if args.out is not None:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / "oracle_check.csv"
        header = ("case,l_i,l_f,s_i,s_f,s_ph,closed_form,quadrature,"
                  "rel_error,spread,reliable")
        lines = [header] + [",".join(repr(v) if isinstance(v, float) else str(v)
                                     for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n")
        print(f"wrote {path}")
    print(f"worst relative error over {len(cases)} cases: {worst:.3e}")
    if worst >= 0.01:
        print("FAIL: quadrature and closed form disagree beyond 1%",
              file=sys.stderr)
        return NUMERICAL_ERROR
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="qcherenkov",
                     description="Quantum Cherenkov radiation observables "
                                 "for shaped electron beams")
    sub = parser.add_subparsers(dest="command", required=True)

    p_angle = sub.add_parser("angle", help="emission angles and double cone")
    p_angle.add_argument("--beta", type=float, required=True)
    _add_medium_args(p_angle)
    p_angle.add_argument("--theta-i-deg", type=float, default=0.0)
    p_angle.add_argument("--photon-ev", type=float)
    p_angle.add_argument("--lambda-nm", type=float)
    p_angle.add_argument("--mc2-ev", type=float, default=ELECTRON_MC2_EV)
    p_angle.add_argument("--json", action="store_true")
    p_angle.set_defaults(func=cmd_angle)

    p_cut = sub.add_parser("cutoff", help="recoil and dispersion cutoffs")
    p_cut.add_argument("--beta", type=float, required=True)
    _add_medium_args(p_cut)
    p_cut.add_argument("--bracket", type=float, nargs=2, default=[300.0, 800.0],
                       metavar=("LO_NM", "HI_NM"))
    p_cut.add_argument("--mc2-ev", type=float, default=ELECTRON_MC2_EV)
    p_cut.add_argument("--json", action="store_true")
    p_cut.set_defaults(func=cmd_cutoff)

    for name, helptext in (("spectrum", "rate-vs-wavelength scan"),
                           ("ampmap", "amplitude map scan")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True,
                       help="JSON config path or bundled name "
                            "(fig2a..fig3d)")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--workers", default="1",
                       help="worker count or 'auto'")
        p.add_argument("--formats", default="csv",
                       help="comma-separated: csv,json,svg")
        p.add_argument("--points", type=int, default=None,
                       help="override scan.points")
        p.set_defaults(func=cmd_spectrum if name == "spectrum" else cmd_ampmap)

    p_or = sub.add_parser("oracle",
                          help="closed form vs quadrature comparison")
    p_or.add_argument("--cases", type=int, default=20)
    p_or.add_argument("--seed", type=int, default=7)
    p_or.add_argument("--out", default=None, help="directory for the CSV table")
    p_or.add_argument("--json", action="store_true")
    p_or.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
