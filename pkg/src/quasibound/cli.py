"""Command-line runner.

    quasibound <mode> [--config PATH] [--out DIR] [parameter overrides]
    quasibound plot CSV [--svg PATH] [--y-col COL] [--zoom CENTRE HALFWIDTH]

Exit codes: 0 success, 2 config error, 3 numerical error, 4 I/O error.
Failures print one JSON line ``{"error": ..., "exit_code": ..., "message": ...}``
to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, _accel
from .asymptotics import asymptotic_params, decay_slope, dip_width
from .config import (
    MODES,
    ConfigError,
    RunConfig,
    config_from_dict,
    config_to_dict,
    load_raw,
)
from .errors import MissingColumn, QuasiboundError
from .oracle import spectrum_oracle
from .svgplot import PlotSpec, render_svg
from .transfer import STATUS_BAND_EDGE, Spectrum, k_grid, spectrum_on_grid, sweep
from .wavepacket import build_lattice, trapping_series

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

CSV_COLUMNS = ("k", "t_prob", "r_prob", "flux_error", "phase_phi", "status")


def fmt(x) -> str:
    # shortest round-trip decimal, locale independent
    return repr(float(x))


def write_spectrum_csv(spec: Spectrum, path: Path) -> Path:
    rows = [
        (float(k), (fmt(k), fmt(abs(ph) ** 2), fmt(abs(be) ** 2),
                    fmt(abs(abs(ph) ** 2 + abs(be) ** 2 - 1.0)), fmt(np.angle(ph)), str(st)))
        for k, ph, be, st in zip(spec.k, spec.phi, spec.beta, spec.status)
    ]
    rows += [(float(k), (fmt(k), "", "", "", "", STATUS_BAND_EDGE)) for k in spec.skipped]
    rows.sort(key=lambda r: r[0])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(r for _, r in rows)
    return path


def _grid(cfg: RunConfig) -> np.ndarray:
    return k_grid(cfg.k_min, cfg.k_max, cfg.steps)


def run_sweep(cfg: RunConfig, out: Path) -> list[Path]:
    spec = sweep(cfg.params, cfg.k_min, cfg.k_max, cfg.steps)
    csv_path = write_spectrum_csv(spec, out / "spectrum.csv")
    svg = render_svg(csv_path, out / "spectrum.svg", PlotSpec(title=f"transfer matrix, N={cfg.params.n_imp}"))
    return [csv_path, svg]


def run_oracle(cfg: RunConfig, out: Path) -> list[Path]:
    spec = spectrum_oracle(cfg.params, _grid(cfg))
    csv_path = write_spectrum_csv(spec, out / "oracle.csv")
    svg = render_svg(csv_path, out / "oracle.svg", PlotSpec(title=f"linear-system oracle, N={cfg.params.n_imp}"))
    return [csv_path, svg]


def compare_spectra(a: Spectrum, b: Spectrum) -> dict:
    if a.k.shape != b.k.shape or not np.array_equal(a.k, b.k):
        raise QuasiboundError("spectra are on different grids")
    return {
        "points": int(a.k.size),
        "max_abs_dt_prob": float(np.max(np.abs(a.t_prob - b.t_prob))),
        "max_abs_dphi": float(np.max(np.abs(a.phi - b.phi))),
        "max_abs_dbeta": float(np.max(np.abs(a.beta - b.beta))),
    }


def run_compare(cfg: RunConfig, out: Path) -> list[Path]:
    ks = _grid(cfg)
    tm = spectrum_on_grid(cfg.params, ks)
    orc = spectrum_oracle(cfg.params, ks)
    paths = [write_spectrum_csv(tm, out / "spectrum.csv"), write_spectrum_csv(orc, out / "oracle.csv")]
    summary = compare_spectra(tm, orc)
    line = " ".join(f"{k}={fmt(v) if isinstance(v, float) else v}" for k, v in summary.items())
    (out / "compare.txt").write_text(line + "\n", encoding="utf-8")
    print(line)
    return paths + [out / "compare.txt"]


def run_asymptotics(cfg: RunConfig, out: Path) -> list[Path]:
    ap = asymptotic_params(cfg.params)
    slope = decay_slope(cfg.params, cfg.epsilon, cfg.n_series)
    report = {
        "alpha": ap.alpha,
        "gamma": ap.gamma,
        "decay_per_impurity": ap.decay_per_impurity,
        "epsilon": cfg.epsilon,
        "n_series": list(cfg.n_series),
        "fitted_slope": slope,
        "relative_deviation": (slope + ap.gamma) / ap.gamma,
    }
    path = out / "asymptotics.json"
    path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    print(f"alpha={fmt(ap.alpha)} gamma={fmt(ap.gamma)} fitted_slope={fmt(slope)}")
    return [path]


def run_dipwidth(cfg: RunConfig, out: Path) -> list[Path]:
    path = out / "dipwidth.csv"
    ks = _grid(cfg)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("n_imp", "threshold", "k_low", "k_high", "width"))
        for n in cfg.n_series:
            d = dip_width(spectrum_on_grid(cfg.params.with_(n_imp=n), ks), cfg.threshold)
            w.writerow((n, fmt(cfg.threshold), fmt(d.k_low), fmt(d.k_high), fmt(d.width)))
    return [path]


def run_wavepacket(cfg: RunConfig, out: Path) -> list[Path]:
    pk = cfg.packet
    lat = build_lattice(cfg.params, pk.length)
    res = trapping_series(cfg.params, pk.k0, sigma=pk.sigma, x0=pk.x0, t_final=pk.t_final,
                          samples=pk.samples, lattice=lat)
    path = out / "wavepacket.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("time", "trapped_fraction", "norm"))
        for t, f, nrm in zip(res.times, res.trapped, res.norms):
            w.writerow((fmt(t), fmt(f), fmt(nrm)))
    svg = render_svg(path, out / "wavepacket.svg",
                     PlotSpec(x_col="time", y_col="trapped_fraction", title=f"k0={pk.k0:.4g}"))
    return [path, svg]


RUNNERS = {
    "sweep": run_sweep,
    "oracle": run_oracle,
    "compare": run_compare,
    "asymptotics": run_asymptotics,
    "dipwidth": run_dipwidth,
    "wavepacket": run_wavepacket,
}


def write_manifest(cfg: RunConfig, out: Path, outputs: list[Path]) -> Path:
    manifest = {
        "artifact": "quasibound",
        "version": __version__,
        "backend": _accel.BACKEND,
        "config": config_to_dict(cfg),
        "outputs": [p.name for p in outputs],
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def run(cfg: RunConfig, out_dir: str | Path | None = None) -> list[Path]:
    """Execute one configured run; returns the files written (manifest last)."""
    out = Path(out_dir if out_dir is not None else cfg.output_path)
    out.mkdir(parents=True, exist_ok=True)
    outputs = RUNNERS[cfg.mode](cfg, out)
    return outputs + [write_manifest(cfg, out, outputs)]


PARAM_FLAGS = {
    "e0": float, "a": float, "g": float, "f": float, "b": float,
    "j": int, "n_imp": int, "m": int,
}
PACKET_FLAGS = {
    "k0": float, "sigma": float, "x0": float, "t_final": float, "samples": int, "length": int,
}


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasibound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode, help=f"run the {mode} mode")
        sp.add_argument("--config", help="JSON config (or a previous manifest.json)")
        sp.add_argument("--out", help="output directory (overrides output_path)")
        sp.add_argument("--steps", type=int)
        sp.add_argument("--k-min", dest="k_min", type=float)
        sp.add_argument("--k-max", dest="k_max", type=float)
        sp.add_argument("--threshold", type=float)
        sp.add_argument("--epsilon", type=float)
        sp.add_argument("--n-series", dest="n_series", type=_int_list, help="comma separated, e.g. 5,10,15,22")
        for name, typ in PARAM_FLAGS.items():
            sp.add_argument(f"--{name.replace('_', '-')}", dest=f"p_{name}", type=typ)
        for name, typ in PACKET_FLAGS.items():
            sp.add_argument(f"--{name.replace('_', '-')}", dest=f"pk_{name}", type=typ)
    sp = sub.add_parser("plot", help="render a CSV column as an SVG line plot")
    sp.add_argument("csv")
    sp.add_argument("--svg", help="output path (default: CSV path with .svg)")
    sp.add_argument("--x-col", default="k")
    sp.add_argument("--y-col", default="t_prob")
    sp.add_argument("--zoom", nargs=2, type=float, metavar=("CENTRE", "HALFWIDTH"))
    sp.add_argument("--title", default="")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    raw = load_raw(args.config) if args.config else {}
    raw = dict(raw)
    raw["mode"] = args.command
    for key in ("steps", "k_min", "k_max", "threshold", "epsilon", "n_series"):
        val = getattr(args, key)
        if val is not None:
            raw[key] = val
    params = dict(raw.get("params") or {})
    for name in PARAM_FLAGS:
        val = getattr(args, f"p_{name}")
        if val is not None:
            params[name] = val
    raw["params"] = params
    packet = dict(raw.get("packet") or {})
    for name in PACKET_FLAGS:
        val = getattr(args, f"pk_{name}")
        if val is not None:
            packet[name] = val
    if packet:
        raw["packet"] = packet
    if args.out:
        raw["output_path"] = args.out
    return config_from_dict(raw)


def _fail(exc: BaseException, code: int) -> int:
    print(json.dumps({"error": type(exc).__name__, "exit_code": code, "message": str(exc)}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            svg = args.svg or str(Path(args.csv).with_suffix(".svg"))
            zoom = tuple(args.zoom) if args.zoom else None
            render_svg(args.csv, svg, PlotSpec(args.x_col, args.y_col, zoom, args.title))
            print(svg)
            return EXIT_OK
        cfg = resolve_config(args)
        for path in run(cfg):
            print(path)
        return EXIT_OK
    except ConfigError as exc:
        return _fail(exc, EXIT_CONFIG)
    except (OSError, MissingColumn) as exc:
        return _fail(exc, EXIT_IO)
    except QuasiboundError as exc:
        return _fail(exc, EXIT_NUMERIC)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
