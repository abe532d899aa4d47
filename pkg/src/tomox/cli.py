"""Command-line interface: ``tomox <subcommand> [options]``."""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from pathlib import Path

from . import io as tio
from .affine import (AffineParams, freq_scale_tomogram, inversion_tomogram as affine_inversion_tomogram,
                     invert_time_scale, time_scale_tomogram)
from .errors import TomoxError
from .quasidist import affine_quasidistribution, ambiguity, husimi_kano, wigner_ville
from .relations import photon_number_tomogram
from .signal import Axis, SignalKind, make_axis, make_log_axis, symmetric_axis, synthesize
from .symplectic import (FREQ_SCALE, TIME_SCALE, inversion_tomogram, invert_symplectic,
                         tomogram_family)
from .verify import load_config, run_verify
from .wavelet import cwt, icwt

DEFAULT_GRID = "-8:0.0625:257"


def parse_grid(text: str) -> Axis:
    """``start:step:count`` -> Axis."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:step:count, got {text!r}")
    try:
        return make_axis(float(parts[0]), float(parts[1]), int(parts[2]))
    except (ValueError, TomoxError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_list(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _signal(args):
    spec = args.signal
    if os.path.exists(spec):
        fmt = tio.BIN if Path(spec).suffix == ".bin" else tio.CSV
        return tio.load_signal(spec, fmt)
    return synthesize(SignalKind.parse(spec), args.grid, normalize=True)


def _format(args):
    if args.format:
        return args.format
    if args.out and Path(args.out).suffix == ".bin":
        return tio.BIN
    return tio.CSV


def _emit(obj, args):
    fmt = _format(args)
    if args.out:
        tio.store_field(obj, args.out, fmt)
        return
    if fmt == tio.BIN:
        raise TomoxError("binary output needs --out")
    csv.writer(sys.stdout, lineterminator="\n").writerows(tio._csv_rows(obj))


def _common(p, signal=True):
    if signal:
        p.add_argument("--signal", default="gaussian",
                       help="signal kind (e.g. chirp:0.5,1) or path to a CSV/.bin signal")
        p.add_argument("--grid", type=parse_grid, default=parse_grid(DEFAULT_GRID),
                       help="time grid start:step:count for built-in signals")
    p.add_argument("--out", help="output path (CSV to stdout when omitted)")
    p.add_argument("--format", choices=(tio.CSV, tio.BIN))


def cmd_tomogram(args):
    f = _signal(args)
    thetas = args.theta if args.theta else [0.0, math.pi / 4, math.pi / 2]
    _emit(tomogram_family(f, thetas, args.x_grid), args)


def cmd_wigner(args):
    f = _signal(args)
    _emit(wigner_ville(f, args.tau_grid or f.axis, args.omega_grid), args)


def cmd_ambiguity(args):
    _emit(ambiguity(_signal(args), args.mu_grid, args.nu_grid), args)


def cmd_affine_q(args):
    _emit(affine_quasidistribution(_signal(args), args.s_grid, args.tau_grid), args)


def cmd_husimi(args):
    _emit(husimi_kano(_signal(args), args.t_grid, args.omega_grid), args)


def _scales(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("scales must be smin:smax:count")
    try:
        return make_log_axis(float(parts[0]), float(parts[1]), int(parts[2]))
    except (ValueError, TomoxError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_cwt(args):
    f = _signal(args)
    h = synthesize(SignalKind.parse(args.mother), f.axis, normalize=True)
    _emit(cwt(f, h, args.scales, args.tau_grid or f.axis, mother=args.mother), args)


def cmd_icwt(args):
    w = tio.load_field(args.input)
    mother = args.mother or (w.mother if w.mother != "custom" else "mexican_hat")
    h = synthesize(SignalKind.parse(mother), args.grid, normalize=True)
    _emit(icwt(w, h, args.out_grid or w.tau_axis), args)


def cmd_affine_tomogram(args):
    f = _signal(args)
    params = AffineParams(args.mu, args.nu, args.s_grid)
    fn = time_scale_tomogram if args.family == TIME_SCALE else freq_scale_tomogram
    _emit(fn(f, params), args)


def cmd_invert(args):
    f = _signal(args)
    t_axis = args.t_grid
    if args.method == "symplectic":
        mu_axis = symmetric_axis(args.mu_max, args.mu_step)
        g = invert_symplectic(inversion_tomogram(f, t_axis, mu_axis), t_axis, mu_axis)
    else:
        mu_axis = symmetric_axis(args.mu_max, args.mu_step)
        g = invert_time_scale(affine_inversion_tomogram(f, mu_axis), t_axis,
                              dilation=args.dilation, literal=args.literal)
    _emit(g, args)


def cmd_photon(args):
    f = _signal(args)
    pt = photon_number_tomogram(f, complex(args.beta.replace(" ", "")), args.n_max)
    rows = [["n", "w"]] + [[str(n), repr(float(w))] for n, w in enumerate(pt.probs)]
    if _format(args) == tio.BIN:
        raise TomoxError("photon output is CSV only")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
    else:
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)


def cmd_verify(args):
    overrides = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise TomoxError(f"--set expects key=value, got {item!r}")
        overrides[key.strip()] = value.strip()
    if args.tolerance_scale is not None:
        overrides["tolerance_scale"] = args.tolerance_scale
    if args.signal:
        overrides["signals"] = args.signal
    if args.grid:
        overrides.update({"grid.start": args.grid.start, "grid.step": args.grid.step,
                          "grid.count": args.grid.count})
    report = run_verify(load_config(args.config, overrides))
    sys.stdout.write(report.to_text())
    if args.out:
        Path(args.out).write_text(report.to_json())
    print(f"wall time {report.wall_time:.1f} s", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tomox", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tomogram", help="symplectic tomogram rows at angles theta")
    _common(p)
    p.add_argument("--theta", type=parse_list, help="comma-separated angles in radians")
    p.add_argument("--x-grid", type=parse_grid, default=symmetric_axis(12.0, 0.05))
    p.set_defaults(fn=cmd_tomogram)

    p = sub.add_parser("wigner", help="Wigner-Ville distribution")
    _common(p)
    p.add_argument("--tau-grid", type=parse_grid)
    p.add_argument("--omega-grid", type=parse_grid, default=symmetric_axis(12.0, 0.0625))
    p.set_defaults(fn=cmd_wigner)

    p = sub.add_parser("ambiguity", help="ambiguity function")
    _common(p)
    p.add_argument("--mu-grid", type=parse_grid, default=symmetric_axis(6.0, 0.125))
    p.add_argument("--nu-grid", type=parse_grid, default=symmetric_axis(6.0, 0.125))
    p.set_defaults(fn=cmd_ambiguity)

    p = sub.add_parser("affine-q", help="affine quasidistribution")
    _common(p)
    p.add_argument("--s-grid", type=parse_grid, default=make_axis(0.25, 0.25, 16))
    p.add_argument("--tau-grid", type=parse_grid, default=symmetric_axis(4.0, 0.25))
    p.set_defaults(fn=cmd_affine_q)

    p = sub.add_parser("husimi", help="Husimi-Kano distribution")
    _common(p)
    p.add_argument("--t-grid", type=parse_grid, default=symmetric_axis(4.0, 0.125))
    p.add_argument("--omega-grid", type=parse_grid, default=symmetric_axis(4.0, 0.125))
    p.set_defaults(fn=cmd_husimi)

    p = sub.add_parser("cwt", help="continuous wavelet transform")
    _common(p)
    p.add_argument("--mother", default="mexican_hat")
    p.add_argument("--scales", type=_scales, default=make_log_axis(2 ** -4, 2 ** 4, 64),
                   help="smin:smax:count (log-spaced)")
    p.add_argument("--tau-grid", type=parse_grid)
    p.set_defaults(fn=cmd_cwt)

    p = sub.add_parser("icwt", help="inverse wavelet transform of a stored field")
    _common(p, signal=False)
    p.add_argument("--input", required=True, help="binary wavelet field from 'cwt'")
    p.add_argument("--mother", help="mother wavelet kind (defaults to the field's)")
    p.add_argument("--grid", type=parse_grid, default=parse_grid(DEFAULT_GRID),
                   help="grid on which the mother wavelet is sampled")
    p.add_argument("--out-grid", type=parse_grid)
    p.set_defaults(fn=cmd_icwt)

    p = sub.add_parser("affine-tomogram", help="time-scale or frequency-scale tomogram")
    _common(p)
    p.add_argument("--family", choices=(TIME_SCALE, FREQ_SCALE), default=TIME_SCALE)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--s-grid", type=parse_grid, default=symmetric_axis(40.0, 0.05))
    p.set_defaults(fn=cmd_affine_tomogram)

    p = sub.add_parser("invert", help="tomogram round trip back to the signal")
    _common(p)
    p.add_argument("--method", choices=("symplectic", TIME_SCALE), default="symplectic")
    p.add_argument("--t-grid", type=parse_grid, default=symmetric_axis(4.0, 0.125))
    p.add_argument("--mu-max", type=float, default=12.0)
    p.add_argument("--mu-step", type=float, default=0.1)
    p.add_argument("--dilation", type=float, default=6.0)
    p.add_argument("--literal", action="store_true",
                   help="time-scale only: evaluate the uncorrected k=2 formula")
    p.set_defaults(fn=cmd_invert)

    p = sub.add_parser("photon", help="photon-number tomogram")
    _common(p)
    p.add_argument("--beta", default="1", help="complex displacement, e.g. 1+0.5j")
    p.add_argument("--n-max", type=int, default=40)
    p.set_defaults(fn=cmd_photon)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="config override")
    p.add_argument("--tolerance-scale", type=float)
    p.add_argument("--signal", help="comma-separated signal kinds")
    p.add_argument("--grid", type=parse_grid)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.fn(args)
    except (TomoxError, ValueError) as exc:
        print(f"tomox: error: {exc}", file=sys.stderr)
        return 2
    return int(rc or 0)


if __name__ == "__main__":
    sys.exit(main())
