"""Command-line front end.

Subcommands::

    simulate  time traces of E, dE/dt and E/t as CSV
    optima    optimal times/values and asymptotes as JSON
    figure    regenerate the data behind a figure panel as <id>.csv
    verify    run the verification report; exit status 2 on any failure

Quantities are printed in normalised units (times times gamma, energies over
omega_b Omega^2, powers over omega_b Omega^2 gamma) unless ``--raw`` is given.
Without dissipation the coupling ``g`` replaces ``gamma`` as the rate unit.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import energetics, figures, optima
from .model import BatteryParams, classify_regime
from .verification import run_verification

EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    # 12 significant digits; "+ 0.0" folds -0.0 into 0.0
    return f"{float(x) + 0.0:.11e}"


def write_csv(header, rows, stream):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(fmt(v) for v in row) + "\n")


def _params(args) -> BatteryParams:
    try:
        return BatteryParams(omega_b=args.omega_b, g=args.g, gamma=args.gamma, Omega=args.omega)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _rate_unit(p: BatteryParams) -> tuple[float, str]:
    if p.gamma > 0:
        return p.gamma, "gamma"
    if p.g > 0:
        return p.g, "g"
    return p.omega_b, "omega_b"


def _units(p: BatteryParams, raw: bool) -> dict:
    if raw:
        return {"time": 1.0, "energy": 1.0, "power": 1.0, "rate_name": None}
    rate, name = _rate_unit(p)
    energy = p.energy_scale if p.Omega > 0 else 1.0
    return {"time": 1 / rate, "energy": energy, "power": energy * rate, "rate_name": name}


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args) -> int:
    p = _params(args)
    u = _units(p, args.raw)
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if args.scale == "log":
        start = args.t_min if args.t_min is not None else args.t_max * 1e-3
        if not 0 < start < args.t_max:
            raise UsageError("log scale needs 0 < --t-min < --t-max")
        grid = np.geomspace(start, args.t_max, args.points)
    else:
        start = args.t_min if args.t_min is not None else 0.0
        if not 0 <= start < args.t_max:
            raise UsageError("need 0 <= --t-min < --t-max")
        grid = np.linspace(start, args.t_max, args.points)
    t = grid * u["time"]
    E = np.asarray(energetics.stored_energy(p, t)) / u["energy"]
    Pi = np.asarray(energetics.instantaneous_power(p, t)) / u["power"]
    Pa = np.asarray(energetics.average_power(p, t)) / u["power"]
    if args.raw:
        header = ["t", "E", "Pinst", "Pavg"]
    else:
        header = [f"t*{u['rate_name']}", "E_norm", "Pinst_norm", "Pavg_norm"]
    buf = io.StringIO()
    write_csv(header, np.column_stack([grid, E, Pi, Pa]).tolist(), buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def optima_document(p: BatteryParams, raw: bool = False) -> dict:
    if p.g <= 0:
        raise UsageError("optima need g > 0: with no coupling the holder never charges")
    u = _units(p, raw)
    res = optima.optimize(p)
    unit_of = {"t_E": "time", "E_at_tE": "energy", "t_Pinst": "time",
               "Pinst_max": "power", "t_Pavg": "time", "Pavg_max": "power"}
    doc = {
        "params": {"omega_b": p.omega_b, "g": p.g, "gamma": p.gamma, "Omega": p.Omega},
        "regime": classify_regime(p).regime.value,
        "units": "raw" if raw else {
            "time": f"1/{u['rate_name']}",
            "energy": "omega_b*Omega^2",
            "power": f"omega_b*Omega^2*{u['rate_name']}",
        },
    }
    for key, kind in unit_of.items():
        doc[key] = {"value": getattr(res, key) / u[kind], "method": res.methods[key].value}
    doc["asymptotics"] = {}
    if p.gamma > 0:
        for name, a in optima.asymptotics(p).items():
            kind = unit_of[a.quantity]
            exact = getattr(res, a.quantity)
            doc["asymptotics"][name] = {
                "value": a.value / u[kind],
                "exact": exact / u[kind],
                "rel_error": abs(a.value - exact) / abs(exact),
                "validity": "g << gamma/4" if a.side == "weak" else "g >> gamma/4",
            }
    return doc


def cmd_optima(args) -> int:
    doc = optima_document(_params(args), args.raw)
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    ids = figures.FIGURE_IDS if args.figure == "all" else (args.figure,)
    if args.figure != "all" and args.figure not in figures.FIGURE_IDS:
        raise UsageError(f"unknown figure {args.figure!r}; choose from {', '.join(figures.FIGURE_IDS)} or all")
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for fid in ids:
        header, rows = figures.figure_table(fid, args.points, omega_b=args.omega_b, Omega=args.omega)
        path = out_dir / f"{fid}.csv"
        with open(path, "w", newline="") as fh:
            write_csv(header, rows, fh)
        print(path)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification(args.mode, progress=lambda msg: print(msg, file=sys.stderr))
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] criterion {r.criterion}: {r.name} computed={r.computed:.6g} "
              f"reference={r.reference:.6g} tol={r.tolerance:g}", file=sys.stderr)
    _emit(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _add_params(sp):
    sp.add_argument("--omega-b", type=float, default=5.0, help="level spacing (default 5)")
    sp.add_argument("--g", type=float, default=1.0, help="coupling rate (default 1)")
    sp.add_argument("--gamma", type=float, default=1.0, help="charger loss rate (default 1)")
    sp.add_argument("--omega", type=float, default=1.0, help="pulse strength Omega (default 1)")
    sp.add_argument("--raw", action="store_true", help="print raw, unnormalised numbers")
    sp.add_argument("--out", help="write to this file instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pulsed-battery", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="time traces as CSV")
    _add_params(sim)
    sim.add_argument("--t-max", type=float, default=10.0, help="end of the time grid (default 10)")
    sim.add_argument("--t-min", type=float, default=None, help="start of the time grid")
    sim.add_argument("--points", type=int, default=201)
    sim.add_argument("--scale", choices=("linear", "log"), default="linear")
    sim.set_defaults(func=cmd_simulate)

    opt = sub.add_parser("optima", help="optimal times and values as JSON")
    _add_params(opt)
    opt.set_defaults(func=cmd_optima)

    fig = sub.add_parser("figure", help="regenerate figure data as <id>.csv")
    fig.add_argument("--figure", required=True, help=f"one of {', '.join(figures.FIGURE_IDS)}, or all")
    fig.add_argument("--points", type=int, default=None)
    fig.add_argument("--omega-b", type=float, default=5.0)
    fig.add_argument("--omega", type=float, default=1.0)
    fig.add_argument("--out", help="output directory (default: current directory)")
    fig.set_defaults(func=cmd_figure)

    ver = sub.add_parser("verify", help="closed forms against both oracles")
    ver.add_argument("--mode", choices=("quick", "full"), default="quick")
    ver.add_argument("--out", help="write the JSON report to this file")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pulsed-battery {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
