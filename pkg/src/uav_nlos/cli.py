"""Command-line front end: predict, fit, link-budget, compare, ingest.

Exit codes: 0 success, 2 usage or input errors, 1 numeric or fit failures.
Whenever ``--output`` is given a ``<output>.manifest.json`` is written next to
it; ``uav-nlos replay <manifest>`` re-runs the recorded command.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._kv import InputError
from .geometry import Frequency, ScenarioGeometry, breaking_point_height, load_scenario
from .linkbudget import budget_report, load_link_config
from .measurements import (
    EXCESS,
    FitError,
    fit_alpha_least_squares,
    fit_linear_ab,
    merge_logs,
    moving_average,
    normalize_to_excess_loss,
    read_flight_log,
    read_power_log,
    read_trace,
    rms_error_db,
    trace_to_csv,
)
from .models import (
    ExcessLossParams,
    LinearModelParams,
    LogModelParams,
    curve_to_csv,
    curve_to_json,
    fit_alpha_from_ground_epl,
    model_curve,
)

_SI = {"": 1.0, "k": 1e3, "m": 1e6, "g": 1e9}
_FREQ_RE = re.compile(r"^\s*([0-9.]+(?:e[+-]?\d+)?)\s*([kmg]?)(?:hz)?\s*$", re.IGNORECASE)


def parse_frequency(text: str) -> Frequency:
    """Hz with optional SI suffix: ``24g``, ``4000m``, ``1e9``, ``12 GHz``. ``m`` is mega."""
    match = _FREQ_RE.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"cannot parse frequency {text!r}")
    value = float(match.group(1)) * _SI[match.group(2).lower()]
    try:
        return Frequency(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(args, text: str):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _info(args, msg: str):
    if not args.quiet:
        print(msg, file=sys.stderr)


def _scenario_dict(geom: ScenarioGeometry) -> dict:
    return {"d1_m": geom.d1_m, "d2_m": geom.d2_m, "obstacle_height_m": geom.h_obstacle_m,
            "gs_height_m": geom.h_gs_m}


def _model_params(args, kind: str):
    try:
        if kind == "excess":
            if args.alpha is None:
                raise InputError("the excess model needs --alpha")
            return ExcessLossParams(args.alpha)
        if kind == "linear":
            return LinearModelParams(args.a, args.b)
        if kind == "log":
            return LogModelParams(args.c, args.theta_floor)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return None


def cmd_predict(args):
    if args.model in ("itu", "excess") and args.freq is None:
        raise InputError(f"the {args.model} model needs --freq")
    geom = load_scenario(args.scenario)
    params = _model_params(args, args.model)
    curve = model_curve(geom, args.freq, params, args.model, args.h_min, args.h_max, args.step)
    _write(args, curve_to_json(curve) if args.format == "json" else curve_to_csv(curve))
    _info(args, f"{args.model}: {curve.h_uav_m.size} points, max loss {curve.loss_db.max():.2f} dB")


def cmd_fit(args):
    geom = load_scenario(args.scenario)
    h_bp = breaking_point_height(geom)
    report = {"model": args.model, "scenario": _scenario_dict(geom), "h_bp_m": h_bp, "fits": []}
    if args.model == "ground":
        if args.epl0_db is None or args.freq is None:
            raise InputError("ground fit needs --epl0-db and --freq")
        alpha = fit_alpha_from_ground_epl(geom, args.freq, args.epl0_db)
        report["fits"].append({"freq_hz": args.freq.hz, "epl0_db": args.epl0_db, "alpha": alpha})
    elif not args.traces:
        raise InputError(f"the {args.model} fit needs at least one trace file")
    for path in args.traces:
        trace = read_trace(path)
        if trace.kind != EXCESS:
            raise InputError(f"{path}: fits need an excess-loss trace, got {trace.kind}")
        f = args.freq or trace.f
        entry = {"trace": str(path), "freq_hz": f.hz, "n_samples": len(trace),
                 "n_nlos": int(np.count_nonzero(trace.alt_m < h_bp))}
        if args.model == "alpha":
            fit = fit_alpha_least_squares(trace, geom, f)
            entry.update(alpha=fit.alpha, rms_db=fit.rms_db)
        else:
            fit = fit_linear_ab(trace, geom)
            entry.update(a=fit.a, b=fit.b, rms_db=fit.rms_db)
        report["fits"].append(entry)
    _write(args, json.dumps(report, indent=2) + "\n")
    for entry in report["fits"]:
        shown = {k: v for k, v in entry.items() if k in ("alpha", "a", "b", "rms_db")}
        _info(args, f"{entry['freq_hz'] / 1e9:g} GHz: " +
              ", ".join(f"{k}={v:.6g}" for k, v in shown.items()))


_BUDGET_COLUMNS = ("freq_hz", "eirp_dbm", "fspl_db", "pathloss_los_db", "pr_max_dbm",
                   "noise_power_dbm", "dynamic_range_db")


def cmd_link_budget(args):
    rows = [budget_report(load_link_config(p)) for p in args.configs]
    if args.format == "json":
        _write(args, json.dumps(rows, indent=2) + "\n")
        return
    width = max(len(c) for c in _BUDGET_COLUMNS)
    lines = ["  ".join(c.rjust(width) for c in _BUDGET_COLUMNS)]
    for row in rows:
        cells = [f"{row['freq_hz'] / 1e9:.3f}G"] + [f"{row[c]:.2f}" for c in _BUDGET_COLUMNS[1:]]
        lines.append("  ".join(c.rjust(width) for c in cells))
    _write(args, "\n".join(lines) + "\n")


def cmd_compare(args):
    geom = load_scenario(args.scenario)
    if args.alpha is None:
        raise InputError("compare needs --alpha for the excess model")
    curves = {kind: model_curve(geom, args.freq, _model_params(args, kind), kind,
                                args.h_min, args.h_max, args.step)
              for kind in ("itu", "excess", "linear", "log")}
    header = {
        "freq_hz": args.freq.hz,
        "scenario": _scenario_dict(geom),
        "params": {k: c.params for k, c in curves.items()},
        "log_extrapolated": curves["log"].meta["extrapolated"],
    }
    if args.trace:
        trace = read_trace(args.trace)
        header["rms_db"] = {k: rms_error_db(trace, c) for k, c in curves.items()}
    h = curves["itu"].h_uav_m
    cols = {f"{k}_db": c.loss_db for k, c in curves.items()}
    if args.format == "json":
        doc = {**header, "h_uav_m": h.tolist(), **{k: v.tolist() for k, v in cols.items()}}
        _write(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in header.items()]
        lines.append(",".join(["h_uav_m", *cols]))
        for i, hi in enumerate(h):
            lines.append(",".join(repr(float(x)) for x in [hi, *(v[i] for v in cols.values())]))
        _write(args, "\n".join(lines) + "\n")
    if "rms_db" in header:
        _info(args, "RMS vs trace: " + ", ".join(f"{k} {v:.2f} dB" for k, v in header["rms_db"].items()))


def cmd_ingest(args):
    try:
        trace = merge_logs(read_power_log(args.power), read_flight_log(args.flight), args.freq,
                           args.max_gap)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    n_merged = len(trace)
    trace = moving_average(trace, args.window)
    if args.normalize:
        if not args.scenario:
            raise InputError("--normalize needs --scenario")
        trace = normalize_to_excess_loss(trace, load_scenario(args.scenario), args.los_margin)
    if args.format == "json":
        doc = {"freq_hz": trace.f.hz, "value_kind": trace.kind, "chain": list(trace.chain),
               "alt_m": trace.alt_m.tolist(), "value_db": trace.value_db.tolist()}
        _write(args, json.dumps(doc, indent=2) + "\n")
    else:
        _write(args, trace_to_csv(trace))
    _info(args, f"ingested {n_merged} samples ({trace.kind})")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="uav-nlos", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def grid(p):
        p.add_argument("--h-min", type=float, default=0.0)
        p.add_argument("--h-max", type=float, default=30.0)
        p.add_argument("--step", type=float, default=0.1)

    def coeffs(p, fitted_defaults: bool):
        p.add_argument("--alpha", type=float, help="diffuse coefficient of the excess model")
        p.add_argument("--a", type=float, default=0.011 if fitted_defaults else 0.0)
        p.add_argument("--b", type=float, default=0.785 if fitted_defaults else 0.0)
        p.add_argument("--c", type=float, default=11.5 if fitted_defaults else 0.0)
        p.add_argument("--theta-floor", type=float, default=0.1, help="degrees")

    p = sub.add_parser("predict", parents=[common], help="model loss vs altitude")
    p.add_argument("--scenario", required=True)
    p.add_argument("--freq", type=parse_frequency)
    p.add_argument("--model", choices=("itu", "excess", "linear", "log"), default="excess")
    coeffs(p, fitted_defaults=True)
    grid(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("fit", parents=[common], help="fit model parameters to excess-loss traces")
    p.add_argument("traces", nargs="*")
    p.add_argument("--scenario", required=True)
    p.add_argument("--model", choices=("alpha", "linear", "ground"), default="alpha")
    p.add_argument("--freq", type=parse_frequency, help="override the trace frequency")
    p.add_argument("--epl0-db", type=float, help="ground-level excess loss for --model ground")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("link-budget", parents=[common], help="LoS budget and dynamic range")
    p.add_argument("configs", nargs="+")
    p.set_defaults(func=cmd_link_budget)

    p = sub.add_parser("compare", parents=[common], help="all four models on one grid")
    p.add_argument("--scenario", required=True)
    p.add_argument("--freq", type=parse_frequency, required=True)
    p.add_argument("--trace", help="excess-loss trace for per-model RMS")
    coeffs(p, fitted_defaults=True)
    grid(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("ingest", parents=[common], help="merge, smooth and normalise logs")
    p.add_argument("--power", required=True, help="CSV t_s,p_dbm")
    p.add_argument("--flight", required=True, help="CSV t_s,alt_m")
    p.add_argument("--freq", type=parse_frequency, required=True)
    p.add_argument("--window", type=int, default=100)
    p.add_argument("--max-gap", type=float, default=0.5, help="seconds")
    p.add_argument("--normalize", action="store_true", help="convert to excess loss")
    p.add_argument("--scenario")
    p.add_argument("--los-margin", type=float, help="meters above the breaking point")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=None)
    return parser


_PATH_ARGS = ("scenario", "trace", "traces", "configs", "power", "flight")


def write_manifest(args, argv: list[str]):
    inputs = {}
    for name in _PATH_ARGS:
        val = getattr(args, name, None)
        if val:
            inputs[name] = [str(Path(v).resolve()) for v in val] if isinstance(val, list) \
                else str(Path(val).resolve())
    params = {k: (v.hz if isinstance(v, Frequency) else v) for k, v in sorted(vars(args).items())
              if k not in _PATH_ARGS + ("func", "output", "command")}
    manifest = {"subcommand": args.command, "argv": argv, "cwd": os.getcwd(),
                "inputs": inputs, "params": params,
                "outputs": [str(Path(args.output).resolve())], "version": __version__}
    Path(args.output + ".manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="\n")


def replay_manifest(path: str | Path) -> int:
    manifest = json.loads(Path(path).read_text(encoding="utf-8"))
    here = os.getcwd()
    os.chdir(manifest["cwd"])
    try:
        return main(manifest["argv"])
    finally:
        os.chdir(here)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "replay":
        return replay_manifest(args.manifest)
    try:
        args.func(args)
    except InputError as exc:
        print(f"uav-nlos {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (FitError, ValueError, ArithmeticError, TypeError) as exc:
        print(f"uav-nlos {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        write_manifest(args, argv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
