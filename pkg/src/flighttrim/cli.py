"""``trim``: command-line front end.

Exit status: 0 when an equilibrium exists or a check passes, 3 when none
exists or a check fails, 1 on any error (message on standard error).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np
import yaml

from .aero import check_passivity, verify_bisymmetry, verify_symmetry
from .config import PRESET_NAMES, load_scenario
from .equilibria import EquilibriumFunction, find_equilibria, positive_thrust_subset
from .errors import TrimError
from .geometry import uniform_circle
from .theorems import check_stall_condition, reproduce_lemma1, theorem1_suite, theorem2_suite

EXIT_OK, EXIT_ERROR, EXIT_NONE = 0, 1, 3
CHECKS = ("symmetry", "bisymmetry", "passivity", "stall-condition", "theorem1", "theorem2")


def _scenario(args):
    if args.preset and args.config:
        raise TrimError("give either --config or --preset, not both")
    if args.preset:
        return load_scenario(preset=args.preset, overrides=args.set)
    if args.config is None:
        raise TrimError("a scenario is required (--config PATH, --config - or --preset NAME)")
    if args.config == "-":
        return load_scenario(text=sys.stdin.read(), overrides=args.set)
    return load_scenario(path=args.config, overrides=args.set)


def _emit_json(obj, out):
    json.dump(obj, out, indent=2, allow_nan=False)
    out.write("\n")


def _emit_csv(header, rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_find(args, out) -> int:
    sc = _scenario(args)
    eqs = find_equilibria(sc.model, sc.vehicle, sc.condition, sc.solver)
    pos = positive_thrust_subset(eqs)
    if args.output == "csv":
        _emit_csv(
            ("theta_deg", "thrust_N", "transversality"),
            [(repr(math.degrees(r.theta_e)), repr(r.thrust), r.transversality.value) for r in eqs],
            out,
        )
    else:
        _emit_json(
            {
                "model": sc.model.name,
                "delta_deg": math.degrees(sc.vehicle.delta),
                "equilibria": [r.to_dict() for r in eqs],
                "positive_thrust_equilibria": [r.to_dict() for r in pos],
                "continuum": eqs.continuum,
            },
            out,
        )
    return EXIT_OK if eqs.exists else EXIT_NONE


def cmd_scan(args, out) -> int:
    if args.samples < 2:
        raise TrimError("--samples must be at least 2")
    sc = _scenario(args)
    thetas = uniform_circle(args.samples)
    vals = EquilibriumFunction(sc.model, sc.vehicle, sc.condition)(thetas)
    deg = np.degrees(thetas)
    if args.output == "json":
        _emit_json({"theta_deg": deg.tolist(), "f_value": vals.tolist()}, out)
    else:
        _emit_csv(("theta_deg", "f_value"), [(repr(float(a)), repr(float(f))) for a, f in zip(deg, vals)], out)
    return EXIT_OK


def _run_check(which, sc, args) -> dict:
    model = sc.model
    if which == "symmetry":
        rep = verify_symmetry(model)
        return {"check": which, "model": model.name, "satisfied": rep.passed, **rep.to_dict()}
    if which == "bisymmetry":
        rep = verify_bisymmetry(model)
        return {"check": which, "model": model.name, "satisfied": rep.passed, **rep.to_dict()}
    if which == "passivity":
        rep = check_passivity(model)
        return {"check": which, "model": model.name, "satisfied": rep.passed, **rep.to_dict()}
    if which == "stall-condition":
        return {"check": which, "model": model.name, **check_stall_condition(model).to_dict()}
    rng = np.random.default_rng(args.seed)
    n = args.samples
    if which == "theorem1":
        rep = theorem1_suite(model, sc.vehicle, n, rng, cfg=sc.solver)
    else:
        rep = theorem2_suite(model, sc.vehicle, n, rng, cfg=sc.solver)
    return {**rep.to_dict(), "seed": args.seed}


def cmd_check(args, out) -> int:
    sc = _scenario(args)
    report = _run_check(args.which, sc, args)
    _emit_report(report, args.output, out)
    return EXIT_OK if report["satisfied"] else EXIT_NONE


def _emit_report(report, fmt, out):
    if fmt == "csv":
        flat = [(k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in report.items()]
        _emit_csv(("key", "value"), flat, out)
    else:
        _emit_json(report, out)


def counterexample_config(c0: float, ka: float, mass: float, gravity: float) -> dict:
    """Scenario document reproducing the passive no-equilibrium construction."""
    return {
        "vehicle": {"mass": mass, "gravity": gravity, "delta_deg": 90.0},
        "model": {"preset": "counterexample", "params": {"c0": c0}, "ka": ka},
        "condition": {
            "v_ref": [0.0, 1.0 / math.sqrt(ka)],
            "a_ref": [gravity, -(c0 + 1.0) / mass],
            "v_wind": [0.0, 0.0],
        },
    }


def cmd_counterexample(args, out) -> int:
    if args.emit_config:
        out.write(yaml.safe_dump(counterexample_config(args.c0, args.ka, args.mass, args.gravity), sort_keys=False))
        return EXIT_OK
    try:
        rep = reproduce_lemma1(c0=args.c0, ka=args.ka, m=args.mass, g=args.gravity, samples=args.samples)
    except ValueError as exc:
        raise TrimError(str(exc)) from None
    _emit_report(rep.to_dict(), args.output, out)
    return EXIT_OK if rep.reproduced else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trim", description="Longitudinal trim: find and verify equilibrium orientations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_flags(p, samples_default, samples_help):
        p.add_argument("--config", metavar="PATH", help="scenario file (YAML or JSON); '-' reads standard input")
        p.add_argument("--preset", choices=PRESET_NAMES, help="shipped scenario")
        p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE", help="override one scenario value")
        p.add_argument("--samples", type=int, default=samples_default, metavar="N", help=samples_help)
        p.add_argument("--seed", type=int, default=0, metavar="N", help="seed for randomized checks")

    p = sub.add_parser("find", help="enumerate equilibrium orientations and thrust")
    scenario_flags(p, 0, "unused")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("scan", help="tabulate f_t on a uniform orientation grid")
    scenario_flags(p, 360, "grid size")
    p.add_argument("--output", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("check", help="run a symmetry, passivity or existence check")
    p.add_argument("which", choices=CHECKS)
    scenario_flags(p, 200, "random flight conditions for the existence checks")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("counterexample", help="report on the passive model without equilibria")
    p.add_argument("--c0", type=float, default=0.1)
    p.add_argument("--ka", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--gravity", type=float, default=9.81)
    p.add_argument("--samples", type=int, default=3600, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="N", help="accepted for uniformity; the report is deterministic")
    p.add_argument("--emit-config", action="store_true", help="print the scenario instead of the report")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (TrimError, ValueError, ArithmeticError, OSError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"trim: error: {msg}\n")
        return EXIT_ERROR
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
