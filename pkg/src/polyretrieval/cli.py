"""Command-line interface.

    polyretrieval measure --in f.json --epsilon E --seed S --out ms.json
    polyretrieval recover --in ms.json --out rec.json [--truth f.json]
    polyretrieval sweep --degree D --eps-min A --eps-max B --points P --trials T --seed S --out sweep.csv
    polyretrieval bounds --in f.json
    polyretrieval inject-check --degree D --pairs N --alpha A --seed S

Exit status: 0 success, 1 recovery failure (reported in the output), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import _numeric
from .experiments import (
    SignalSpec,
    emit_csv,
    gen_signal,
    injectivity_trial,
    log_grid,
    loglog_slope,
    noise_sweep,
    signal_bounds,
)
from .measurements import MeasurementSet, NoiseDistribution, NoiseSpec, measure
from .polynomial import error_up_to_phase, load_poly
from .recovery import RecoveryConfig, RecoveryError, recover

EXIT_OK, EXIT_RECOVERY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyretrieval", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="simulate the 8d-4 magnitude measurements of a polynomial")
    m.add_argument("--in", dest="input", required=True, help="polynomial JSON ([re, im] pairs)")
    m.add_argument("--epsilon", type=_nonneg_float, default=0.0)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument(
        "--distribution",
        choices=[x.value for x in NoiseDistribution],
        default=NoiseDistribution.UNIFORM_SYMMETRIC.value,
    )
    m.add_argument("--out", default="-")

    r = sub.add_parser("recover", help="reconstruct a polynomial from measurements")
    r.add_argument("--in", dest="input", required=True, help="measurement JSON")
    r.add_argument("--out", default="-")
    r.add_argument("--truth", help="ground-truth polynomial JSON; reports the coefficient error")
    r.add_argument("--quadrature-nodes", type=_positive_int, default=None)

    s = sub.add_parser("sweep", help="noise sweep on a random signal, CSV output")
    s.add_argument("--degree", type=_positive_int, required=True, help="d (number of coefficients)")
    s.add_argument("--eps-min", type=_nonneg_float, required=True)
    s.add_argument("--eps-max", type=_nonneg_float, required=True)
    s.add_argument("--points", type=_positive_int, default=12)
    s.add_argument("--trials", type=_positive_int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument(
        "--relative", action="store_true", help="eps-min/eps-max are multiples of the stability radius"
    )
    s.add_argument("--annulus-gap", type=float, default=0.2)
    s.add_argument("--root-radius-max", type=float, default=3.0)
    s.add_argument(
        "--distribution",
        choices=[x.value for x in NoiseDistribution],
        default=NoiseDistribution.UNIFORM_SYMMETRIC.value,
    )
    s.add_argument("--quadrature-nodes", type=_positive_int, default=None)
    s.add_argument("--out", required=True)

    b = sub.add_parser("bounds", help="print stability constants of a polynomial as JSON")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--grid", type=_positive_int, default=None)

    i = sub.add_parser("inject-check", help="Monte-Carlo injectivity check of the 4d-4 design")
    i.add_argument("--degree", type=int, required=True)
    i.add_argument("--pairs", type=_positive_int, default=1000)
    i.add_argument("--alpha", type=float, default=1.0)
    i.add_argument("--seed", type=int, default=0)
    return p


def _write_json(obj, out):
    text = _numeric.dumps(obj)
    if out == "-":
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _load(loader, path):
    try:
        return loader(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def cmd_measure(args) -> int:
    f = _load(load_poly, args.input)
    noise = NoiseSpec(args.epsilon, args.seed, args.distribution)
    ms = measure(f, noise)
    ms.meta = {
        "epsilon": args.epsilon,
        "seed": args.seed,
        "distribution": noise.distribution.value,
        "count": ms.count,
    }
    _write_json(ms.to_json(), args.out)
    return EXIT_OK


def cmd_recover(args) -> int:
    ms = _load(MeasurementSet.load, args.input)
    cfg = RecoveryConfig(nodes=args.quadrature_nodes)
    truth = _load(load_poly, args.truth) if args.truth else None
    meta = {"config": dict(cfg.__dict__), "input": args.input}
    try:
        rec = recover(ms, cfg)
    except RecoveryError as exc:
        _write_json({"error": type(exc).__name__, "message": str(exc), "meta": meta}, args.out)
        print(f"recovery failed: {exc}", file=sys.stderr)
        return EXIT_RECOVERY
    out = rec.to_json()
    if truth is not None:
        if truth.degree_bound != ms.d:
            raise UsageError("truth polynomial does not match the measurement degree")
        c, err = error_up_to_phase(truth, rec.coeffs)
        out["coeff_err"] = err
        out["phase"] = [c.real, c.imag]
    out["meta"] = meta
    _write_json(out, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.eps_max < args.eps_min:
        raise UsageError("--eps-max must not be smaller than --eps-min")
    spec = SignalSpec(args.degree, args.annulus_gap, args.root_radius_max, args.seed)
    signal = gen_signal(spec)
    scale = signal_bounds(signal[0]).epsilon0 if args.relative else 1.0
    lo, hi = args.eps_min * scale, args.eps_max * scale
    if args.points == 1 or lo == hi:
        grid = [lo] * (1 if lo == hi else args.points)
    elif lo == 0:
        raise UsageError("a log-spaced grid needs --eps-min > 0")
    else:
        grid = log_grid(lo, hi, args.points)
    cfg = RecoveryConfig(nodes=args.quadrature_nodes)
    rows = noise_sweep(spec, grid, args.trials, args.distribution, cfg, signal=signal)
    emit_csv(rows, args.out)
    summary = {"rows": len(rows), "failures": sum(r.failed for r in rows), "meta": vars(args)}
    try:
        summary["loglog_slope"] = loglog_slope(rows)
    except ValueError:
        pass
    print(json.dumps(summary, default=str))
    return EXIT_OK


def cmd_bounds(args) -> int:
    f = _load(load_poly, args.input)
    b = signal_bounds(f, args.grid)
    out = b.to_json()
    out["meta"] = {"grid": args.grid or max(8192, 64 * f.degree_bound)}
    _write_json(out, "-")
    return EXIT_OK


def cmd_inject(args) -> int:
    if args.degree < 2:
        raise UsageError("--degree must be at least 2")
    report = injectivity_trial(args.degree, args.pairs, args.alpha, args.seed)
    print(json.dumps(report))
    return EXIT_OK if report["collisions"] == 0 else EXIT_RECOVERY


COMMANDS = {
    "measure": cmd_measure,
    "recover": cmd_recover,
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
    "inject-check": cmd_inject,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
