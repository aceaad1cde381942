"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
infeasibility (Fock cutoff out of reach).
"""

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .entropic import exponent_no_memory
from .errors import CutoffError, InvalidArgumentError
from .optimality import (
    DEFAULT_MARGIN,
    IlluminationParams,
    advantage_db,
    coherent_exponent,
    modes_required,
    tmsv_exponent,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .symplectic import make_coherent

SCHEMA_LINE = "# schema=1"
SWEEP_COLUMNS = ("eta", "E", "N_B", "exponent_coherent", "exponent_tmsv", "advantage_db", "modes_required")
EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x):
    """12 significant digits in scientific notation; integers stay integers."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def _json_number(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _params(args, **override):
    values = {"eta": args.eta, "E": args.energy, "N_B": args.noise, "n_signal": args.modes}
    values.update(override)
    return IlluminationParams(**values)


def cmd_exponent(args, out):
    p = _params(args)
    n = p.n_signal
    if args.probe == "vacuum":
        value = 0.0
    elif args.probe == "coherent":
        probe = make_coherent([math.sqrt(p.E)] * n)
        value = exponent_no_memory(probe, p.eta, p.N_B)
    else:
        value = tmsv_exponent(p)
    if not args.total:
        value /= n
    record = {
        "probe": args.probe,
        "eta": p.eta,
        "E": p.E,
        "N_B": p.N_B,
        "modes": n,
        "normalization": "total" if args.total else "per_mode",
        "exponent": value,
        "advantage_db": advantage_db(p) if args.probe == "tmsv" else None,
        "modes_required": modes_required(p, args.margin),
    }
    if args.format == "json":
        out.write(json.dumps({k: _json_number(v) for k, v in record.items()}) + "\n")
    else:
        out.write(SCHEMA_LINE + "\n")
        out.write(",".join(record) + "\n")
        cells = ["" if v is None else v if isinstance(v, str) else fmt(v) for v in record.values()]
        out.write(",".join(cells) + "\n")
    return EXIT_OK


def sweep_values(args):
    if args.values is not None:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"cannot parse --values {args.values!r}") from None
    elif args.start is not None and args.stop is not None and args.count is not None:
        if args.count < 1:
            raise UsageError("--count must be positive")
        if args.scale == "log":
            if args.start <= 0 or args.stop <= 0:
                raise UsageError("log sweeps need positive endpoints")
            values = list(np.geomspace(args.start, args.stop, args.count))
        else:
            values = list(np.linspace(args.start, args.stop, args.count))
    else:
        raise UsageError("give --values or all of --start/--stop/--count")
    if not values:
        raise UsageError("sweep has no values")
    steps = np.diff(values)
    if len(values) > 1 and not (np.all(steps > 0) or np.all(steps < 0)):
        raise UsageError("sweep values must be strictly monotone")
    return [float(v) for v in values]


def _sweep_row(args, axis, value):
    p = _params(args, **{axis: value})
    scale = p.n_signal if args.total else 1
    coh = coherent_exponent(p, per_mode=True) * scale
    tm = tmsv_exponent(p, per_mode=True) * scale
    return [p.eta, p.E, p.N_B, coh, tm, advantage_db(p), modes_required(p, args.margin)]


def cmd_sweep(args, out):
    values = sweep_values(args)
    for v in values:
        _params(args, **{args.axis: v})
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        rows = list(pool.map(lambda v: _sweep_row(args, args.axis, v), values))
    out.write(SCHEMA_LINE + "\n")
    out.write(",".join(SWEEP_COLUMNS) + "\n")
    for row in rows:
        out.write(",".join(fmt(x) for x in row) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    p = _params(args)
    chosen = ["1", "2", "3", "lemma1"] if args.theorem == "all" else [args.theorem]
    reports = []
    for which in chosen:
        if which == "1":
            reports.append(verify_theorem1(p, args.samples, args.seed, args.slack, workers=args.workers))
        elif which == "2":
            reports.append(verify_theorem2(p, args.samples, args.seed, args.slack, workers=args.workers))
        elif which == "3":
            reports.append(verify_theorem3(p, args.samples, args.seed, args.slack, workers=args.workers))
        else:
            from .fock import verify_lemma1

            reports.append(
                verify_lemma1(
                    args.seed,
                    args.lemma1_eta,
                    args.lemma1_noise,
                    args.cutoff,
                    args.lemma1_samples,
                    args.lemma1_tol,
                )
            )
    out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_oracle_check(args, out):
    from .fock import gaussian_crosscheck

    if args.tolerance < 0:
        raise UsageError("--tolerance must be non-negative")
    rec = gaussian_crosscheck(args.quantity, args.eta, args.energy, args.noise)
    passed = rec["gap"] <= args.tolerance
    if args.format == "json":
        out.write(json.dumps({**rec, "tolerance": args.tolerance, "passed": passed}) + "\n")
    else:
        cut = " ".join(f"{k}={v}" for k, v in rec["cutoffs"].items())
        out.write(f"quantity    {rec['quantity']}\n")
        out.write(f"params      eta={rec['eta']:g} E={rec['E']:g} N_B={rec['N_B']:g}\n")
        out.write(f"gaussian    {fmt(rec['gaussian'])}\n")
        out.write(f"fock        {fmt(rec['fock'])}\n")
        out.write(f"gap         {fmt(rec['gap'])}\n")
        out.write(f"tolerance   {fmt(args.tolerance)}\n")
        out.write(f"cutoffs     {cut}\n")
        out.write(f"status      {'PASS' if passed else 'FAIL'}\n")
    return EXIT_OK if passed else EXIT_FAILED


def _add_physics(parser, eta, energy, noise):
    parser.add_argument("--eta", type=float, default=eta, help="target reflectivity in (0, 1)")
    parser.add_argument("--energy", type=float, default=energy, help="probe photons per signal mode")
    parser.add_argument("--noise", type=float, default=noise, help="background photons per mode")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qillum",
        description="Stein exponents of Gaussian quantum illumination probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponent", help="exponent of a single probe")
    _add_physics(p, 0.01, 0.01, 20.0)
    p.add_argument("--probe", choices=("coherent", "tmsv", "vacuum"), default="tmsv")
    p.add_argument("--modes", type=int, default=1, help="number of signal modes")
    norm = p.add_mutually_exclusive_group()
    norm.add_argument("--per-mode", dest="total", action="store_false", help="nats per signal mode (default)")
    norm.add_argument("--total", dest="total", action="store_true", help="total nats over all signal modes")
    p.set_defaults(total=False)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--margin", type=float, default=DEFAULT_MARGIN, help="safety factor for modes_required")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("sweep", help="CSV sweep over one parameter")
    _add_physics(p, 0.01, 0.01, 20.0)
    p.add_argument("--axis", choices=("eta", "E", "N_B"), required=True)
    p.add_argument("--values", help="comma separated axis values")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--modes", type=int, default=1)
    p.add_argument("--total", action="store_true", help="total rather than per-mode exponents")
    p.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="randomized optimality checks")
    _add_physics(p, 0.1, 0.3, 1.0)
    p.add_argument("--theorem", choices=("1", "2", "3", "lemma1", "all"), default="all")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slack", type=float, default=None, help="defaults to $QI_DEFAULT_SLACK or 1e-9")
    p.add_argument("--modes", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--lemma1-samples", type=int, default=50)
    p.add_argument("--lemma1-eta", type=float, default=0.6)
    p.add_argument("--lemma1-noise", type=float, default=0.3)
    p.add_argument("--lemma1-tol", type=float, default=1e-5)
    p.add_argument("--cutoff", type=int, default=12, help="Fock cutoff of the Lemma 1 inputs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-check", help="compare Gaussian formulas with the Fock oracle")
    _add_physics(p, 0.3, 0.2, 0.5)
    p.add_argument(
        "--quantity",
        choices=("entropy", "conditional_entropy", "exponent_with_memory", "exponent_no_memory"),
        default="exponent_with_memory",
    )
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, InvalidArgumentError) as exc:
        err.write(f"qillum {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except CutoffError as exc:
        err.write(
            f"qillum {args.command}: numerically infeasible: {exc}\n"
            "try smaller --noise or --energy (desk-scale oracle)\n"
        )
        return EXIT_INFEASIBLE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
