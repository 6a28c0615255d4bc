"""Command-line entry point: ``binomlcc {interval,table,coverage,metrics,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .coverage import coverage_grid, coverage_profile, method_metrics
from .estimators import Method, Tail, endpoint_table
from .exceptions import BracketError, DomainError, NonConvergenceError
from .verification import SCHEMA_VERSION, round_half_away, run_verification

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(value, round4):
    if round4:
        return f"{round_half_away(value, 4):.4f}"
    return f"{value:.10g}"


def _num(value, round4):
    return round_half_away(value, 4) if round4 else value


def _one_tail_alpha(args):
    if args.alpha is not None:
        if not 0.0 < args.alpha < 0.5:
            raise UsageError(f"--alpha must lie in (0, 0.5), got {args.alpha}")
        return args.alpha
    if not 0.0 < args.conf < 1.0:
        raise UsageError(f"--conf must lie in (0, 1), got {args.conf}")
    return (1.0 - args.conf) / 2.0


def _parse_list(text, convert, what):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise UsageError(f"{what} list is empty")
    try:
        return [convert(s) for s in items]
    except (ValueError, DomainError) as exc:
        raise UsageError(f"bad {what} list {text!r}: {exc}") from None


def _n_range(text):
    try:
        lo, hi = (int(s) for s in text.split(":"))
    except ValueError:
        raise UsageError(f"--n-range must look like A:B, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise UsageError(f"--n-range needs 1 <= A <= B, got {text!r}")
    return range(lo, hi + 1)


def _emit(args, command, payload, header, rows):
    out = sys.stdout
    if args.format == "json":
        record = {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload}
        out.write(json.dumps(record, indent=2, sort_keys=True) + "\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _command_echo(args):
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _interval_ends(method, n, x, alpha, tail):
    lower = endpoint_table(method, n, alpha, Tail.LOWER)[x] if tail != "upper" else 0.0
    upper = endpoint_table(method, n, alpha, Tail.UPPER)[x] if tail != "lower" else 1.0
    return lower, upper


def cmd_interval(args):
    method = Method.parse(args.method)
    alpha = _one_tail_alpha(args)
    if not 0 <= args.x <= args.n:
        raise UsageError(f"--x must lie in [0, {args.n}]")
    lower, upper = _interval_ends(method, args.n, args.x, alpha, args.tail)
    if method is Method.WALD and (lower >= upper or lower < 0.0 or upper > 1.0):
        print(f"warning: Wald interval is degenerate or leaves [0, 1] at n={args.n}, x={args.x}",
              file=sys.stderr)
    confidence = 1.0 - 2.0 * alpha if args.tail == "two-sided" else 1.0 - alpha
    payload = {
        "method": method.value, "n": args.n, "x": args.x, "alpha": alpha,
        "tail": args.tail, "confidence": confidence,
        "lower": _num(lower, args.round4), "upper": _num(upper, args.round4),
    }
    if args.format == "text":
        print(f"{method.value} n={args.n} x={args.x} {args.tail} confidence={confidence:.10g}: "
              f"({_fmt(lower, args.round4)}, {_fmt(upper, args.round4)})")
    else:
        _emit(args, _command_echo(args), payload,
              ["method", "n", "x", "alpha", "tail", "lower", "upper"],
              [[method.value, args.n, args.x, f"{alpha:.10g}", args.tail,
                _fmt(lower, args.round4), _fmt(upper, args.round4)]])
    return EXIT_OK


def cmd_table(args):
    method = Method.parse(args.method)
    alpha = _one_tail_alpha(args)
    rows, records = [], []
    for n in _n_range(args.n_range):
        low = endpoint_table(method, n, alpha, Tail.LOWER)
        up = endpoint_table(method, n, alpha, Tail.UPPER)
        for x in range(n + 1):
            rows.append([method.value, n, x, _fmt(low[x], args.round4), _fmt(up[x], args.round4)])
            records.append({"n": n, "x": x, "lower": _num(low[x], args.round4),
                            "upper": _num(up[x], args.round4)})
    payload = {"method": method.value, "alpha": alpha, "rows": records}
    _emit(args, _command_echo(args), payload, ["method", "n", "x", "lower", "upper"], rows)
    return EXIT_OK


def cmd_coverage(args):
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    table = endpoint_table(args.method, args.n, args.alpha, args.tail)
    p = np.linspace(0.0, 1.0, args.samples)
    cov = coverage_grid(table, p)
    profile = coverage_profile(table)
    rows = [["sample", k, f"{pk:.10g}", f"{ck:.10g}"] for k, (pk, ck) in enumerate(zip(p, cov))]
    rows += [["spike", k, f"{s:.10g}", f"{d:.10g}"]
             for k, (s, d) in enumerate(zip(profile.spikes, profile.drops))]
    rows += [["gap_average", k, f"{a:.10g}", f"{v:.10g}"]
             for k, (a, v) in enumerate(zip(profile.spikes, profile.interspike_averages))]
    payload = {
        "method": table.method.value, "n": table.n, "alpha": table.alpha, "tail": table.tail.value,
        "samples": [{"p": float(a), "coverage": float(b)} for a, b in zip(p, cov)],
        "spikes": list(profile.spikes),
        "drops": list(profile.drops),
        "gap_averages": list(profile.interspike_averages),
    }
    # gap_average rows: p is the gap's left spike, value is the mean coverage up to the next spike
    _emit(args, _command_echo(args), payload, ["kind", "index", "p", "value"], rows)
    return EXIT_OK


def cmd_metrics(args):
    methods = _parse_list(args.methods, Method.parse, "method")
    ns = _parse_list(args.n, int, "n")
    alphas = _parse_list(args.alpha, float, "alpha")
    if any(n < 1 for n in ns) or any(not 0.0 < a < 0.5 for a in alphas):
        raise UsageError("n must be positive and alpha must lie in (0, 0.5)")
    rows, records = [], []
    for m in sorted(set(methods), key=lambda m: m.value):
        for n in sorted(set(ns)):
            for a in sorted(set(alphas), reverse=True):
                mm = method_metrics(m, n, a)
                rows.append([m.value, n, f"{a:.10g}", *(f"{v:.10g}" for v in (mm.t_u, mm.u0, mm.rmse, mm.ael))])
                records.append({"method": m.value, "n": n, "alpha": a, "t_u": mm.t_u,
                                "u0": mm.u0, "rmse": mm.rmse, "ael": mm.ael})
    _emit(args, _command_echo(args), {"metrics": records},
          ["method", "n", "alpha", "t_u", "u0", "rmse", "ael"], rows)
    return EXIT_OK


def cmd_verify(args):
    if args.golden_dir is not None and not Path(args.golden_dir).is_dir():
        raise UsageError(f"--golden-dir {args.golden_dir!r} is not a directory")
    report = run_verification(full=args.full, golden_dir=args.golden_dir)
    print(report.summary())
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n")
    return EXIT_OK if report.all_passed else EXIT_VERIFY_FAILED


def _add_level(parser):
    level = parser.add_mutually_exclusive_group()
    level.add_argument("--conf", type=float, default=0.95,
                       help="two-tail confidence 1 - 2*alpha (default 0.95)")
    level.add_argument("--alpha", type=float, help="one-tail error rate")


def build_parser():
    parser = argparse.ArgumentParser(prog="binomlcc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in Method]

    p = sub.add_parser("interval", help="one interval")
    p.add_argument("--method", default="olc", help=f"one of {methods}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    _add_level(p)
    p.add_argument("--tail", choices=["two-sided", "upper", "lower"], default="two-sided")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--round4", action="store_true", help="round to 4 decimals, half away from zero")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("table", help="lower/upper limits for every x over a range of n")
    p.add_argument("--method", default="olc")
    p.add_argument("--n-range", required=True, help="inclusive range A:B")
    _add_level(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--round4", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("coverage", help="sampled coverage curve with spikes and gap averages")
    p.add_argument("--method", default="olc")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True, help="one-tail error rate")
    p.add_argument("--tail", choices=["upper", "lower"], default="upper")
    p.add_argument("--samples", type=int, default=1001)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("metrics", help="T_u, u0, coverage RMSE and AEL per (method, n, alpha)")
    p.add_argument("--methods", default=",".join(methods), help="comma-separated")
    p.add_argument("--n", default="8,20,50", help="comma-separated")
    p.add_argument("--alpha", default="0.05,0.025,0.005", help="comma-separated one-tail alphas")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("verify", help="run the verification harness")
    p.add_argument("--full", action="store_true", help="extend sweeps to n <= 200")
    p.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    p.add_argument("--golden-dir", help="alternative directory of golden fixtures")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"binomlcc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketError, NonConvergenceError) as exc:
        print(f"binomlcc {args.command}: numeric failure: {exc}", file=sys.stderr)
        if args.command in ("interval", "table") and Method.parse(args.method) is Method.OLC:
            print("the OLC recursion has no solution for this alpha (one-tail alpha above about 0.27)",
                  file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
