"""Command-line entry point.

Exit status: 0 all checks pass, 1 a check failed, 2 usage error,
3 a numerical procedure did not converge.  On failure a JSON summary is
written to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import shlex
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import csvio
from .bounds import bound_report
from .catalog import catalog_list, get_function
from .chargroup import characters, parse_group
from .converge import DEFAULT_EPS, DEFAULT_N_LIST, run_all
from .dft import inverse, transform
from .errors import NonConvergenceError, OracleMismatchError
from .grid import MAX_N, make_grid, sample
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3
PROG = "nsfourier"


class UsageError(Exception):
    pass


def parse_n_list(text: str) -> list[int]:
    """``"4,8,16"``, ``"1..16"`` or mixtures like ``"1..4,8"``; sorted, deduplicated."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if mt := re.fullmatch(r"(\d+)\.\.(\d+)", part):
            a, b = int(mt[1]), int(mt[2])
            if a > b:
                raise UsageError(f"empty range {part!r}")
            out.update(range(a, b + 1))
        elif part.isdigit():
            out.add(int(part))
        else:
            raise UsageError(f"bad n specification {part!r}")
    ns = sorted(out)
    if not ns or ns[0] < 1:
        raise UsageError("grid parameters must be >= 1")
    if ns[-1] > MAX_N:
        raise UsageError(f"grid parameter {ns[-1]} exceeds maximum {MAX_N}")
    return ns


def parse_eps(text: str) -> list[float]:
    try:
        vals = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"bad epsilon list {text!r}") from None
    if any(not v > 0 or not math.isfinite(v) for v in vals):
        raise UsageError("epsilon values must be positive")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)

    grids = argparse.ArgumentParser(add_help=False)
    grids.add_argument("--n", help="grid parameter(s): 8, 4,8,16 or 1..16")
    grids.add_argument("--n-list", help="comma separated grid parameters")

    fn = argparse.ArgumentParser(add_help=False)
    fn.add_argument("--fn", help="catalog function name")

    method = argparse.ArgumentParser(add_help=False)
    method.add_argument("--method", choices=("naive", "fast"), default="naive")

    parser = argparse.ArgumentParser(prog=PROG, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("dft", parents=[common, grids, fn, method], help="spectrum of a sampled catalog function")
    sub.add_parser("invert", parents=[common, grids, fn, method], help="sample, transform and invert")
    p = sub.add_parser("chartable", parents=[common], help="character table of z<m>, g<2m> or g<m>,<n>")
    p.add_argument("--group", required=True)
    p = sub.add_parser("verify", parents=[common, grids], help="randomised verification suites")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    p = sub.add_parser("converge", parents=[common, grids, fn, method], help="convergence experiments")
    p.add_argument("--eps", help="tail epsilons, comma separated")
    p = sub.add_parser("bounds", parents=[common, grids, fn], help="bound report")
    p.add_argument("--eps", help="tail epsilons, comma separated")
    return parser


def _n_values(args) -> list[int] | None:
    if args.n and args.n_list:
        raise UsageError("--n and --n-list are mutually exclusive")
    text = args.n or args.n_list
    return parse_n_list(text) if text else None


def _single_n(args) -> int:
    ns = _n_values(args)
    if not ns or len(ns) != 1:
        raise UsageError(f"{args.command} needs exactly one grid parameter via --n")
    return ns[0]


def _function(args, required=True):
    if not args.fn:
        if required:
            raise UsageError(f"{args.command} needs --fn (one of {', '.join(f.name for f in catalog_list())})")
        return None
    try:
        return get_function(args.fn)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def recorded_command(argv: Sequence[str]) -> str:
    """argv without the output path, which does not affect the result."""
    kept, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--out":
            skip = True
            continue
        if a.startswith("--out="):
            continue
        kept.append(a)
    return " ".join([PROG] + [shlex.quote(a) for a in kept])


def _report_rows(rows):
    return [(r.function, r.n, r.metric, r.value, r.bound, r.passed) for r in rows]


def _failures(rows) -> list[dict]:
    return [
        {"function": r.function, "n": r.n, "metric": r.metric, "value": r.value, "bound": r.bound}
        for r in rows
        if not r.passed
    ]


def cmd_dft(args):
    f, n = _function(args), _single_n(args)
    grid = make_grid(n)
    ghat = transform(sample(f, grid), args.method)
    rows = [(Fraction(int(k), n), float(v.real), float(v.imag)) for k, v in zip(grid.indices, ghat.values)]
    return csvio.SPECTRUM_HEADER, rows, []


def cmd_invert(args):
    f, n = _function(args), _single_n(args)
    grid = make_grid(n)
    g = sample(f, grid)
    back = inverse(transform(g, args.method), args.method)
    rows = [(Fraction(int(j), n), float(v.real), float(v.imag)) for j, v in zip(grid.indices, back.values)]
    scale = max(float(np.max(np.abs(g.values))), 1.0)
    resid = float(np.max(np.abs(back.values - g.values)))
    fails = [] if resid <= 1e-11 * scale else [{"metric": "roundtrip", "n": n, "value": resid, "bound": 1e-11 * scale}]
    return csvio.SIGNAL_HEADER, rows, fails


def cmd_chartable(args):
    try:
        group = parse_group(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for chi in characters(group):
        vals = chi.values()
        for x, v in zip(group.labels, vals):
            rows.append((group.element(chi.label), group.element(int(x)), float(v.real), float(v.imag)))
    return csvio.CHARTABLE_HEADER, rows, []


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(s not in SUITES for s in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    rows = run_suites(names, _n_values(args), args.seed, args.threads)
    return csvio.REPORT_HEADER, _report_rows(rows), _failures(rows)


def cmd_converge(args):
    f = _function(args)
    ns = _n_values(args) or list(DEFAULT_N_LIST)
    eps = parse_eps(args.eps) if args.eps else list(DEFAULT_EPS)
    # probes must sit on every grid and within min(n)/2
    limit = Fraction(min(ns), 2)
    probes = [p for p in (Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2))
              if abs(p) <= limit and all((p * n).denominator == 1 for n in ns)]
    rows = run_all(f, ns, eps, probes, probes, method=args.method, threads=args.threads)
    return csvio.REPORT_HEADER, _report_rows(rows), _failures(rows)


def cmd_bounds(args):
    f = _function(args, required=False)
    fns = [f] if f else [g for g in catalog_list() if g.name != "zero"]
    ns = _n_values(args) or [2, 4, 8, 16, 32, 64, 128]
    eps = parse_eps(args.eps) if args.eps else list(DEFAULT_EPS)
    rows = [r for g in fns for r in bound_report(g, ns, eps)]
    out = [(r.function, r.n, r.quantity, r.measured, r.bound, r.passed) for r in rows]
    fails = [{"function": r.function, "n": r.n, "quantity": r.quantity, "measured": r.measured, "bound": r.bound}
             for r in rows if not r.passed]
    return csvio.BOUNDS_HEADER, out, fails


COMMANDS = {
    "dft": cmd_dft,
    "invert": cmd_invert,
    "chartable": cmd_chartable,
    "verify": cmd_verify,
    "converge": cmd_converge,
    "bounds": cmd_bounds,
}


def _fail_summary(status: str, **payload) -> None:
    sys.stderr.write(json.dumps({"status": status, **payload}, default=str) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        csvio.check_writable(args.out)
        header, rows, failures = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _fail_summary("usage", error=str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _fail_summary("usage", error=str(exc))
        return EXIT_USAGE
    except NonConvergenceError as exc:
        _fail_summary("nonconvergence", error=str(exc), achieved=exc.achieved)
        return EXIT_NONCONVERGENCE
    except OracleMismatchError as exc:
        _fail_summary("fail", error=str(exc))
        return EXIT_FAIL
    csvio.write(args.out, csvio.render(recorded_command(argv), header, rows))
    if failures:
        _fail_summary("fail", failures=failures)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
