"""Command-line front end.

Usage::

    smoothkit smooth      --fn SPEC [--domain U] --delta D [--samples N --out FILE]
    smoothkit verify      --fn SPEC [--domain U] --delta D [--grid N]
    smoothkit solve-delta --fn SPEC [--domain U] (--target-slope S | --target-error E)
                          [--search-hi X]
    smoothkit compare     --fn SPEC [--domain U] --delta D [--grid N] [--horizon H]
                          [--out FILE] [--force]
    smoothkit fixtures    [--json]

JSON goes to stdout; errors go to stderr as a JSON object.  Exit codes:
0 ok, 2 bad input, 3 numeric failure, 4 missing theorem license,
5 unreachable target, 6 fixture mismatch.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analysis as A
from . import fixtures as FX
from . import report as R
from . import smoothing as S
from .errors import (LicenseError, NumericError, SmoothkitError, SpecError,
                     UnreachableError)
from .funcmodel import eval_jet, parse_function_spec

EXIT_SPEC, EXIT_NUMERIC, EXIT_LICENSE, EXIT_UNREACHABLE, EXIT_FIXTURE = 2, 3, 4, 5, 6

SEARCH_HI_INF = 100.0


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _emit_error(kind, message, code):
    sys.stderr.write(R.dumps(R.with_schema({"error": kind, "message": message,
                                            "exit_code": code})) + "\n")
    return code


def _print_json(payload):
    sys.stdout.write(R.dumps(R.with_schema(payload)) + "\n")


def _function(args):
    return parse_function_spec(args.fn, args.domain)


def _sample_hi(f, delta):
    hi = 2.0 * delta
    if f.domain.bounded:
        hi = min(hi, f.domain.upper * (1.0 - 1e-9))
    return hi


def cmd_smooth(args):
    f = _function(args)
    s = S.make_smoothing(f, args.delta)
    if args.samples is not None:
        if args.out is None:
            raise SpecError("--samples needs --out for the CSV file")
        if args.samples < 2:
            raise SpecError("--samples must be >= 2")
        w = np.linspace(0.0, _sample_hi(f, s.delta), args.samples)
        cols = {"w": w, "f": eval_jet(f, w, strict=False).v0, "g": None}
        cols["g"] = np.where(w <= s.delta, s.cubic(w).v0, cols["f"])
        with open(args.out, "w", newline="\n") as fh:
            R.write_csv(fh, cols)
    _print_json({"delta": s.delta, "g1": s.g1, "g2": s.g2, "g3": s.g3})
    return 0


def cmd_verify(args):
    f = _function(args)
    report = S.check_conditions(f, args.delta, n=args.grid or S.DEFAULT_F3_GRID)
    _print_json(report.to_dict())
    return 0


def cmd_solve_delta(args):
    f = _function(args)
    search_hi = args.search_hi
    if search_hi is None:
        search_hi = (f.domain.upper * (1.0 - 1e-6) if f.domain.bounded else SEARCH_HI_INF)
    if args.target_slope is not None:
        delta = A.solve_delta_for_slope(f, args.target_slope, search_hi)
        achieved = A.g1_of_delta(f, delta)
        target, kind, tol = args.target_slope, "slope", 1e-10 * max(1.0, abs(args.target_slope))
    else:
        delta = A.solve_delta_for_error(f, args.target_error, search_hi)
        achieved = A.sup_error(f, delta)
        target, kind, tol = args.target_error, "error", 1e-8 * args.target_error
    _print_json({"delta": delta, "achieved": achieved, "target": target, "kind": kind,
                 "tolerance": tol, "search_hi": search_hi})
    return 0


def cmd_compare(args):
    f = _function(args)
    n = args.grid or A.DEFAULT_GRID
    rep = A.certify_domination(f, args.delta, n=n, horizon=args.horizon, force=args.force)
    if args.out is not None:
        cols = A.comparison_grid(f, args.delta, n=n, horizon=args.horizon, lam=rep.lambda_hat)
        with open(args.out, "w", newline="\n") as fh:
            R.write_csv(fh, cols)
    _print_json(rep.to_dict())
    return 0


def cmd_fixtures(args):
    results = FX.run_fixtures()
    failed = [r for r in results if not r.ok]
    if args.json:
        _print_json({"fixtures": [{"name": r.name, "quantity": r.quantity,
                                   "expected": r.expected, "computed": r.computed,
                                   "ok": r.ok} for r in results],
                     "passed": not failed})
    else:
        sys.stdout.write(FX.format_table(results))
    if failed:
        first = failed[0]
        return _emit_error("fixture", f"{first.name}: {first.quantity} expected {first.expected}, "
                           f"computed {first.computed}", EXIT_FIXTURE)
    return 0


def build_parser():
    p = _Parser(prog="smoothkit", description="Cubic delta-smoothing toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fn_args(sp):
        sp.add_argument("--fn", required=True,
                        help="builtin:name(params) or expr:<expression in w>")
        sp.add_argument("--domain", help="domain upper bound U or 'inf' (required for expr:)")

    sp = sub.add_parser("smooth", help="coefficients of the delta-smoothing")
    fn_args(sp)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--out")
    sp.set_defaults(run=cmd_smooth)

    sp = sub.add_parser("verify", help="condition report")
    fn_args(sp)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--grid", type=int)
    sp.set_defaults(run=cmd_verify)

    sp = sub.add_parser("solve-delta", help="delta for a target slope or error")
    fn_args(sp)
    target = sp.add_mutually_exclusive_group(required=True)
    target.add_argument("--target-slope", type=float)
    target.add_argument("--target-error", type=float)
    sp.add_argument("--search-hi", type=float)
    sp.set_defaults(run=cmd_solve_delta)

    sp = sub.add_parser("compare", help="delta-smoothing vs fair shift smoothing")
    fn_args(sp)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--grid", type=int)
    sp.add_argument("--horizon", type=float)
    sp.add_argument("--out")
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(run=cmd_compare)

    sp = sub.add_parser("fixtures", help="reproduce the published examples")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(run=cmd_fixtures)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except _ArgError as exc:
        return _emit_error("usage", str(exc), EXIT_SPEC)
    try:
        return args.run(args)
    except SpecError as exc:
        return _emit_error(exc.kind, str(exc), EXIT_SPEC)
    except LicenseError as exc:
        return _emit_error(exc.kind, str(exc), EXIT_LICENSE)
    except UnreachableError as exc:
        return _emit_error(exc.kind, str(exc), EXIT_UNREACHABLE)
    except (NumericError, SmoothkitError) as exc:
        return _emit_error(exc.kind, str(exc), EXIT_NUMERIC)
    except OSError as exc:
        return _emit_error("io", str(exc), EXIT_SPEC)


if __name__ == "__main__":
    sys.exit(main())
