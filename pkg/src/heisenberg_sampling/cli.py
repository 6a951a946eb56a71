"""Command-line driver.

Exit codes: 0 all contracts met, 1 contract violation, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import acceptance
from .gabor import WHSystemSpec, frame_bounds, tightness_ratio, window_norm_check
from .grid import AlignmentError, GridSpec, indicator, random_smooth_signals
from .plancherel import (
    MultiplicityFunction,
    multiplicity_condition_check,
    simplified_condition_check,
    unbounded_witness,
)
from .sampling import sinc_by_inversion, sinc_closed_form, sinc_evaluate, sinc_table, sinc_table_csv
from .group import GroupElement

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
SCHEMA = "1"


class UsageError(Exception):
    pass


def _emit(args, payload: dict, csv_rows=None, csv_text=None) -> None:
    """Write JSON (default) or CSV to ``--out`` or stdout."""
    if args.format == "csv":
        if csv_text is None:
            buf = io.StringIO()
            rows = csv_rows if csv_rows is not None else [payload]
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            csv_text = buf.getvalue()
        text = csv_text
    else:
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2, default=_json_default) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# -- verify-gabor ------------------------------------------------------------


def cmd_verify_gabor(args) -> int:
    h, d = args.h, args.d
    if h <= 0 or d < 1 or args.n < 1:
        raise UsageError("need h > 0, d >= 1 and n >= 1")
    density = h * d
    result = {"command": "verify-gabor", "h": h, "d": d, "n": args.n, "density": density}
    if density > 1 + 1e-12:
        result.update(passed=False, reason=f"density h*d = {density} exceeds 1; no tight frame exists")
        _emit(args, result)
        return EXIT_VIOLATION
    delta = args.delta
    spec = GridSpec(-args.n * delta / 2, delta, args.n)
    if spec.x0 > 0 or spec.x0 + spec.length < h:
        raise UsageError("grid does not contain the window [0, h)")
    window = indicator(spec, 0.0, h, math.sqrt(d))
    try:
        system = WHSystemSpec.covering(h, d, window)
    except (AlignmentError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    tests = random_smooth_signals(spec, args.tests, np.random.default_rng(args.seed))
    ratios = tightness_ratio(system, tests)
    bounds = frame_bounds(system)
    norm_dev = window_norm_check(h, d, window)
    checks = {
        "tightness": ratios.is_tight(1.0, args.tol),
        "frame_bounds": bounds.is_tight(1.0, 1e-6),
        "window_norm": norm_dev <= 1e-10,
    }
    result.update(
        passed=all(checks.values()),
        checks=checks,
        tightness=ratios.as_dict(),
        frame_bounds={"lower": bounds.lower_bound_estimate, "upper": bounds.upper_bound_estimate},
        window_norm_deviation=norm_dev,
    )
    _emit(args, result, csv_rows=[{
        "h": h, "d": d, "n": args.n, "ratio_min": ratios.tight_ratio_min, "ratio_max": ratios.tight_ratio_max,
        "bound_lower": bounds.lower_bound_estimate, "bound_upper": bounds.upper_bound_estimate,
        "window_norm_deviation": norm_dev, "passed": result["passed"],
    }])
    return EXIT_OK if result["passed"] else EXIT_VIOLATION


# -- sinc ----------------------------------------------------------------------


def cmd_sinc(args) -> int:
    if args.point is not None:
        ev = sinc_evaluate(GroupElement(*args.point))
        rows = [{"p": ev.point.p, "q": ev.point.q, "t": ev.point.t, "value": ev.value, "branch": ev.branch}]
    else:
        if args.grid < 1:
            raise UsageError("--grid must be positive")
        rows = sinc_table(np.linspace(-1, 1, args.grid), np.linspace(-2, 2, args.grid), np.linspace(-2, 2, args.grid))
    payload = {"command": "sinc", "rows": rows}
    code = EXIT_OK
    if args.check:
        p = np.array([r["p"] for r in rows])
        q = np.array([r["q"] for r in rows])
        t = np.array([r["t"] for r in rows])
        oracle = sinc_by_inversion(p, q, t)
        closed = sinc_closed_form(p, q, t)
        gap = float(max(np.abs(closed - oracle.analytic_inner).max(), np.abs(closed - oracle.numeric_inner).max()))
        payload["check"] = {"max_oracle_gap": gap, "tolerance": args.tol, "passed": gap <= args.tol}
        print(f"max oracle gap {gap:.3e}", file=sys.stderr)
        if gap > args.tol:
            code = EXIT_VIOLATION
    _emit(args, payload, csv_text=sinc_table_csv(rows))
    return code


# -- density -------------------------------------------------------------------


def _load_multiplicity(args) -> MultiplicityFunction:
    sources = [args.m is not None, args.m_json is not None, args.unbounded_witness]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --m, --m-json, --unbounded-witness")
    if args.unbounded_witness:
        return unbounded_witness()
    if args.m is not None:
        text = args.m
    else:
        with open(args.m_json, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict) or "intervals" not in doc:
            raise UsageError('multiplicity JSON must be {"intervals": [[a, b, m], ...]}')
        try:
            return MultiplicityFunction.from_intervals(doc["intervals"])
        except (TypeError, ValueError) as exc:
            raise UsageError(f"malformed multiplicity JSON: {exc}") from exc
    try:
        return MultiplicityFunction.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_density(args) -> int:
    m = _load_multiplicity(args)
    try:
        if args.simplified:
            verdict = simplified_condition_check(m, args.d, args.r, args.step)
        else:
            verdict = multiplicity_condition_check(m, args.d, args.r, args.step)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"command": "density", "multiplicity": repr(m), "d": args.d, "r": args.r,
               "simplified": args.simplified, **verdict.as_dict()}
    _emit(args, payload)
    return EXIT_OK if verdict.satisfied else EXIT_VIOLATION


# -- report ----------------------------------------------------------------------


def _parse_tolerances(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"tolerance override {item!r} must look like key=value")
        try:
            out[key.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"tolerance {key!r} needs a number, got {value!r}") from exc
    unknown = set(out) - set(acceptance.DEFAULT_TOLERANCES)
    if unknown:
        raise UsageError(f"unknown tolerance keys {sorted(unknown)}; known: {sorted(acceptance.DEFAULT_TOLERANCES)}")
    return out


def cmd_report(args) -> int:
    overrides = _parse_tolerances(args.tol)
    only = args.only
    if only and any(not 1 <= i <= len(acceptance.CRITERIA) for i in only):
        raise UsageError(f"--only takes criterion numbers 1..{len(acceptance.CRITERIA)}")
    results = acceptance.run_all(seed=args.seed, overrides=overrides, only=only)
    for r in results:
        print(r.line(), file=sys.stderr)
    passed = all(r.passed for r in results)
    payload = {
        "command": "report",
        "seed": args.seed,
        "tolerances": acceptance.merged_tolerances(overrides),
        "passed": passed,
        "criteria": [r.as_dict() for r in results],
    }
    rows = [{"criterion": r.number, "name": r.name, "passed": r.passed, "seconds": round(r.seconds, 4)} for r in results]
    _emit(args, payload, csv_rows=rows)
    return EXIT_OK if passed else EXIT_VIOLATION


# -- parser ------------------------------------------------------------------------


def _common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for random test signals (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heisenberg-sampling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("verify-gabor", help="tightness, frame bounds and norm identity of G(h, d, sqrt(d) chi_[0,h))")
    g.add_argument("--h", type=float, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int, default=512, help="grid size")
    g.add_argument("--delta", type=float, default=1 / 64, help="grid step")
    g.add_argument("--tests", type=int, default=10, help="number of random test signals")
    g.add_argument("--tol", type=float, default=1e-9)
    _common(g)
    g.set_defaults(func=cmd_verify_gabor)

    s = sub.add_parser("sinc", help="tabulate the sinc-type function")
    s.add_argument("--point", type=float, nargs=3, metavar=("P", "Q", "T"))
    s.add_argument("--grid", type=int, default=5, help="points per axis over [-1,1]x[-2,2]x[-2,2]")
    s.add_argument("--check", action="store_true", help="compare with both inversion oracles")
    s.add_argument("--tol", type=float, default=1e-6)
    _common(s)
    s.set_defaults(func=cmd_sinc)

    d = sub.add_parser("density", help="multiplicity density criterion")
    d.add_argument("--m", help='inline multiplicity, e.g. "[-0.5,0.5]:1;[0.5,1]:2"')
    d.add_argument("--m-json", metavar="PATH", help='JSON file {"intervals": [[a, b, m], ...]}')
    d.add_argument("--unbounded-witness", action="store_true", help="use m(h) = floor(|h|^-3/2)")
    d.add_argument("--d", type=int, required=True)
    d.add_argument("--r", type=float, default=1.0)
    d.add_argument("--step", type=float, default=1e-3, help="midpoint grid step in h")
    d.add_argument("--simplified", action="store_true", help="use m(h)|h| <= 1/(dr) (needs d > 1)")
    _common(d)
    d.set_defaults(func=cmd_density)

    r = sub.add_parser("report", help="run the acceptance suite")
    r.add_argument("--tol", action="append", metavar="KEY=VALUE", help="override a tolerance (repeatable)")
    r.add_argument("--only", type=int, nargs="+", metavar="N", help="run only these criteria")
    _common(r)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog} {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
