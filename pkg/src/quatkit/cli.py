"""Command-line front end.

Exit codes: 0 success (or Regular), 1 NotRegular, 2 usage or evaluation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import structure
from .errors import ExprError, QuatkitError
from .expr import as_function, evaluate, is_constant, parse, point
from .fueter import (
    DEFAULT_H,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    RegularityConfig,
    Side,
    is_regular,
)
from .quaternion import UNIT_NAMES, Quaternion, signed_unit_name, unit_table
from .report import Method
from .scalar import Mode
from .slices import SliceConfig, is_slice_regular, series_eval

EXIT_OK = 0
EXIT_NOT_REGULAR = 1
EXIT_ERROR = 2


def _emit(obj: dict, text: str, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _parse_point(text: str | None, mode: Mode) -> Quaternion:
    if text is None:
        return Quaternion.zero(mode)
    parts = [p.strip() for p in text.split(",")]
    try:
        return point(parts, mode)
    except (ValueError, ZeroDivisionError) as exc:
        raise QuatkitError(f"bad point {text!r}: expected w,x,y,z ({exc})") from None


def cmd_eval(args, out) -> int:
    mode = Mode(args.mode)
    e = parse(args.expr, mode)
    q = _parse_point(args.at, mode)
    value = evaluate(e, q)
    obj = {
        "expr": args.expr,
        "mode": mode.value,
        "point": q.to_json(),
        "value": value.to_json(),
        "rendered": str(value),
    }
    _emit(obj, str(value), args.format, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    table = unit_table()
    cells = [[signed_unit_name(v) for v in row] for row in table]
    width = 4
    lines = [" " * width + "".join(f"{n:>{width}}" for n in UNIT_NAMES)]
    for name, row in zip(UNIT_NAMES, cells):
        lines.append(f"{name:>{width}}" + "".join(f"{c:>{width}}" for c in row))
    _emit({"basis": list(UNIT_NAMES), "table": cells}, "\n".join(lines), args.format, out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.mode == "fueter":
        e = parse(args.expr, Mode.EXACT if args.method == "symbolic" else Mode.FLOAT)
        config = RegularityConfig(h=args.h, tol=args.tol, samples=args.samples, seed=args.seed)
        report = is_regular(e, Side(args.side), Method(args.method.capitalize()), config)
    else:
        e = parse(args.expr, Mode.FLOAT)
        config = SliceConfig(
            num_slices=args.slices, num_points=args.points, h=args.h, tol=args.tol, seed=args.seed
        )
        report = is_slice_regular(e, config)
    _emit(report.to_json(), report.to_text(), args.format, out)
    return EXIT_OK if report.regular else EXIT_NOT_REGULAR


_NAMED_TABLES = {
    "quaternions": structure.quaternion_table,
    "ji-plus-k": structure.ji_plus_k_table,
    "bicomplex": structure.bicomplex_table,
}


def cmd_structure(args, out) -> int:
    sel = args.selector
    reports: list[structure.ContradictionReport] = []
    checks: list[structure.DivisionCheckResult] = []
    tables: list[structure.StructureTable] = []
    if sel == "triplets":
        reports = structure.triplet_case_analysis()
    elif sel == "general":
        reports = [structure.triplet_general_obstruction()]
    elif sel == "ji-plus-k":
        reports = [structure.ji_equals_k_zero_divisors()]
        checks = [structure.division_check(structure.ji_plus_k_table(), args.samples, args.seed)]
    elif sel == "ji-minus-k":
        reports = [structure.ji_equals_minus_k()]
    elif sel == "bicomplex":
        tables = [structure.bicomplex_table()]
        checks = [structure.division_check(tables[0], args.samples, args.seed)]
    elif sel == "certify-quaternions":
        checks = [structure.division_check(structure.quaternion_table(), args.samples, args.seed)]
    elif sel == "certify":
        if not args.table_file:
            raise QuatkitError("certify needs --table-file")
        with open(args.table_file, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise QuatkitError(f"{args.table_file}: {exc}") from None
        table = structure.StructureTable.from_json(obj)
        checks = [structure.division_check(table, args.samples, args.seed)]
    elif sel == "export":
        tables = [_NAMED_TABLES[args.name]()]
    else:  # argparse restricts choices
        raise QuatkitError(f"unknown selector {sel!r}")

    for r in reports:
        if not structure.replay(r):
            raise AssertionError(f"derivation for {r.case_label} failed to replay")

    obj = {
        "selector": sel,
        "reports": [r.to_json() for r in reports],
        "division_checks": [c.to_json() for c in checks],
    }
    if tables:
        obj["tables"] = [t.to_json() for t in tables]
    lines = [r.to_text() for r in reports]
    if len(reports) > 1:
        contradictions = sum(r.verdict is not structure.ReportVerdict.CONSISTENT for r in reports)
        lines.append(f"{len(reports)} cases, {contradictions} contradictions")
    for t in tables:
        lines.append(json.dumps(t.to_json(), sort_keys=True))
        if sel == "bicomplex":
            lines.append(f"commutative: {t.is_commutative()}")
    lines.extend(c.to_text() for c in checks)
    _emit(obj, "\n".join(lines), args.format, out)
    return EXIT_OK


def _series_coeffs(args) -> list[Quaternion]:
    n = args.terms + 64 + 1
    if args.preset == "exp":
        coeffs, c = [], 1.0
        for k in range(n):  # 1/k! by recurrence; underflows to 0.0 instead of overflowing
            c = c / k if k else 1.0
            coeffs.append(Quaternion.real(c))
        return coeffs
    if args.preset == "geometric":
        return [Quaternion.real(1.0) for _ in range(n)]
    if not args.coeffs:
        raise QuatkitError("give ';'-separated coefficients or --preset")
    coeffs = []
    for text in args.coeffs.split(";"):
        e = parse(text, Mode.FLOAT)
        if not is_constant(e):
            raise QuatkitError(f"coefficient {text!r} must not mention q")
        coeffs.append(evaluate(e, Quaternion.zero(Mode.FLOAT)))
    return coeffs


def cmd_series(args, out) -> int:
    coeffs = _series_coeffs(args)
    q = _parse_point(args.at, Mode.FLOAT)
    terms = min(args.terms, len(coeffs) - 1)
    res = series_eval(coeffs, q, terms, args.tail_tol)
    finite = lambda v: v if math.isfinite(v) else None  # noqa: E731
    obj = {
        "point": q.to_json(),
        "terms": terms,
        "value": res.value.to_json(),
        "rendered": str(res.value),
        "truncation_bound": finite(res.truncation_bound),
        "divergent": res.divergent,
        "radius_estimate": finite(res.radius_estimate),
        "within_tolerance": res.within_tolerance,
    }
    if res.divergent:
        text = f"{res.value}\ndivergent: |q| >= radius estimate {res.radius_estimate:g}"
    else:
        text = f"{res.value}\ntruncation bound: {res.truncation_bound:.3e}"
    _emit(obj, text, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatkit", description="Quaternion algebra and regularity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate an expression at a point")
    p.add_argument("expr")
    p.add_argument("--at", help="point w,x,y,z (default 0)")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    fmt(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="print the unit multiplication table")
    fmt(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check", help="test Fueter or slice regularity")
    p.add_argument("expr")
    p.add_argument("--mode", choices=("fueter", "slice"), default="fueter")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--method", choices=("symbolic", "numeric"), default="symbolic")
    p.add_argument("--h", type=float, default=DEFAULT_H)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="numeric Fueter sample points")
    p.add_argument("--slices", type=int, default=8, help="slice mode: unit imaginaries")
    p.add_argument("--points", type=int, default=10, help="slice mode: points per slice")
    fmt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("structure", help="reports on candidate multiplication tables")
    p.add_argument(
        "selector",
        choices=("triplets", "general", "ji-plus-k", "ji-minus-k", "bicomplex", "certify-quaternions",
                 "certify", "export"),
    )
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random elements for division checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--table-file", help="StructureTable JSON for 'certify'")
    p.add_argument("--name", choices=sorted(_NAMED_TABLES), default="quaternions", help="table for 'export'")
    fmt(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("series", help="evaluate a truncated power series sum a_n q^n")
    p.add_argument("coeffs", nargs="?", help="';'-separated constant coefficients a_0;a_1;...")
    p.add_argument("--preset", choices=("exp", "geometric"))
    p.add_argument("--at", help="point w,x,y,z (default 0)")
    p.add_argument("--terms", type=int, default=20, help="truncation order N")
    p.add_argument("--tail-tol", type=float, default=1e-12)
    fmt(p)
    p.set_defaults(func=cmd_series)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ExprError as exc:
        err.write(f"error: {exc.describe()}\n")
    except (QuatkitError, ValueError, ZeroDivisionError, OSError) as exc:
        err.write(f"error: {exc}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
