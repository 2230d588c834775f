"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (a residual or a transformation
precondition fails), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra.numeric import DEFAULT_DPS
from .algebra.textform import ParseError, parse_expr, parse_tower
from .algebra.tower import TowerError
from .pvi import BudgetExceeded, DegenerateSolution, ParamSolution, ThetaTuple, verify
from .transforms.errors import TransformError
from .transforms.pipeline import apply_pipeline, load_pipeline
from .transforms.reach import schlesinger_reachable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PRECISION_ENV = "PVIFOLD_PRECISION"


class UsageError(Exception):
    pass


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_DPS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV}={raw!r} is not an integer") from None
    if value < 15:
        raise UsageError(f"{PRECISION_ENV} must be at least 15, got {value}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _emit_reports(reports, fmt: str, out) -> int:
    passed = sum(r.passed for r in reports)
    for r in reports:
        print(r.to_json() if fmt == "json-lines" else r.to_text(), file=out)
    if fmt == "json-lines":
        print(json.dumps({"summary": {"passed": passed, "total": len(reports)}}, sort_keys=True), file=out)
    else:
        print(f"{passed}/{len(reports)} passed", file=out)
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def _read_fixture(path: str):
    from .catalog.entries import entry_from_text

    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read fixture {path!r}: {exc}") from None
    try:
        return entry_from_text(text)
    except (ParseError, TowerError, ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed fixture {path!r}: {exc}") from None


def _entry(entry_id: str):
    from .catalog.entries import CatalogError, load_entry

    try:
        return load_entry(entry_id)
    except CatalogError as exc:
        raise UsageError(exc.args[0]) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    from .catalog.verification import type39_chain, verify_catalog, verify_entry

    dps = args.precision or _default_precision()
    reports = []
    if args.all or args.entry:
        ids = None if args.all else args.entry
        if ids:
            for eid in ids:
                _entry(eid)
        reports += verify_catalog(ids, args.mode, args.samples, dps, jobs=args.jobs)
    for path in args.fixture or []:
        reports.append(verify_entry(_read_fixture(path), args.mode, args.samples, dps))
    if args.chain:
        reports += [verify_entry(sol, args.mode, args.samples, dps) for sol in type39_chain().values()]
    if not reports:
        raise UsageError("nothing to verify: give --entry, --all, --fixture or --chain")
    return _emit_reports(reports, args.format, sys.stdout)


def cmd_transform(args) -> int:
    from .catalog.entries import CatalogEntry, entry_to_text

    if bool(args.entry) == bool(args.fixture):
        raise UsageError("give exactly one of --entry or --fixture")
    entry = _entry(args.entry) if args.entry else _read_fixture(args.fixture)
    steps = load_pipeline(args.pipeline)
    pipeline_text = ",".join(str(s) for s in steps)
    try:
        out = apply_pipeline(entry.solution, steps)
    except TransformError as exc:
        print(f"FAIL {entry.id} --[{pipeline_text}]: {exc}", file=sys.stderr)
        return EXIT_FAIL
    label = out.label or f"{entry.id}-transformed"
    print(f"source:   {entry.id} theta={entry.theta}")
    print(f"pipeline: {pipeline_text}")
    print(f"theta:    {out.theta}")
    print(f"curve:    {out.tower}")
    report = verify(ParamSolution(out.t, out.y, out.theta, label), args.mode, args.samples,
                    args.precision or _default_precision())
    print(report.to_json() if args.format == "json-lines" else report.to_text())
    if args.out:
        result = CatalogEntry(label, f"{entry.id} after {pipeline_text}", out.theta, out)
        Path(args.out).write_text(entry_to_text(result), encoding="utf-8")
        print(f"wrote {args.out}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_residual(args) -> int:
    from .catalog.sources import explicit
    from .catalog.verification import verify_entry

    dps = args.precision or _default_precision()
    reports = [verify_entry(_read_fixture(p), args.mode, args.samples, dps) for p in args.fixtures]
    if args.t or args.y or args.theta:
        if not (args.t and args.y and args.theta):
            raise UsageError("inline solutions need --theta, --t and --y")
        tower = parse_tower(args.tower or [], args.base)
        try:
            t = parse_expr(explicit(args.t), tower)
            y = parse_expr(explicit(args.y), tower)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        theta = ThetaTuple.of(args.theta.replace(",", " ").split())
        reports.append(verify(ParamSolution(t, y, theta, "inline"), args.mode, args.samples, dps))
    if not reports:
        raise UsageError("give fixture files or an inline solution")
    return _emit_reports(reports, args.format, sys.stdout)


def cmd_catalog(args) -> int:
    from .catalog.entries import catalog_ids, entry_to_text

    action = args.action
    if action == "list":
        for eid in catalog_ids():
            e = _entry(eid)
            print(f"{eid:<18} theta={str(e.theta):<22} degree={e.degree} genus={e.genus}  {e.descriptor}")
        return EXIT_OK
    if action == "show":
        if not args.id:
            raise UsageError("catalog show needs an entry id")
        sys.stdout.write(entry_to_text(_entry(args.id)))
        return EXIT_OK
    if action == "branching":
        from .catalog.branching import branching

        if not args.id:
            raise UsageError("catalog branching needs an entry id")
        entry = _entry(args.id)
        pattern = branching(entry.solution.t, args.id, dps=args.precision or 40)
        print(pattern.to_text())
        ok = pattern.sums_ok() and (entry.degree is None or pattern.degree == entry.degree)
        print(f"degree {pattern.degree}, claimed {entry.degree}: {'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_FAIL
    if action == "cascades":
        from .catalog.cascade import check_all_cascades

        results = check_all_cascades()
        for r in results:
            print(r.to_text())
        return EXIT_OK if all(r.matched for r in results) else EXIT_FAIL
    raise UsageError(f"unknown catalog action {action!r}")


def cmd_reachable(args) -> int:
    print(schlesinger_reachable(args.k0, args.k1, args.kt, args.kinf))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_check_options(p, formats=True):
    p.add_argument("--precision", type=_positive, default=None,
                   help=f"working digits for numeric checks (default ${PRECISION_ENV} or {DEFAULT_DPS})")
    p.add_argument("--samples", type=_positive, default=20, help="sample points for numeric checks")
    p.add_argument("--mode", choices=("auto", "exact", "numeric"), default="auto")
    if formats:
        p.add_argument("--format", choices=("text", "json-lines"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvifold", description="Exact checks of Painleve VI solutions "
                                                                 "and their symmetry transformations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="residual test for catalog entries")
    p.add_argument("--entry", action="append", help="catalog id (repeatable)")
    p.add_argument("--all", action="store_true", help="every catalog entry")
    p.add_argument("--fixture", action="append", help="fixture file (repeatable)")
    p.add_argument("--chain", action="store_true", help="also the solutions derived from type 39")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes; output order is fixed")
    _add_check_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="run a transformation pipeline on an entry")
    p.add_argument("--entry", help="catalog id")
    p.add_argument("--fixture", help="fixture file instead of a catalog id")
    p.add_argument("--pipeline", required=True, help="pipeline file or inline spec, e.g. okamoto[-1/3,-1/3,-4/5,4/5]")
    p.add_argument("--out", help="write the result as a fixture file")
    _add_check_options(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("residual", help="residual test for user-supplied solutions")
    p.add_argument("fixtures", nargs="*", help="fixture files")
    p.add_argument("--theta", help="four exact rationals, e.g. '1/2 1/2 1/2 1/2'")
    p.add_argument("--base", default="s", help="name of the curve parameter")
    p.add_argument("--tower", action="append", help="relation 'u^2=...' (repeatable, in order)")
    p.add_argument("--t", help="t as an expression in the base and generators")
    p.add_argument("--y", help="y as an expression in the base and generators")
    _add_check_options(p)
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("catalog", help="list, show, branching, cascades")
    p.add_argument("action", nargs="?", default="list", choices=("list", "show", "branching", "cascades"))
    p.add_argument("id", nargs="?")
    p.add_argument("--precision", type=_positive, default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("reachable", help="classify an integer shift of theta")
    for name in ("k0", "k1", "kt", "kinf"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_reachable)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TransformError, DegenerateSolution, BudgetExceeded) as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (TowerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
