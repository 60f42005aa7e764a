"""Command line: validate spec files, print differentials, check IM conditions, run the battery."""

from __future__ import annotations

import argparse
import json
import sys

from .config import CapError, Limits, SuiteConfig
from .defcomplex import differential
from .report import all_passed, format_records, format_table, passed, failed
from .suite import check_im_target, fixture_names, load_fixture, resolve_path, run_suite, validate_document
from .symexpr import ParseError

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _emit(reports, fmt: str, out) -> int:
    text = format_records(reports) if fmt == "records" else format_table(reports)
    if text:
        print(text, file=out)
    if fmt == "table":
        nfail = sum(not r.passed for r in reports)
        print(f"{len(reports)} checks, {nfail} failed", file=out)
    return EXIT_OK if all_passed(reports) else EXIT_FAIL


def cmd_validate(args, out) -> int:
    doc = load_fixture(args.file)
    return _emit(validate_document(doc), args.format, out)


def cmd_diff(args, out) -> int:
    doc = load_fixture(args.file)
    c = doc.get(args.cochain, ("cochain",))
    limits = Limits(args.degree_cap, args.poly_cap)
    dc = differential(c, limits)
    A = dc.parent
    if args.format == "records":
        for key in sorted(dc.values):
            print(json.dumps({"table": "value", "args": [A.frame[i] for i in key],
                              "expression": A.format_section(dc.values[key])}, sort_keys=True), file=out)
        for key in sorted(dc.symbols):
            print(json.dumps({"table": "symbol", "args": [A.frame[i] for i in key],
                              "expression": [str(p) for p in dc.symbols[key].components]},
                             sort_keys=True), file=out)
    else:
        print(f"d({args.cochain}), degree {dc.degree}", file=out)
        print(dc.describe() or "zero", file=out)
    if not args.check_d2:
        return EXIT_OK
    ddc = differential(dc, limits)
    report = passed("d-squared") if ddc.is_zero() else failed("d-squared", ddc.describe().splitlines()[0])
    if args.format == "records":
        print(format_records([report]), file=out)
    else:
        print(f"d²=0: {report.status}" + (f"  [{report.witness}]" if report.witness else ""), file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check_im(args, out) -> int:
    doc = load_fixture(args.file)
    return _emit(check_im_target(doc, args.target), args.format, out)


def cmd_suite(args, out) -> int:
    fixtures = tuple(args.fixture or ())
    for name in fixtures:
        resolve_path(name)
    config = SuiteConfig(seed=args.seed, fixtures=fixtures, limits=Limits(args.degree_cap, args.poly_cap))
    return _emit(run_suite(config), args.format, out)


def cmd_fixtures(args, out) -> int:
    for name in fixture_names(include_broken=True):
        print(name, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--degree-cap", type=int, default=4, help="largest cochain degree (default 4)")
    common.add_argument("--poly-cap", type=int, default=16, help="largest polynomial degree (default 16)")

    parser = argparse.ArgumentParser(prog="vbderiv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="structural checks on every block")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("diff", parents=[common], help="print the differential of a cochain")
    p.add_argument("file")
    p.add_argument("cochain")
    p.add_argument("--check-d2", action="store_true", help="also check that d applied twice vanishes")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("check-im", parents=[common], help="IM conditions for a triple or an IM section")
    p.add_argument("file")
    p.add_argument("target")
    p.set_defaults(func=cmd_check_im)

    p = sub.add_parser("suite", parents=[common], help="seeded property battery over the fixtures")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fixture", action="append", help="restrict to this fixture (repeatable)")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("fixtures", help="list the shipped fixtures")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        where = getattr(args, "file", "")
        print(f"error: {where}: {exc}", file=sys.stderr)
    except FileNotFoundError as exc:
        print(f"error: no such file or fixture: {exc}", file=sys.stderr)
    except (CapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
