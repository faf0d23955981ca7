"""
Command line of PLocalChi. The subcommands are:
    - chi: Euler characteristics of one group by every route
    - weights: class weighting or coweighting of one category
    - verify: identity and theorem residuals of one group
    - table: a family of groups, one row per group
    - scan: a conjecture scan over the catalog

Example of usage:
    plocalchi chi A4 --prime 2
    plocalchi chi G288 --prime 2 --kinds F --format json
    plocalchi table --family A --from 4 --to 7 --prime 2 --centric
    plocalchi scan --conjecture quillen --max-order 760 --prime 2

Exit codes: 0 success, 1 theorem violation, 2 input error, 3 resource cap,
4 conjecture counterexample.
"""
import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from . import config
from .eulercat import (chi_report, report_document, solve_coweighting,
                       solve_weighting, zeta_matrix)
from .exceptions import COUNTEREXAMPLE_EXIT_CODE, ChiError, InvariantError
from .groups.catalog import build, catalog_specs, parse_spec
from .psub import enumerate_classes
from .utils import format_rational, write_report
from .verify import scan, verify_group

logger = logging.getLogger(__name__)

CENTRIC_COLUMNS = ["O", "T", "L", "F", "Ftilde"]


class Timer:
    """Milliseconds per named phase, reported only with --timing."""

    def __init__(self) -> None:
        self.phases: dict[str, int] = {}
        self._start = time.perf_counter()

    def lap(self, phase: str) -> None:
        now = time.perf_counter()
        self.phases[phase] = round((now - self._start) * 1000)
        self._start = now


def emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def emit_json(document: dict, output: Path | None) -> None:
    emit(json.dumps(document, indent=2) + "\n", output)


def cmd_chi(args: argparse.Namespace) -> int:
    """Euler characteristics of one group."""
    timer = Timer()
    group = build(args.spec)
    timer.lap("build")
    report = chi_report(group, args.prime, args.scope, args.kinds)
    timer.lap("compute")
    for note in report.notes:
        logger.warning(note)
    if args.format == "json":
        emit_json(report_document(report, args.spec,
                                  timer.phases if args.timing else None),
                  args.output)
        return 0
    rows = [{"group": args.spec, "order": report.order,
             "prime": report.prime, "scope": report.scope, "kind": kind,
             "chi": format_rational(result.chi)}
            for kind, result in report.results.items()]
    write_report(pd.DataFrame(rows, columns=config.CSV_COLUMNS),
                 args.output, args.format)
    return 0


def cmd_weights(args: argparse.Namespace) -> int:
    """Class weighting or coweighting of one category."""
    group = build(args.spec)
    table = enumerate_classes(group, args.prime, args.scope)
    if not len(table):
        logger.warning(f"no {args.scope} {args.prime}-subgroups in "
                       f"{args.spec}")
        values = []
    else:
        zm = zeta_matrix(table, args.kind)
        solve = solve_weighting if args.side == "weighting" \
            else solve_coweighting
        values = solve(zm).values
    rows = [{"class": cls.describe(), "order": cls.order,
             "class_size": cls.class_size,
             args.side: format_rational(value)}
            for cls, value in zip(table, values)]
    columns = ["class", "order", "class_size", args.side]
    if args.format == "json":
        emit_json({"group": args.spec, "prime": args.prime,
                   "scope": args.scope, "kind": args.kind,
                   "side": args.side, "classes": rows}, args.output)
    else:
        write_report(pd.DataFrame(rows, columns=columns), args.output,
                     args.format)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    """Residuals of the identities and theorems; 1 on any violation."""
    group = build(args.spec)
    partner = build(args.product) if args.product else None
    report = verify_group(group, args.prime, partner)
    rows = [{"check": k, "type": "residual", "value": format_rational(v)}
            for k, v in report.residuals.items()]
    rows += [{"check": k, "type": "check", "value": str(v).lower()}
             for k, v in report.checks.items()]
    rows += [{"check": k, "type": "conjectural",
              "value": format_rational(v)}
             for k, v in report.conjectural.items()]
    if args.format == "json":
        emit_json({"group": args.spec, "order": report.order,
                   "prime": report.prime, "ok": report.ok,
                   "checks": rows, "notes": report.notes,
                   "witness": report.witness}, args.output)
    else:
        write_report(pd.DataFrame(rows, columns=["check", "type", "value"]),
                     args.output, args.format)
    return 0 if report.ok else InvariantError.exit_code


def cmd_table(args: argparse.Namespace) -> int:
    """One row of characteristics per member of a family."""
    template = config.TABLE_FAMILIES[args.family]
    scope = "centric" if args.centric else "nonidentity"
    kinds = CENTRIC_COLUMNS if args.centric else config.KINDS
    rows = []
    for n in tqdm(range(args.start, args.stop + 1), desc=args.family,
                  disable=not config.SHOW_PROGRESS):
        spec = template.format(n=n)
        report = chi_report(build(spec), args.prime, scope, kinds,
                            cross_check=False)
        row = {"group": spec, "order": report.order}
        row.update({k: format_rational(report.results[k].chi)
                    for k in kinds})
        rows.append(row)
    write_report(pd.DataFrame(rows, columns=["group", "order", *kinds]),
                 args.output, args.format)
    return 0


def _serializable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {k: _serializable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_serializable(v) for v in value]
    return value


def cmd_scan(args: argparse.Namespace) -> int:
    """Conjecture scan over the catalog; 4 when a counterexample shows."""
    specs = catalog_specs(args.max_order)
    logger.info(f"scanning {len(specs)} catalog groups of order <= "
                f"{args.max_order}")
    report = scan(args.conjecture, specs, args.prime)
    rows = [_serializable(row) for row in report.rows]
    if args.format == "json":
        def rational(value):
            return None if value is None else format_rational(value)
        emit_json({"header": report.header,
                   "conjecture": report.conjecture,
                   "prime": report.prime,
                   "max_order": args.max_order,
                   "chi_F_min": rational(report.chi_F_min),
                   "chi_F_max": rational(report.chi_F_max),
                   "rows": rows,
                   "counterexamples": [_serializable(r)
                                       for r in report.counterexamples],
                   "skipped": report.skipped}, args.output)
    else:
        sys.stderr.write(f"# {report.header}\n")
        columns = ["group", "order", "consistent"]
        write_report(pd.DataFrame([{c: r.get(c) for c in columns}
                                   for r in rows], columns=columns),
                     args.output, args.format)
    if report.counterexamples:
        return COUNTEREXAMPLE_EXIT_CODE
    return 0


def _spec(text: str) -> str:
    """argparse type: validates the group text, keeps it canonical."""
    try:
        return str(parse_spec(text))
    except ChiError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _report_options(parser: argparse.ArgumentParser, **defaults) -> None:
    parser.add_argument("--output", type=Path, default=defaults["output"],
                        help="Write the report to this file instead of "
                             "stdout.")
    parser.add_argument("--format", default=defaults["format"],
                        choices=config.OUTPUT_FORMATS,
                        help="Report format.")
    parser.add_argument("--timing", action="store_true",
                        default=defaults["timing"],
                        help="Add the phase timings to JSON documents.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plocalchi",
        description="Exact Euler characteristics of p-subgroup "
                    "categories.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--verbose", action="store_true",
                        help="Log at INFO level.")
    parser.add_argument("--debug", action="store_true",
                        help="Log at DEBUG level.")
    parser.add_argument("--quiet", action="store_true",
                        help="Hide the progress bars.")
    parser.add_argument("--log-file", type=Path, nargs="?", default=None,
                        const=Path(config.LOG_FILE),
                        help="Write the log to this file instead of stderr; "
                             f"{config.LOG_FILE} when no path is given.")
    _report_options(parser, output=None, format="table", timing=False)
    # the subcommands take the same options; SUPPRESS keeps a value given
    # before the subcommand
    report_options = argparse.ArgumentParser(add_help=False)
    _report_options(report_options, output=argparse.SUPPRESS,
                    format=argparse.SUPPRESS, timing=argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", required=True)

    chi = commands.add_parser(
        "chi", help="Euler characteristics of one group.",
        parents=[report_options],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    chi.add_argument("spec", type=_spec, help="Group, e.g. A5 or S3xC2.")
    chi.add_argument("--prime", type=int, required=True, help="The prime p.")
    chi.add_argument("--scope", default="nonidentity", choices=config.SCOPES,
                     help="Objects of the categories.")
    chi.add_argument("--kinds", nargs="+", default=config.KINDS,
                     choices=config.KINDS, help="Categories to compute.")
    chi.set_defaults(func=cmd_chi)

    weights = commands.add_parser(
        "weights", help="Class weighting or coweighting.",
        parents=[report_options],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    weights.add_argument("spec", type=_spec, help="Group.")
    weights.add_argument("--prime", type=int, required=True,
                         help="The prime p.")
    weights.add_argument("--kind", default="F", choices=config.KINDS,
                         help="Category.")
    weights.add_argument("--side", default="weighting",
                         choices=["weighting", "coweighting"],
                         help="Which vector to list.")
    weights.add_argument("--scope", default="nonidentity",
                         choices=config.SCOPES, help="Objects.")
    weights.set_defaults(func=cmd_weights)

    verify = commands.add_parser(
        "verify", help="Identity and theorem residuals.",
        parents=[report_options],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    verify.add_argument("spec", type=_spec, help="Group.")
    verify.add_argument("--prime", type=int, required=True,
                        help="The prime p.")
    verify.add_argument("--product", type=_spec, default=None,
                        help="Second factor for the product formulas.")
    verify.set_defaults(func=cmd_verify)

    table = commands.add_parser(
        "table", help="Characteristics of a family of groups.",
        parents=[report_options],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    table.add_argument("--family", default="A",
                       choices=sorted(config.TABLE_FAMILIES),
                       help="A for alternating, S for symmetric groups.")
    table.add_argument("--from", dest="start", type=int, default=4,
                       help="First degree.")
    table.add_argument("--to", dest="stop", type=int, default=7,
                       help="Last degree.")
    table.add_argument("--prime", type=int, default=2, help="The prime p.")
    table.add_argument("--centric", action="store_true",
                       help="Centric columns instead of the nonidentity "
                            "ones.")
    table.set_defaults(func=cmd_table)

    scan_parser = commands.add_parser(
        "scan", help="Conjecture scan over the catalog.",
        parents=[report_options],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    scan_parser.add_argument("--conjecture", required=True,
                             choices=["quillen", "fradical"],
                             help="Conjecture to scan.")
    scan_parser.add_argument("--max-order", type=int, default=760,
                             help="Largest group order.")
    scan_parser.add_argument("--prime", type=int, default=2,
                             help="The prime p.")
    scan_parser.set_defaults(func=cmd_scan)
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    if args.debug:
        level = logging.DEBUG
    logging.basicConfig(filename=args.log_file, level=level,
                        format=config.LOG_FORMAT, force=True)
    config.SHOW_PROGRESS = not args.quiet


def main(argv: list[str] | None = None) -> int:
    """
    Entry point of the `plocalchi` script.

    Returns
    -------
    int
        The exit code.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args)
    try:
        return args.func(args)
    except InvariantError as e:
        logger.error(f"{e}")
        sys.stderr.write(json.dumps(
            {k: format_rational(v) for k, v in e.residuals.items()},
            indent=2) + "\n")
        return e.exit_code
    except ChiError as e:
        logger.error(f"{e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
