"""Command-line interface.

    lapsnf snf GRAPHS [--divisors]
    lapsnf classify GRAPHS [--json | --csv]
    lapsnf trees GRAPHS
    lapsnf family NAME N [--g6 | --edges]
    lapsnf verify --n N [--max-n M] [--jobs K] [--json OUT] [--csv OUT] [--plot OUT]
    lapsnf convert GRAPHS --to g6|edges

GRAPHS is a file of graph6 lines (.g6) or an edge-list file (.el); ``-`` reads
stdin. Exit codes: 0 ok, 1 bad input, 2 usage, 3 verification violations.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, enumeration, formats, report
from .graph import FAMILY_NAMES, GraphError, family
from .matrix import DIVISOR_MAX_N, determinantal_divisors, smith_normal_form
from .graph import laplacian

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


def _input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="graph file (.g6 or .el), or - for stdin")
    p.add_argument("--format", choices=formats.FORMATS, help="override format detection")
    p.add_argument("--lenient", action="store_true", help="report and skip bad input instead of stopping")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lapsnf", description="Smith normal forms of graph Laplacians.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("snf", help="print invariant factors")
    _input_args(p)
    p.add_argument("--divisors", action="store_true", help="also print determinantal divisors (n <= 9)")

    p = sub.add_parser("classify", help="classify graphs by their third invariant factor")
    _input_args(p)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON array of reports")
    out.add_argument("--csv", action="store_true", help="CSV table of reports")

    p = sub.add_parser("trees", help="print spanning-tree counts")
    _input_args(p)

    p = sub.add_parser("family", help="emit a named graph family member")
    p.add_argument("name", choices=FAMILY_NAMES)
    p.add_argument("n", type=int)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--g6", dest="to", action="store_const", const="g6")
    fmt.add_argument("--edges", dest="to", action="store_const", const="edges")

    p = sub.add_parser("verify", help="check the s2/s3 claims over all connected graphs")
    p.add_argument("--n", type=int, required=True, help="order to verify (3..8)")
    p.add_argument("--max-n", type=int, help="verify every order from --n up to this")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${enumeration.JOBS_ENV} or 1)")
    p.add_argument("--allow-slow", action="store_true", help="permit n = 9")
    p.add_argument("--json", metavar="OUT", help="write the summary as JSON (- for stdout)")
    p.add_argument("--csv", metavar="OUT", help="write the s3 histogram as CSV")
    p.add_argument("--plot", metavar="OUT", help="render the s3 histogram figure")

    p = sub.add_parser("convert", help="convert between graph6 and edge lists")
    _input_args(p)
    p.add_argument("--to", choices=formats.FORMATS, required=True)
    return parser


def _records(args):
    return formats.read_path(args.input, args.format, args.lenient)


def _factors_line(values) -> str:
    return " ".join(str(x) for x in values)


def _emit(g, to: str) -> str:
    return formats.emit_graph6(g).decode() + "\n" if to == "g6" else formats.emit_edge_list(g)


def _per_graph(args, handle) -> int:
    """Run ``handle(record)`` over the input; graph-level errors stop the run unless lenient."""
    status = EXIT_OK
    for rec in _records(args):
        try:
            handle(rec)
        except GraphError as exc:
            print(f"error: {rec.source}: {exc}", file=sys.stderr)
            if not args.lenient:
                return EXIT_INPUT
    return status


def cmd_snf(args) -> int:
    def handle(rec):
        lap = laplacian(rec.graph)
        line = _factors_line(smith_normal_form(lap).factors)
        if args.divisors:
            if rec.graph.n > DIVISOR_MAX_N:
                raise GraphError(f"determinantal divisors need n <= {DIVISOR_MAX_N}")
            line += "\tdeltas: " + _factors_line(determinantal_divisors(lap).deltas)
        print(line)

    return _per_graph(args, handle)


def cmd_classify(args) -> int:
    rows = []

    def handle(rec):
        r = analysis.classify_s3(rec.graph, with_deltas=False)
        d = report.report_to_dict(r, rec.graph, rec.source)
        if args.json or args.csv:
            rows.append(d)
            return
        fam = r.matched_family or "-"
        check = "pass" if r.structural_check_passed else "FAIL"
        print(f"{rec.source}\tn={d['n']}\tfactors={' '.join(d['factors'])}\ts3={d['s3']}"
              f"\tclass={d['s3_class']}\tfamily={fam}\tcheck={check}")

    status = _per_graph(args, handle)
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
    elif args.csv:
        sys.stdout.write(report.reports_to_csv(rows))
    return status


def cmd_trees(args) -> int:
    return _per_graph(args, lambda rec: print(analysis.spanning_tree_count(rec.graph)))


def cmd_family(args) -> int:
    try:
        g = family(args.name, args.n)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(_emit(g, args.to or "g6"))
    return EXIT_OK


def cmd_convert(args) -> int:
    for rec in _records(args):
        sys.stdout.write(_emit(rec.graph, args.to))
    return EXIT_OK


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    top = args.max_n if args.max_n is not None else args.n
    limit = enumeration.SLOW_MAX_N if args.allow_slow else enumeration.MAX_N
    if not 3 <= args.n <= top <= limit:
        print(f"error: orders must satisfy 3 <= n <= max-n <= {limit}"
              + ("" if args.allow_slow else " (use --allow-slow for 9)"), file=sys.stderr)
        return EXIT_USAGE
    summaries = []
    for n in range(args.n, top + 1):
        s = enumeration.verify_all(n, jobs=args.jobs, allow_slow=args.allow_slow)
        summaries.append(s)
        if args.json != "-":
            print(report.summary_text(s), flush=True)
    if args.json:
        payload = [report.summary_to_dict(s) for s in summaries]
        _write(args.json, json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n")
    if args.csv:
        _write(args.csv, report.histogram_to_csv(summaries))
    if args.plot:
        from .plotting import plot_s3_histograms

        plot_s3_histograms([s for s in summaries if s.s3_histogram], args.plot)
    return EXIT_VIOLATION if any(s.violations for s in summaries) else EXIT_OK


COMMANDS = {
    "snf": cmd_snf,
    "classify": cmd_classify,
    "trees": cmd_trees,
    "family": cmd_family,
    "verify": cmd_verify,
    "convert": cmd_convert,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except formats.ParseError as exc:
        print(f"error: {exc.describe()}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
