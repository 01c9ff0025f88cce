"""Command-line front end.

    metafeat extract DATA... [--groups ...] [--scenario ...] [--out csv|json]
    metafeat analyze redundancy METABASE --threshold T
    metafeat analyze missing METABASE
    metafeat analyze timing METABASE
    metafeat analyze compare METABASE OTHER
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

from . import __version__
from .analysis import MetaBase, compare_metabases, correlation_matrix, format_table, missing_report, redundancy_filter, timing_report
from .engine import GROUPS, SCENARIOS, ExtractionConfig, run_corpus, write_metabase_csv, write_metabase_json
from .landmarking import METRICS
from .summary import SUMMARIZERS, SummarizerSpec

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _csv_list(choices):
    def parse(text):
        items = [t.strip() for t in text.split(",") if t.strip()]
        bad = [t for t in items if t not in choices]
        if bad:
            raise argparse.ArgumentTypeError(f"invalid choice(s): {', '.join(bad)}")
        return tuple(items)
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metafeat", description="Meta-feature extraction for classification datasets.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ext = sub.add_parser("extract", help="characterize datasets into a meta-base")
    ext.add_argument("paths", nargs="+")
    ext.add_argument("--groups", type=_csv_list(GROUPS), default=GROUPS,
                     help="comma-separated subset of " + ",".join(GROUPS))
    ext.add_argument("--scenario", type=str.upper, choices=SCENARIOS, default="TRANSFORM")
    ext.add_argument("--folds", type=int)
    ext.add_argument("--score", choices=METRICS, default="accuracy")
    ext.add_argument("--seed", type=int, default=0)
    ext.add_argument("--summary", type=_csv_list(SUMMARIZERS), help="summarization functions")
    ext.add_argument("--bins", type=int, default=10, help="histogram bins")
    ext.add_argument("--cor-method", choices=("pearson", "spearman", "kendall"), default="pearson")
    ext.add_argument("--target", help="target column (default: last)")
    ext.add_argument("--out", choices=("csv", "json"), default="csv")
    ext.add_argument("--output", "-o", help="file to write (default: stdout)")
    ext.add_argument("--raw", action="store_true", help="emit unsummarized measure values")
    ext.add_argument("--workers", type=int, default=1)

    ana = sub.add_parser("analyze", help="analyses over a meta-base")
    ana_sub = ana.add_subparsers(dest="analysis", required=True, parser_class=_Parser)
    red = ana_sub.add_parser("redundancy")
    red.add_argument("metabase")
    red.add_argument("--threshold", type=float, required=True)
    red.add_argument("--dump-corr", metavar="CSV", help="write the correlation matrix here")
    miss = ana_sub.add_parser("missing")
    miss.add_argument("metabase")
    miss.add_argument("--format", choices=("json", "text"), default="json")
    tim = ana_sub.add_parser("timing")
    tim.add_argument("metabase")
    tim.add_argument("--format", choices=("json", "text"), default="text")
    cmp_ = ana_sub.add_parser("compare", help="per-feature agreement between two meta-bases")
    cmp_.add_argument("metabase")
    cmp_.add_argument("other")
    return parser


def _extract(args) -> int:
    overrides = {"groups": args.groups, "score": args.score, "seed": args.seed,
                 "cor_method": args.cor_method, "raw_output": args.raw}
    if args.folds is not None:
        overrides["folds"] = args.folds
    if args.summary or args.bins != 10:
        overrides["summarizers"] = SummarizerSpec(args.summary or SummarizerSpec().functions, args.bins)
    config = ExtractionConfig.for_scenario(args.scenario, **overrides)
    records = run_corpus(args.paths, config, target_name=args.target, workers=args.workers)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        (write_metabase_csv if args.out == "csv" else write_metabase_json)(records, out)
    finally:
        if args.output:
            out.close()
    failed = [r for r in records if r.error]
    for rec in failed:
        print(f"error: {rec.dataset}: {rec.error}", file=sys.stderr)
    return EXIT_DATA if len(failed) == len(records) else EXIT_OK


def _analyze(args) -> int:
    metabase = MetaBase.load(args.metabase)
    if args.analysis == "redundancy":
        report = redundancy_filter(metabase, args.threshold)
        if args.dump_corr:
            corr = correlation_matrix(metabase, sorted(metabase.features))
            with open(args.dump_corr, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow([""] + corr[0])
                for name, row in zip(corr[0], corr[1]):
                    writer.writerow([name] + [repr(float(v)) for v in row])
        json.dump(report.to_dict(), sys.stdout, indent=1)
        print()
    elif args.analysis == "missing":
        report = missing_report(metabase)
        if args.format == "json":
            json.dump(report, sys.stdout, indent=1)
            print()
        else:
            rows = [(k, v["cells"], v["missing"], v["percent"]) for k, v in report["by_group"].items()]
            rows += [(f"[{k}]", v["cells"], v["missing"], v["percent"]) for k, v in report["by_summary"].items()]
            rows.append(("total", report["cells"], report["missing"], report["percent"]))
            print(format_table(("group/summary", "cells", "missing", "percent"), rows))
    elif args.analysis == "compare":
        report = compare_metabases(metabase, MetaBase.load(args.other))
        json.dump(report, sys.stdout, indent=1)
        print()
        skipped = report["skipped"]
        if skipped["only_first"] or skipped["only_second"]:
            print(f"note: skipped {len(skipped['only_first'])} + {len(skipped['only_second'])} "
                  "features not shared by both meta-bases", file=sys.stderr)
    else:
        rows = timing_report(metabase)
        if args.format == "json":
            json.dump(rows, sys.stdout, indent=1)
            print()
        else:
            groups = [g for g in GROUPS + ("total",) if any(g in r["times"] for r in rows)]
            table = [[r["dataset"], r["n"], r["d"], r["q"]] + [r["times"].get(g) for g in groups]
                     + ["!" if r["flagged"] else ""] for r in rows]
            print(format_table(["dataset", "n", "d", "q"] + groups + ["flag"], table))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "extract":
            return _extract(args)
        return _analyze(args)
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (OSError, ValueError, KeyError, StopIteration) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
