"""Command line entry point.

Exit status: 0 on success or certified termination, 2 when the bus budget
ran out without a certificate, 1 on any error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import report
from .cache import CacheError, load_cache
from .engine import AnalysisError, analyze_bus, solve
from .variants import BUILTIN_NAMES, VariantError, builtin_variant, load_variant_file

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    which = common.add_mutually_exclusive_group()
    which.add_argument("--variant", default="original",
                       help=f"builtin variant ({', '.join(BUILTIN_NAMES)})")
    which.add_argument("--variant-file", help="JSON file describing a custom variant")
    common.add_argument("--count-min", type=_positive, help="minimum number of children")
    common.add_argument("--count-max", type=_positive, help="maximum number of children")
    common.add_argument("--format", choices=report.FORMATS, default="text")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--max-classes-shown", type=_positive,
                        help="cap on ambiguity classes printed per bus (text output)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = _Parser(prog="wizards", description="Solve and explore Conway's wizards puzzles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("solve", "find valid buses, stopping at a certificate"),
                        ("scan", "analyze every bus up to --max-bus without stopping early")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--max-bus", type=_positive, default=200)
        p.add_argument("--cache", help="line-oriented cache file for resumable runs")
    for name, help_ in (("analyze", "ambiguity classes for one bus"),
                        ("explain", "narrative account of one bus")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--bus", type=_positive, required=True)
    sub.add_parser("variants", parents=[common], help="list builtin variants")
    return parser


def _resolve_variant(args):
    variant = (load_variant_file(args.variant_file) if args.variant_file
               else builtin_variant(args.variant))
    if args.count_min is not None or args.count_max is not None:
        variant = variant.with_counts(args.count_min, args.count_max)
    return variant


def _variants_listing(fmt: str) -> str:
    specs = [builtin_variant(n) for n in BUILTIN_NAMES]
    if fmt == "json":
        return report._dumps([s.to_dict() for s in specs])
    if fmt == "csv":
        rows = ["name,key,target_index,min_count,max_count"]
        rows += [f"{s.name},{' '.join(map(str, s.key_stats))},{s.target_index},"
                 f"{s.min_count or ''},{s.max_count or ''}" for s in specs]
        return "\n".join(rows) + "\n"
    lines = []
    for s in specs:
        bounds = ""
        if s.min_count or s.max_count:
            bounds = f" children {s.min_count or 1}..{s.max_count or ''}"
        lines.append(f"{s.name}: key ({', '.join(map(str, s.key_stats))}) "
                     f"target {s.target}{bounds}")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"wizards: {exc}", file=stderr)
        return EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=stderr)
    try:
        if args.command == "variants":
            stdout.write(_variants_listing(args.format))
            return EXIT_OK
        variant = _resolve_variant(args)
        if args.command in ("analyze", "explain"):
            analysis = analyze_bus(args.bus, variant)
            if args.command == "explain":
                stdout.write(report.explain(analysis, args.max_classes_shown))
            else:
                stdout.write(report.render_analysis(analysis, args.format, args.max_classes_shown))
            return EXIT_OK
        cache = checkpoint = None
        if args.cache:
            cache = load_cache(args.cache, variant)
            if cache.warnings:
                print(f"wizards: {len(cache.warnings)} cache entries ignored", file=stderr)

            def checkpoint():
                cache.save(args.cache)
        outcome = solve(variant, args.max_bus, jobs=args.jobs,
                        stop_early=args.command == "solve",
                        cache=cache, checkpoint=checkpoint)
        stdout.write(report.render_report(outcome, args.format, args.max_classes_shown,
                                          per_bus=args.command == "scan"))
        return EXIT_OK if outcome.certified else EXIT_BUDGET
    except (VariantError, CacheError, AnalysisError, ValueError) as exc:
        print(f"wizards: {exc}", file=stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
