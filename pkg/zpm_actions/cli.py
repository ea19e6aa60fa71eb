# zpm_actions/cli.py
"""
Command-line front end.

Exit codes: 0 success, 1 domain error (invalid data, inadmissible invariants, guard exceeded,
failed self-check), 2 usage error.
"""
import argparse
import json
import logging
import os
import sys
import typing

from zpm_actions import __version__
from zpm_actions.actions import load_action_file
from zpm_actions.config import load_limits
from zpm_actions.exceptions import SurfaceActionError
from zpm_actions.moduli import construct_action, enumerate_weak_classes
from zpm_actions.report import (
    EQUIVALENT,
    classify_report,
    dump_json,
    enumerate_report,
    equiv_report,
    render_classify_text,
    render_enumerate_text,
    render_equiv_text,
    render_selfcheck_text,
)
from zpm_actions.selfcheck import LEVELS, run_selfcheck

logger = logging.getLogger("zpm_actions")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _nonnegative(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {number}")
    return number


def _positive(value: str) -> int:
    number = _nonnegative(value)
    if number == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zpm-actions",
        description="Classify Z_p^m actions on closed oriented surfaces by their monodromy data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="PATH", help="key=value file overriding the enumeration guards")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="strong and weak invariants of an action file")
    classify.add_argument("--input", required=True, metavar="FILE")
    classify.add_argument("--format", choices=("json", "text"), default="json")

    equiv = sub.add_parser("equiv", help="decide equivalence of two action files")
    equiv.add_argument("--a", required=True, metavar="FILE")
    equiv.add_argument("--b", required=True, metavar="FILE")
    equiv.add_argument("--mode", choices=("strong", "weak"), default="strong")
    equiv.add_argument("--format", choices=("json", "text"), default="text")

    enum = sub.add_parser("enumerate", help="list weak classes (components of the moduli space)")
    enum.add_argument("--p", required=True, type=_positive)
    enum.add_argument("--m", required=True, type=_positive)
    enum.add_argument("--g", required=True, type=_nonnegative)
    enum.add_argument("--g-max", type=_nonnegative, default=None, help="list every quotient genus in [g, g-max]")
    enum.add_argument("--r-max", required=True, type=_nonnegative)
    enum.add_argument("--count-only", action="store_true")
    enum.add_argument("--format", choices=("json", "text"), default="text")

    construct = sub.add_parser("construct", help="build an action file realizing given invariants")
    construct.add_argument("--p", required=True, type=_positive)
    construct.add_argument("--m", required=True, type=_positive)
    construct.add_argument("--k", required=True, type=int)
    construct.add_argument("--g", required=True, type=int)
    construct.add_argument("--multiset", default="[]", metavar="FILE|JSON",
                           help="branch multiset as a JSON list of vectors, inline or in a file")
    construct.add_argument("--output", metavar="FILE", help="write the action file here instead of stdout")

    selfcheck = sub.add_parser("selfcheck", help="run the built-in verification suite")
    selfcheck.add_argument("--level", choices=LEVELS, default="quick")
    selfcheck.add_argument("--seed", type=int, default=0)
    selfcheck.add_argument("--stop-on-error", action="store_true")
    selfcheck.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _read_multiset(parser: argparse.ArgumentParser, value: str) -> typing.List[typing.List[int]]:
    text = value
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        parser.error(f"--multiset is neither a file nor valid JSON: {e}")
    if not isinstance(data, list) or not all(
            isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v) for v in data):
        parser.error("--multiset must be a JSON list of integer vectors")
    return data


def _emit(text: str):
    sys.stdout.write(text)


def _run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    limits = load_limits(args.config)

    if args.command == "classify":
        report = classify_report(load_action_file(args.input), limits)
        _emit(dump_json(report) if args.format == "json" else render_classify_text(report))
        return EXIT_OK

    if args.command == "equiv":
        a, b = load_action_file(args.a), load_action_file(args.b)
        report = equiv_report(a, b, args.mode, limits)
        _emit(dump_json(report) if args.format == "json" else render_equiv_text(report))
        return EXIT_OK

    if args.command == "enumerate":
        if args.g_max is not None and args.g_max < args.g:
            parser.error("--g-max must be at least --g")
        classes = enumerate_weak_classes(args.p, args.m, args.g, args.r_max, limits, g_max=args.g_max)
        if args.count_only:
            _emit(f"{len(classes)}\n")
            return EXIT_OK
        report = enumerate_report(classes)
        _emit(dump_json(report) if args.format == "json" else render_enumerate_text(report))
        return EXIT_OK

    if args.command == "construct":
        multiset = _read_multiset(parser, args.multiset)
        action = construct_action(args.p, args.m, args.k, args.g, multiset)
        text = dump_json(action.to_dict())
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            logger.info("Wrote action file %s", args.output)
        else:
            _emit(text)
        return EXIT_OK

    if args.command == "selfcheck":
        report = run_selfcheck(args.level, limits, seed=args.seed, stop_on_error=args.stop_on_error)
        _emit(dump_json(report) if args.format == "json" else render_selfcheck_text(report))
        return EXIT_OK if report["failed"] == 0 else EXIT_DOMAIN

    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _run(args, parser)
    except SurfaceActionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
