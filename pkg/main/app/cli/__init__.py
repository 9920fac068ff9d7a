# File name: __init__.py
# Created: 3/13/2026 8:40 AM
# Purpose: Command-line surface; assembles the subcommands and maps errors to exit codes
# Notes:
# - Exit 0 ok, 1 domain error (McwError or a failed check), 2 usage error
# - Data goes to stdout / -o, diagnostics to stderr through the rich console
# Used: Yes

from __future__ import annotations

import argparse
from typing import Sequence

from rich.markup import escape

import main.core.configurator as config
from main.core.console import console, setup_logging
from main.core.errors import McwError
from main.core.logic_engine import Engine

# Command imports
from main.app.cli import check, color, config_cmd, decomposition, expression, gen, polynomial
from main.app.cli.common import UsageError


_COMMANDS = (expression, decomposition, polynomial, color, check, gen, config_cmd)


def _common_flags(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("-v", "--verbose", action="store_true", default=default(False), help="debug logging on stderr")
    parser.add_argument("--time", action="store_true", default=default(False), help="report per-phase wall time on stderr")
    parser.add_argument("-o", "--output", default=default(None), help="write data output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcw",
        description="Multi-clique-width toolkit: expressions, tree decompositions, width-parameterized DPs.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {config.get_config('_DO_NOT_MODIFY.version')}"
    )
    _common_flags(parser, lambda value: value)

    # subcommand flags must not overwrite the ones given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, lambda value: argparse.SUPPRESS)

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="<command>")
    for module in _COMMANDS:
        module.register(subparsers, [common])
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    setup_logging(args.verbose)
    engine = Engine(output=args.output, timed=args.time)
    try:
        return int(args.func(args, engine) or 0)
    except UsageError as exc:
        console.print(f"[red]usage error:[/red] {escape(str(exc))}", highlight=False, soft_wrap=True)
        return 2
    except McwError as exc:
        console.print(f"[red]error:[/red] {escape(str(exc))}", highlight=False, soft_wrap=True)
        return 1
    finally:
        engine.report_timings()
