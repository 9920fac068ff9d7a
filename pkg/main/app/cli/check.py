# File name: check.py
# Created: 3/13/2026 10:20 AM
# Purpose: check command (DP-vs-oracle sweep over files or the bundled corpus)
# Notes:
# - Exit 1 on any mismatch; each failure line names expression, operation, first difference
# Used: Yes

from __future__ import annotations

from pathlib import Path

from main.app.cli.common import positive_int
from main.core.logic_engine import Engine
from main.core.services.corpus_service import CorpusService
from main.handlers.crosscheck import check_corpus
from main.handlers.oracle import Corpus


def cmd_check(args, engine: Engine) -> int:
    if args.paths:
        corpus = Corpus()
        for path in args.paths:
            corpus.add(Path(path).stem, engine.load_expression(path))
    else:
        with engine.phase("parse"):
            corpus = CorpusService.build(
                args.corpus, families=not args.no_families, random_count=args.random, seed=args.seed
            )

    with engine.phase("check"):
        report = check_corpus(corpus, colors=args.colors)

    lines = [result.line() for result in report.failures]
    if args.full:
        lines.extend(result.line() for result in report.results if result.status != "fail")
    summary = report.summary()
    if not summary.empty:
        lines.append(summary.to_string(index=False))
    lines.append(f"{'ok' if report.ok else 'FAILED'}: {len(corpus)} expressions, {len(report.failures)} failures")
    engine.emit("\n".join(lines))
    return 0 if report.ok else 1


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("check", parents=parents, help="cross-check the DPs against brute-force oracles")
    p.add_argument("paths", nargs="*", help="expression files (default: the bundled corpus)")
    p.add_argument("--corpus", default=None, help="corpus directory of *.mcw files")
    p.add_argument("--no-families", action="store_true", help="skip the small generated family instances")
    p.add_argument("--random", type=int, default=0, help="number of seeded random expressions to add")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colors", type=positive_int, nargs="+", default=None, help="color counts to test")
    p.add_argument("--full", action="store_true", help="list passing and skipped checks too")
    p.set_defaults(func=cmd_check)
