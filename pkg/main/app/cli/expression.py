# File name: expression.py
# Created: 3/13/2026 9:10 AM
# Purpose: validate / eval / expand commands
# Used: Yes

from __future__ import annotations

from main.app.cli.common import flag
from main.core.logic_engine import Engine
from main.handlers.expr import (
    expand_to_classical,
    format_expression,
    is_classical,
    is_strict,
    used_width,
)
from main.handlers.geval import evaluate, format_graph, strip


def cmd_validate(args, engine: Engine) -> int:
    e = engine.load_expression(args.path)
    with engine.phase("evaluate"):
        g = evaluate(e)
    engine.emit(
        "\n".join(
            [
                f"declared_k: {e.width}",
                f"used_width: {used_width(e)}",
                f"classical: {flag(is_classical(e))}",
                f"strict: {flag(is_strict(e))}",
                f"vertices: {g.n}",
                f"edges: {len(g.edges)}",
            ]
        )
    )
    return 0


def cmd_eval(args, engine: Engine) -> int:
    e = engine.load_expression(args.path)
    with engine.phase("evaluate"):
        g = evaluate(e)
    if args.strip:
        g = strip(g)
    engine.emit(format_graph(g, with_labels=not args.strip))
    return 0


def cmd_expand(args, engine: Engine) -> int:
    e = engine.load_expression(args.path)
    with engine.phase("expand"):
        x = expand_to_classical(e, label_cap=args.cap)
    engine.emit(format_expression(x))
    return 0


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("validate", parents=parents, help="parse, validate and summarize an expression")
    p.add_argument("path", help="expression file ('-' for stdin)")
    p.set_defaults(func=cmd_validate)

    p = subparsers.add_parser("eval", parents=parents, help="evaluate an expression to a graph file")
    p.add_argument("path", help="expression file ('-' for stdin)")
    p.add_argument("--strip", action="store_true", help="drop vertex labels")
    p.set_defaults(func=cmd_eval)

    p = subparsers.add_parser("expand", parents=parents, help="rewrite as a classical expression over 2^k labels")
    p.add_argument("path", help="expression file ('-' for stdin)")
    p.add_argument("--cap", type=int, default=None, help="largest number of classical labels allowed")
    p.set_defaults(func=cmd_expand)
