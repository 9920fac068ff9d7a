# File name: decomposition.py
# Created: 3/13/2026 9:25 AM
# Purpose: compile-td command (graph + .td file -> strict expression with vertex names)
# Used: Yes

from __future__ import annotations

import logging

from main.core.logic_engine import Engine
from main.handlers.expr import format_expression
from main.handlers.treedec import compile_decomposition, semi_smooth


log = logging.getLogger(__name__)


def cmd_compile_td(args, engine: Engine) -> int:
    g = engine.load_graph(args.graph)
    td = engine.load_td(args.td, g)
    with engine.phase("semi-smooth"):
        ssd = semi_smooth(td)
    with engine.phase("compile"):
        e = compile_decomposition(ssd)
    log.info("compiled width-%d decomposition into a %d-label expression", td.width, e.width)
    engine.emit(format_expression(e))
    return 0


def register(subparsers, parents) -> None:
    p = subparsers.add_parser(
        "compile-td", parents=parents, help="compile a tree decomposition into a strict expression"
    )
    p.add_argument("graph", help="graph file (p/e/l/n lines)")
    p.add_argument("td", help="tree decomposition in PACE .td format")
    p.set_defaults(func=cmd_compile_td)
