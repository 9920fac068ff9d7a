# File name: polynomial.py
# Created: 3/13/2026 9:40 AM
# Purpose: indpoly / mis commands
# Notes:
# - indpoly prints I(x) as "a_0 a_1 ... a_n"; --table adds "(i, mask-bits) -> coefficient" lines
# Used: Yes

from __future__ import annotations

from main.app.cli.common import mask_bits
from main.core.logic_engine import Engine
from main.handlers import indpoly


def cmd_indpoly(args, engine: Engine) -> int:
    e = engine.load_expression(args.path)
    with engine.phase("dp"):
        p = indpoly.run(e, method=args.method)
    lines = [" ".join(str(a) for a in indpoly.project(p))]
    if args.table:
        for (size, mask), value in sorted(p.table().items()):
            lines.append(f"({size}, {mask_bits(mask, p.k)}) -> {value}")
    engine.emit("\n".join(lines))
    return 0


def cmd_mis(args, engine: Engine) -> int:
    e = engine.load_expression(args.path)
    with engine.phase("dp"):
        chosen = sorted(indpoly.max_is(e))
    engine.emit(f"size: {len(chosen)}\nvertices: {' '.join(str(v) for v in chosen)}")
    return 0


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("indpoly", parents=parents, help="independent set polynomial I(x)")
    p.add_argument("path", help="expression file ('-' for stdin)")
    p.add_argument("--table", action="store_true", help="also print the full labeled table")
    p.add_argument("--method", choices=["school", "transform"], default=None, help="join multiplication")
    p.set_defaults(func=cmd_indpoly)

    p = subparsers.add_parser("mis", parents=parents, help="a maximum independent set")
    p.add_argument("path", help="expression file ('-' for stdin)")
    p.set_defaults(func=cmd_mis)
