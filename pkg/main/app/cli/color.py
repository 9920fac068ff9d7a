# File name: color.py
# Created: 3/13/2026 9:55 AM
# Purpose: color command (c-colorability by the incidence-graph DP)
# Used: Yes

from __future__ import annotations

from main.app.cli.common import positive_int
from main.core.logic_engine import Engine
from main.handlers import coloring
from main.handlers.expr import compact_labels, used_width


def cmd_color(args, engine: Engine) -> int:
    e = engine.load_expression(args.path)
    coloring.check_cap(args.c, used_width(e), args.cap_bits)
    compact, _ = compact_labels(e)
    with engine.phase("dp"):
        table = coloring.color_table(
            compact, args.c, rule=args.atom_rule, method=args.method, cap=args.cap_bits
        )
    lines = ["yes" if table.any() else "no"]
    if args.count:
        lines.append(f"entries: {table.count()}")
    engine.emit("\n".join(lines))
    return 0


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("color", parents=parents, help="decide c-colorability")
    p.add_argument("path", help="expression file ('-' for stdin)")
    p.add_argument("--c", type=positive_int, required=True, help="number of colors")
    p.add_argument("--count", action="store_true", help="also print the number of true root entries")
    p.add_argument("--atom-rule", choices=["exact", "single"], default=None)
    p.add_argument("--method", choices=["zeta", "direct"], default=None, help="join implementation")
    p.add_argument("--cap-bits", type=int, default=None, help="largest c*k table exponent allowed")
    p.set_defaults(func=cmd_color)
