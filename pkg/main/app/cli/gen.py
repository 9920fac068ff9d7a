# File name: gen.py
# Created: 3/13/2026 10:45 AM
# Purpose: gen command (expression families) and bench (linear-scaling smoke test on grids)
# Used: Yes

from __future__ import annotations

import time

import pandas as pd

from main.app.cli.common import UsageError, positive_int
from main.core.logic_engine import Engine
from main.handlers import coloring, indpoly
from main.handlers.expr import format_expression, used_width
from main.handlers.generators import FAMILIES, generate, grid_expression


def cmd_gen(args, engine: Engine) -> int:
    try:
        with engine.phase("generate"):
            e = generate(args.family, args.size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    engine.emit(format_expression(e))
    return 0


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def bench_rows(rows: int, sizes: list[int], c: int) -> pd.DataFrame:
    records = []
    for n in sizes:
        cols = max(1, n // rows)
        e = grid_expression(rows, cols)
        records.append(
            {
                "n": rows * cols,
                "width": used_width(e),
                "indpoly_s": _timed(lambda: indpoly.run(e)),
                "color_s": _timed(lambda: coloring.colorable(e, c)),
            }
        )
    frame = pd.DataFrame.from_records(records)
    base = frame.iloc[0]
    frame["indpoly_ratio"] = (frame["indpoly_s"] / base["indpoly_s"]) / (frame["n"] / base["n"])
    frame["color_ratio"] = (frame["color_s"] / base["color_s"]) / (frame["n"] / base["n"])
    return frame


def cmd_bench(args, engine: Engine) -> int:
    with engine.phase("bench"):
        frame = bench_rows(args.rows, args.sizes, args.c)
    engine.emit(frame.to_string(index=False, float_format=lambda x: f"{x:.3f}"))
    return 0


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("gen", parents=parents, help="emit an expression of a graph family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("size", help="N, or AxB for complete-bipartite and grid")
    p.set_defaults(func=cmd_gen)

    p = subparsers.add_parser("bench", parents=parents, help="time indpoly and color on growing grids")
    p.add_argument("--rows", type=positive_int, default=4, help="grid rows (expression width rows+2)")
    p.add_argument("--sizes", type=positive_int, nargs="+", default=[250, 500, 1000])
    p.add_argument("--c", type=positive_int, default=2, help="colors for the coloring run")
    p.set_defaults(func=cmd_bench)
