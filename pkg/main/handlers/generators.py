# File name: generators.py
# Created: 3/11/2026 10:30 AM
# Purpose: Expression families for `gen` (path, cycle, clique, complete-bipartite, grid)
# Notes:
# - Every family documents the width of the expression it emits
# - Vertex ids of the generated graph follow the family's natural order
# Used: Yes

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

from main.handlers.expr import Create, Eps, Eta, Expression, Join, Node, Rho, label_bit
from main.handlers.geval import LabeledGraph
from main.handlers.treedec import compile_decomposition, interval_decomposition, semi_smooth


log = logging.getLogger(__name__)


def _alternate(t: int) -> int:
    return 1 if t % 2 == 0 else 2


def _chain(n: int, extra: int = 0) -> Node:
    """Path on n vertices; the first vertex also carries the labels in extra."""
    cur: Node = Create(1, label_bit(1) | extra)
    for t in range(1, n):
        a, p = _alternate(t), _alternate(t - 1)
        cur = Eps(p, Eta(p, a, Join((cur, Create(1, label_bit(a))))))
    return cur


def path_expression(n: int) -> Expression:
    """P_n, strict, 2 labels."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Expression(2, _chain(n))


def cycle_expression(n: int) -> Expression:
    """C_n, strict, 3 labels: a path whose first vertex keeps label 3 for the closing edge."""
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    root = Eta(3, _alternate(n - 1), _chain(n, extra=label_bit(3)))
    return Expression(3, root)


def clique_expression(n: int) -> Expression:
    """K_n, 2 labels, one rho per added vertex."""
    if n < 1:
        raise ValueError("clique needs at least one vertex")
    cur: Node = Create(1, label_bit(1))
    for _ in range(1, n):
        cur = Rho(2, label_bit(1), Eta(1, 2, Join((cur, Create(1, label_bit(2))))))
    return Expression(2, cur)


def complete_bipartite_expression(a: int, b: int) -> Expression:
    """K_{a,b}, strict, 2 labels."""
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Expression(2, Eta(1, 2, Join((Create(a, label_bit(1)), Create(b, label_bit(2))))))


def grid_graph(rows: int, cols: int) -> LabeledGraph:
    """rows x cols grid, column-major ids: (r, c) -> c * rows + r."""
    edges = []
    for c in range(cols):
        for r in range(rows):
            v = c * rows + r
            if r + 1 < rows:
                edges.append((v, v + 1))
            if c + 1 < cols:
                edges.append((v, v + rows))
    names = (f"{r}.{c}" for c in range(cols) for r in range(rows))
    return LabeledGraph.build(rows * cols, edges, names=names)


def grid_expression(rows: int, cols: int) -> Expression:
    """Grid compiled from its interval decomposition of width rows: strict, rows + 2 labels."""
    if rows < 1 or cols < 1:
        raise ValueError("grid needs at least one row and one column")
    g = grid_graph(rows, cols)
    return compile_decomposition(semi_smooth(interval_decomposition(g, rows + 1)))


@dataclass(frozen=True)
class Family:
    name: str
    build: Callable[[tuple[int, ...]], Expression]
    dims: int
    width: Callable[[tuple[int, ...]], int]
    note: str


FAMILIES: dict[str, Family] = {
    "path": Family("path", lambda s: path_expression(*s), 1, lambda s: 2, "strict, 2 labels"),
    "cycle": Family("cycle", lambda s: cycle_expression(*s), 1, lambda s: 3, "strict, 3 labels"),
    "clique": Family("clique", lambda s: clique_expression(*s), 1, lambda s: 2, "2 labels, uses rho"),
    "complete-bipartite": Family(
        "complete-bipartite",
        lambda s: complete_bipartite_expression(*s),
        2,
        lambda s: 2,
        "strict, 2 labels",
    ),
    "grid": Family(
        "grid",
        lambda s: grid_expression(*s),
        2,
        lambda s: min(s[0] + 1, s[0] * s[1]) + 1,
        "strict, rows+2 labels",
    ),
}


def parse_size(text: str, dims: int) -> tuple[int, ...]:
    """'N' or 'AxB'; a single N stands for NxN in two-dimensional families."""
    try:
        parts = tuple(int(x) for x in text.lower().split("x"))
    except ValueError:
        raise ValueError(f"size must look like N or AxB, got {text!r}") from None
    if len(parts) == 1 and dims == 2:
        parts = parts * 2
    if len(parts) != dims:
        raise ValueError(f"expected {dims} size component(s), got {text!r}")
    return parts


def generate(family: str, size: str) -> Expression:
    try:
        fam = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    dims = parse_size(size, fam.dims)
    e = fam.build(dims)
    log.debug("generated %s %s: width %d (%s)", family, size, e.width, fam.note)
    return e

