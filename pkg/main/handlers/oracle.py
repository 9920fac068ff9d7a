# File name: oracle.py
# Created: 3/10/2026 6:05 PM
# Purpose: Brute-force reference answers for the DPs and the compiler, plus the corpus types
# Notes:
# - Guards raise OracleGuardError; an oracle never truncates silently
# - Everything here is exponential on purpose, desk scale only
# Used: Yes

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import networkx as nx

from main.core.configurator import resolve
from main.core.errors import OracleGuardError
from main.handlers.expr import (
    Create,
    Eps,
    Eta,
    Expression,
    Join,
    LabelSet,
    Node,
    Rho,
    label_bit,
    relabel_mask,
)
from main.handlers.geval import LabeledGraph, evaluate
from main.handlers.indpoly import LabeledISPolynomial
from main.handlers.treedec import TreeDecomposition, decomposition_from_order, validate_decomposition


log = logging.getLogger(__name__)


def enumerate_is(g: LabeledGraph, k: int | None = None, guard: int | None = None) -> LabeledISPolynomial:
    """Labeled independent set table by running over all 2^n vertex subsets."""
    guard = resolve(guard, "oracle.is_max_vertices")
    if g.n > guard:
        raise OracleGuardError(f"enumerate_is refuses n={g.n} (guard {guard})")
    k = g.width() if k is None else k
    adj = g.adjacency()
    total = 1 << g.n
    independent = bytearray(total)
    union = [0] * total
    independent[0] = 1
    table: dict[tuple[int, LabelSet], int] = {(0, 0): 1}
    for subset in range(1, total):
        low = subset & -subset
        v = low.bit_length() - 1
        rest = subset ^ low
        if not independent[rest] or adj[v] & rest:
            continue
        independent[subset] = 1
        union[subset] = union[rest] | g.labels[v]
        key = (subset.bit_count(), union[subset])
        table[key] = table.get(key, 0) + 1
    return LabeledISPolynomial.from_table(k, table, g.n)


@dataclass(frozen=True)
class ColoringOutcome:
    masks: frozenset[int]
    colorable: bool


def _proper_colorings(g: LabeledGraph, c: int) -> Iterator[list[int]]:
    adj = g.adjacency()
    colors = [0] * g.n
    if g.n == 0:
        yield colors
        return
    stack = [(0, 0)]
    while stack:
        v, q = stack.pop()
        if q >= c:
            continue
        stack.append((v, q + 1))
        if any(adj[v] >> u & 1 and colors[u] == q for u in range(v)):
            continue
        colors[v] = q
        if v + 1 == g.n:
            yield colors
        else:
            stack.append((v + 1, 0))


def enumerate_colorings(
    g: LabeledGraph, c: int, k: int | None = None, guard: int | None = None
) -> ColoringOutcome:
    """Every color-label incidence mask realized by some proper c-coloring."""
    guard = resolve(guard, "oracle.coloring_max_assignments")
    if c ** g.n > guard:
        raise OracleGuardError(f"enumerate_colorings refuses {c}^{g.n} assignments (guard {guard})")
    k = g.width() if k is None else k
    masks: set[int] = set()
    found = False
    for colors in _proper_colorings(g, c):
        found = True
        mask = 0
        for v, q in enumerate(colors):
            mask |= g.labels[v] << (q * k)
        masks.add(mask)
    return ColoringOutcome(frozenset(masks), found)


def chromatic_number(g: LabeledGraph) -> int:
    if g.n == 0:
        return 0
    for c in range(1, g.n + 1):
        if next(_proper_colorings(g, c), None) is not None:
            return c
    return g.n


def brute_treewidth(g: LabeledGraph, guard: int | None = None) -> tuple[int, TreeDecomposition]:
    """
    Exact tree-width over elimination orders, memoized on the set eliminated so far:
    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|).
    """
    guard = resolve(guard, "oracle.treewidth_max_vertices")
    if g.n > guard:
        raise OracleGuardError(f"brute_treewidth refuses n={g.n} (guard {guard})")
    n = g.n
    if n == 0:
        return -1, TreeDecomposition(g, {}, nx.Graph())
    adj = g.adjacency()
    full = (1 << n) - 1

    def q_size(eliminated: int, v: int) -> int:
        # vertices outside eliminated+v reachable from v through eliminated ones
        seen = 1 << v
        frontier = 1 << v
        reach = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            u = low.bit_length() - 1
            for w in _bits(adj[u] & ~seen):
                seen |= 1 << w
                if eliminated >> w & 1:
                    frontier |= 1 << w
                else:
                    reach |= 1 << w
        return reach.bit_count()

    best = {0: -1}
    choice: dict[int, int] = {}
    for subset in sorted(range(1, full + 1), key=int.bit_count):
        value = None
        for v in _bits(subset):
            rest = subset ^ (1 << v)
            cand = max(best[rest], q_size(rest, v))
            if value is None or cand < value:
                value, choice[subset] = cand, v
        best[subset] = value

    order: list[int] = []
    subset = full
    while subset:
        v = choice[subset]
        order.append(v)
        subset ^= 1 << v
    order.reverse()
    td = validate_decomposition(decomposition_from_order(g, order))
    log.debug("tree-width %d via order %s", best[full], order)
    return best[full], td


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Random expressions
# ---------------------------------------------------------------------------

def random_expression(
    rng: random.Random, n: int, k: int, max_atom: int = 2, rho: bool = True
) -> Expression:
    """A valid random expression with about n vertices over labels 1..k (eta preconditions hold)."""
    pool: list[tuple[Node, frozenset[LabelSet]]] = []
    created = 0
    while created < n:
        m = min(rng.randint(1, max_atom), n - created)
        labels = rng.randrange(1 << k) if k else 0
        pool.append((Create(m, labels), frozenset((labels,))))
        created += m

    while len(pool) > 1 or rng.random() < 0.5:
        roll = rng.random()
        if len(pool) > 1 and roll < 0.4:
            a = pool.pop(rng.randrange(len(pool)))
            b = pool.pop(rng.randrange(len(pool)))
            pool.append((Join((a[0], b[0])), a[1] | b[1]))
            continue
        slot = rng.randrange(len(pool))
        node, sig = pool[slot]
        if k == 0:
            if len(pool) == 1:
                break
            continue
        i = rng.randint(1, k)
        if k >= 2 and roll < 0.75:
            j = rng.choice([x for x in range(1, k + 1) if x != i])
            both = label_bit(i) | label_bit(j)
            if any(mask & both == both for mask in sig):
                continue
            pool[slot] = (Eta(i, j, node), sig)
        elif rho and roll < 0.88:
            targets = rng.randrange(1 << k)
            pool[slot] = (Rho(i, targets, node), frozenset(relabel_mask(m, i, targets) for m in sig))
        else:
            pool[slot] = (Eps(i, node), frozenset(relabel_mask(m, i, 0) for m in sig))
    return Expression(k, pool[0][0])


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------

@dataclass
class CorpusEntry:
    name: str
    expression: Expression
    note: str = ""

    @cached_property
    def graph(self) -> LabeledGraph:
        return evaluate(self.expression)

    @cached_property
    def is_table(self) -> LabeledISPolynomial | None:
        if self.graph.n > resolve(None, "check.max_vertices"):
            return None
        return enumerate_is(self.graph, k=self.expression.width)

    def colorings(self, c: int) -> ColoringOutcome | None:
        if self.graph.n > resolve(None, "check.color_max_vertices"):
            return None
        return enumerate_colorings(self.graph, c, k=self.expression.width)


@dataclass
class Corpus:
    entries: list[CorpusEntry] = field(default_factory=list)

    def add(self, name: str, expression: Expression, note: str = "") -> CorpusEntry:
        entry = CorpusEntry(name, expression, note)
        self.entries.append(entry)
        return entry

    def __iter__(self) -> Iterator[CorpusEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, name: str) -> CorpusEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)
