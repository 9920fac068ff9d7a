# File name: treedec.py
# Created: 3/4/2026 8:45 AM
# Purpose: Tree decompositions: .td parsing/validation, semi-smooth normal form, compiler to
#          strict multi-(k+2)-expressions
# Notes:
# - .td vertex numbers are 1-based (PACE), graph ids are 0-based
# - Semi-smooth node ids are assigned parent-before-child, so reversed id order is bottom-up
# - Compiled atoms carry the source vertex names, so the evaluated graph compares by name
# Used: Yes

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from main.core.errors import DecompositionError, FormatError
from main.handlers.expr import (
    Create,
    Eps,
    Eta,
    Expression,
    Join,
    Node,
    label_bit,
    mask_of,
)
from main.handlers.geval import LabeledGraph


log = logging.getLogger(__name__)


@dataclass
class TreeDecomposition:
    graph: LabeledGraph
    bags: dict[int, frozenset[int]]
    tree: nx.Graph
    root: int | None = None

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=0) - 1

    def occurrences(self) -> list[set[int]]:
        occ: list[set[int]] = [set() for _ in range(self.graph.n)]
        for node, bag in self.bags.items():
            for v in bag:
                occ[v].add(node)
        return occ


def validate_decomposition(td: TreeDecomposition) -> TreeDecomposition:
    """Check the bag graph is a tree and the three decomposition properties; name the witness."""
    g = td.graph
    if set(td.tree.nodes) != set(td.bags):
        raise DecompositionError("tree nodes and bag ids differ")
    if td.bags and not nx.is_tree(td.tree):
        raise DecompositionError("bag graph is not a tree")
    if td.root is not None and td.root not in td.bags:
        raise DecompositionError(f"root {td.root} is not a bag", witness=td.root)
    for node, bag in td.bags.items():
        for v in bag:
            if not 0 <= v < g.n:
                raise DecompositionError(f"bag {node} mentions unknown vertex {v + 1}", witness=node)

    occ = td.occurrences()
    for v in range(g.n):
        if not occ[v]:
            raise DecompositionError(f"vertex {g.name(v)} is in no bag", witness=v)
    for u, v in sorted(g.edges):
        if not occ[u] & occ[v]:
            raise DecompositionError(
                f"edge {g.name(u)}-{g.name(v)} is in no bag", witness=(u, v)
            )
    for v in range(g.n):
        if len(occ[v]) > 1 and not nx.is_connected(td.tree.subgraph(occ[v])):
            raise DecompositionError(
                f"bags containing vertex {g.name(v)} are not connected in the tree", witness=v
            )
    return td


def parse_td(text: str, graph: LabeledGraph) -> TreeDecomposition:
    header: tuple[int, int, int] | None = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if header is not None or len(parts) != 5 or parts[1] != "td":
                    raise FormatError("expected a single 's td <bags> <max-bag> <vertices>' line", line_no)
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            elif header is None:
                raise FormatError("'s td' line must come first", line_no)
            elif parts[0] == "b":
                if len(parts) < 2:
                    raise FormatError("expected 'b <bag-id> <v> ...'", line_no)
                bag_id = int(parts[1])
                if bag_id in bags:
                    raise FormatError(f"duplicate bag {bag_id}", line_no)
                bags[bag_id] = frozenset(int(v) - 1 for v in parts[2:])
            else:
                if len(parts) != 2:
                    raise FormatError("expected a tree edge '<bag-id> <bag-id>'", line_no)
                edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"non-integer value in {raw.strip()!r}", line_no) from None

    if header is None:
        raise FormatError("missing 's td' line")
    n_bags, max_bag, n_vertices = header
    if n_vertices != graph.n:
        raise FormatError(f"decomposition is for {n_vertices} vertices, graph has {graph.n}")
    if len(bags) != n_bags:
        raise FormatError(f"declared {n_bags} bags, found {len(bags)}")
    actual = max((len(b) for b in bags.values()), default=0)
    if actual != max_bag:
        log.warning("declared max bag size %d, found %d", max_bag, actual)

    tree = nx.Graph()
    tree.add_nodes_from(bags)
    for a, b in edges:
        if a not in bags or b not in bags:
            raise DecompositionError(f"tree edge {a} {b} references an undefined bag")
        tree.add_edge(a, b)
    return validate_decomposition(TreeDecomposition(graph, bags, tree))


def format_td(td: TreeDecomposition) -> str:
    max_bag = max((len(b) for b in td.bags.values()), default=0)
    lines = [f"s td {len(td.bags)} {max_bag} {td.graph.n}"]
    for node in sorted(td.bags):
        lines.append(" ".join(["b", str(node), *(str(v + 1) for v in sorted(td.bags[node]))]))
    for a, b in sorted(tuple(sorted(e)) for e in td.tree.edges):
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


def decomposition_from_order(graph: LabeledGraph, order: Sequence[int]) -> TreeDecomposition:
    """Bags from eliminating vertices in order (fill-in included); components are chained."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs: list[set[int]] = [set() for _ in range(graph.n)]
    for u, v in graph.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    bags: dict[int, frozenset[int]] = {}
    tree = nx.Graph()
    tops: list[int] = []
    for v in order:
        higher = {u for u in nbrs[v] if pos[u] > pos[v]}
        node = pos[v] + 1
        bags[node] = frozenset(higher | {v})
        tree.add_node(node)
        for a in higher:
            nbrs[a] |= higher - {a}
        if higher:
            tree.add_edge(node, pos[min(higher, key=pos.__getitem__)] + 1)
        else:
            tops.append(node)
    for a, b in zip(tops, tops[1:]):
        tree.add_edge(a, b)
    return TreeDecomposition(graph, bags, tree)


def interval_decomposition(graph: LabeledGraph, span: int) -> TreeDecomposition:
    """Path of bags {t, ..., t+span-1} over consecutive ids (grid columns, paths)."""
    n = graph.n
    starts = range(max(1, n - span + 1))
    bags = {t + 1: frozenset(range(t, min(n, t + span))) for t in starts}
    tree = nx.path_graph(range(1, len(bags) + 1))
    return TreeDecomposition(graph, bags, tree)


# ---------------------------------------------------------------------------
# Semi-smooth form
# ---------------------------------------------------------------------------

@dataclass
class SemiSmoothDecomposition:
    graph: LabeledGraph
    bags: list[frozenset[int]]
    parent: list[int | None]
    children: list[list[int]]
    vertex: list[int]
    home: list[int]
    iota: list[int] = field(default_factory=list)

    root = 0

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    def to_tree_decomposition(self) -> TreeDecomposition:
        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.bags)))
        tree.add_edges_from((t, p) for t, p in enumerate(self.parent) if p is not None)
        return TreeDecomposition(self.graph, dict(enumerate(self.bags)), tree, root=0)

    def check(self) -> None:
        n = self.graph.n
        if len(self.bags) != n:
            raise DecompositionError(f"{len(self.bags)} nodes for {n} vertices")
        if self.parent[0] is not None or self.bags[0] != {self.vertex[0]}:
            raise DecompositionError("root bag must hold exactly its home vertex")
        for t in range(1, len(self.bags)):
            p = self.parent[t]
            if p is None or not p < t:
                raise DecompositionError(f"node {t} has no earlier parent", witness=t)
            fresh = self.bags[t] - self.bags[p]
            if fresh != {self.vertex[t]}:
                raise DecompositionError(f"node {t} introduces {sorted(fresh)}", witness=t)
        for v in range(n):
            if self.vertex[self.home[v]] != v:
                raise DecompositionError(f"home of vertex {v} is inconsistent", witness=v)
        for t, bag in enumerate(self.bags):
            ids = [self.iota[v] for v in bag]
            if len(set(ids)) != len(ids) or not all(1 <= i <= self.width + 1 for i in ids):
                raise DecompositionError(f"identifiers clash in bag of node {t}", witness=t)
        if len(self.bags) != n - self.width:
            log.debug(
                "semi-smooth decomposition has %d nodes, |V| - width = %d",
                len(self.bags),
                n - self.width,
            )
        validate_decomposition(self.to_tree_decomposition())


def _start_node(td: TreeDecomposition) -> int:
    root = td.root if td.root is not None else min(td.bags)
    if td.bags[root]:
        return root
    distance = nx.single_source_shortest_path_length(td.tree, root)
    nearest = min((d, node) for node, d in distance.items() if td.bags[node])[1]
    log.debug("root bag %d is empty, rooting at the nearest non-empty bag %d", root, nearest)
    return nearest


def semi_smooth(td: TreeDecomposition) -> SemiSmoothDecomposition:
    """
    Depth-first pass: bags contained in the (kept) parent bag are dropped, and a bag
    introducing several vertices becomes a chain with one new vertex per node.
    """
    g = td.graph
    if g.n == 0 or not any(td.bags.values()):
        raise DecompositionError("graph has no vertices")

    bags: list[frozenset[int]] = []
    parent: list[int | None] = []
    children: list[list[int]] = []
    vertex: list[int] = []
    home: list[int | None] = [None] * g.n

    start = _start_node(td)
    stack: list[tuple[int, int | None, int | None]] = [(start, None, None)]
    while stack:
        x, came_from, anchor = stack.pop()
        bag = td.bags[x]
        above = bags[anchor] if anchor is not None else frozenset()
        bottom = anchor
        if anchor is None or not bag <= above:
            base = bag & above
            for v in sorted(bag - above):
                base = base | {v}
                node = len(bags)
                bags.append(base)
                parent.append(bottom)
                children.append([])
                vertex.append(v)
                if bottom is not None:
                    children[bottom].append(node)
                home[v] = node
                bottom = node
        for y in sorted(td.tree.neighbors(x), reverse=True):
            if y != came_from:
                stack.append((y, x, bottom))

    ssd = SemiSmoothDecomposition(g, bags, parent, children, vertex, home)
    assign_identifiers(ssd)
    log.debug("semi-smooth: %d bags -> %d nodes, width %d", len(td.bags), len(bags), ssd.width)
    return ssd


def assign_identifiers(ssd: SemiSmoothDecomposition) -> list[int]:
    """Top-down: each vertex takes the smallest identifier unused by its home bag."""
    iota = [0] * ssd.graph.n
    for t, bag in enumerate(ssd.bags):
        v = ssd.vertex[t]
        taken = {iota[u] for u in bag if u != v}
        ident = 1
        while ident in taken:
            ident += 1
        iota[v] = ident
    ssd.iota = iota
    return iota


# ---------------------------------------------------------------------------
# Compiler
# ---------------------------------------------------------------------------

def _node_expressions(ssd: SemiSmoothDecomposition, keep: bool) -> dict[int, Node]:
    g = ssd.graph
    adj = g.adjacency()
    top = ssd.width + 2
    exprs: dict[int, Node] = {}
    for t in reversed(range(len(ssd.bags))):
        v = ssd.vertex[t]
        upper = mask_of(ssd.iota[u] for u in ssd.bags[t] if u != v and adj[v] >> u & 1)
        name = (g.name(v),)
        if not ssd.children[t]:
            exprs[t] = Create(1, upper, name)
            continue
        take = exprs.__getitem__ if keep else exprs.pop
        parts = [Create(1, upper | label_bit(top), name)]
        parts.extend(take(c) for c in ssd.children[t])
        ident = ssd.iota[v]
        exprs[t] = Eps(top, Eps(ident, Eta(ident, top, Join(tuple(parts)))))
    return exprs


def compile_decomposition(ssd: SemiSmoothDecomposition) -> Expression:
    """Strict multi-(k+2)-expression generating ssd.graph, vertex names attached."""
    root = _node_expressions(ssd, keep=False)[0]
    return Expression(ssd.width + 2, root)


def subtree_expressions(ssd: SemiSmoothDecomposition) -> dict[int, Expression]:
    """The expression of every decomposition node, for checking the per-subtree invariant."""
    width = ssd.width + 2
    return {t: Expression(width, node) for t, node in _node_expressions(ssd, keep=True).items()}


def subtree_vertices(ssd: SemiSmoothDecomposition, t: int) -> set[int]:
    out: set[int] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        out.add(ssd.vertex[s])
        stack.extend(ssd.children[s])
    return out


def compile_td(td: TreeDecomposition) -> Expression:
    return compile_decomposition(semi_smooth(td))
