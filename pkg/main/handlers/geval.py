# File name: geval.py
# Created: 3/3/2026 9:20 AM
# Purpose: Materialize the labeled graph generated by a multi-k-expression
# Notes:
# - Vertex ids are dense and follow creation order (left-to-right atoms)
# - step_signature is the cheap eta-precondition check shared by the DP handlers
# - Graph text format: p/e/l/n lines, 0-based ids
# Used: Yes

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from main.core.errors import EtaPreconditionViolation, FormatError
from main.handlers.expr import (
    Create,
    Eps,
    Eta,
    Expression,
    Join,
    LabelSet,
    Node,
    Rho,
    Where,
    fold,
    label_bit,
    labels_of,
    mask_of,
    relabel_mask,
)


log = logging.getLogger(__name__)

MaskSignature = frozenset


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    labels: tuple[LabelSet, ...]
    edges: frozenset[tuple[int, int]]
    names: tuple[str | None, ...]

    def __post_init__(self):
        if len(self.labels) != self.n or len(self.names) != self.n:
            raise ValueError("labels and names must have one entry per vertex")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not a normalized simple edge")

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Iterable[LabelSet] | None = None,
        names: Iterable[str | None] | None = None,
    ) -> "LabeledGraph":
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            normalized.add((min(u, v), max(u, v)))
        return cls(
            n,
            tuple(labels) if labels is not None else (0,) * n,
            frozenset(normalized),
            tuple(names) if names is not None else (None,) * n,
        )

    def adjacency(self) -> list[int]:
        """Neighborhoods as bitmasks over vertex ids."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def name(self, v: int) -> str:
        found = self.names[v]
        return found if found is not None else str(v)

    def named_edges(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset((self.name(u), self.name(v))) for u, v in self.edges)

    def same_named_graph(self, other: "LabeledGraph") -> bool:
        """Equality up to renumbering, matching vertices by name."""
        mine = [self.name(v) for v in range(self.n)]
        theirs = [other.name(v) for v in range(other.n)]
        if len(set(mine)) != self.n or sorted(mine) != sorted(theirs):
            return False
        return self.named_edges() == other.named_edges()

    def width(self) -> int:
        used = 0
        for mask in self.labels:
            used |= mask
        return used.bit_length()

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for v in range(self.n):
            g.add_node(v, labels=labels_of(self.labels[v]), name=self.name(v))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "LabeledGraph":
        order = sorted(g.nodes, key=str)
        if all(isinstance(v, int) for v in g.nodes):
            order = sorted(g.nodes)
        index = {v: i for i, v in enumerate(order)}
        return cls.build(
            len(order),
            ((index[u], index[v]) for u, v in g.edges),
            names=(str(v) for v in order),
        )


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

def step_signature(node: Node, below: list[MaskSignature], where: Where) -> MaskSignature:
    """Label masks present after node, given the masks present in its children."""
    if isinstance(node, Create):
        return frozenset((node.labels,))
    if isinstance(node, Join):
        return frozenset().union(*below)
    present = below[0]
    if isinstance(node, Eta):
        both = label_bit(node.i) | label_bit(node.j)
        for mask in present:
            if mask & both == both:
                raise EtaPreconditionViolation(where.path(), node.i, node.j, mask=mask)
        return present
    targets = node.targets if isinstance(node, Rho) else 0
    return frozenset(relabel_mask(mask, node.i, targets) for mask in present)


class SignatureTrace:
    """MaskSignature per subexpression, looked up by node identity."""

    def __init__(self):
        self._by_id: dict[int, MaskSignature] = {}
        self._keep: list[Node] = []
        self.root: MaskSignature = frozenset()

    def record(self, node: Node, sig: MaskSignature) -> None:
        if id(node) not in self._by_id:
            self._keep.append(node)
        self._by_id[id(node)] = sig

    def __getitem__(self, node: Node) -> MaskSignature:
        return self._by_id[id(node)]

    def __contains__(self, node: Node) -> bool:
        return id(node) in self._by_id

    def __len__(self) -> int:
        return len(self._by_id)


def signature_trace(e: Expression) -> SignatureTrace:
    trace = SignatureTrace()

    def visit(node: Node, below: list[MaskSignature], where: Where) -> MaskSignature:
        sig = step_signature(node, below, where)
        trace.record(node, sig)
        return sig

    trace.root = fold(e.root, visit)
    return trace


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(e: Expression) -> LabeledGraph:
    labels: list[LabelSet] = []
    names: list[str | None] = []
    edges: set[tuple[int, int]] = set()

    def visit(node: Node, spans: list[tuple[int, int]], where: Where) -> tuple[int, int]:
        if isinstance(node, Create):
            lo = len(labels)
            labels.extend([node.labels] * node.m)
            names.extend(node.names if node.names else [None] * node.m)
            return lo, len(labels)
        if isinstance(node, Join):
            return spans[0][0], spans[-1][1]

        lo, hi = spans[0]
        if isinstance(node, Eta):
            bi, bj = label_bit(node.i), label_bit(node.j)
            side_i, side_j = [], []
            for v in range(lo, hi):
                mask = labels[v]
                if mask & bi and mask & bj:
                    raise EtaPreconditionViolation(where.path(), node.i, node.j, vertex=v)
                if mask & bi:
                    side_i.append(v)
                elif mask & bj:
                    side_j.append(v)
            for u in side_i:
                for v in side_j:
                    edges.add((u, v) if u < v else (v, u))
            return lo, hi

        targets = node.targets if isinstance(node, Rho) else 0
        for v in range(lo, hi):
            labels[v] = relabel_mask(labels[v], node.i, targets)
        return lo, hi

    fold(e.root, visit)
    log.debug("evaluated %d vertices, %d edges", len(labels), len(edges))
    return LabeledGraph(len(labels), tuple(labels), frozenset(edges), tuple(names))


def strip(g: LabeledGraph) -> LabeledGraph:
    return LabeledGraph(g.n, (0,) * g.n, g.edges, g.names)


def present_masks(g: LabeledGraph) -> MaskSignature:
    return frozenset(g.labels)


# ---------------------------------------------------------------------------
# Graph text format
# ---------------------------------------------------------------------------

def format_graph(g: LabeledGraph, with_labels: bool = True, with_names: bool = True) -> str:
    lines = [f"p {g.n} {len(g.edges)}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges))
    if with_labels:
        for v, mask in enumerate(g.labels):
            if mask:
                lines.append("l " + " ".join(str(x) for x in (v, *labels_of(mask))))
    if with_names:
        lines.extend(f"n {v} {name}" for v, name in enumerate(g.names) if name is not None)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LabeledGraph:
    n: int | None = None
    declared_m = 0
    edges: list[tuple[int, int]] = []
    labels: dict[int, LabelSet] = {}
    names: dict[int, str] = {}

    def ints(parts: list[str], line_no: int) -> list[int]:
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"expected integers, got {' '.join(parts)!r}", line_no) from None

    def vertex(v: int, line_no: int) -> int:
        if n is None:
            raise FormatError("'p <n> <m>' header must come first", line_no)
        if not 0 <= v < n:
            raise FormatError(f"vertex {v} out of range 0..{n - 1}", line_no)
        return v

    for line_no, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag, rest = parts[0], parts[1:]
        if tag == "p":
            if n is not None or len(rest) != 2:
                raise FormatError("expected a single 'p <n> <m>' header", line_no)
            n, declared_m = ints(rest, line_no)
            if n < 0 or declared_m < 0:
                raise FormatError(f"negative count in header 'p {n} {declared_m}'", line_no)
        elif tag == "e":
            if len(rest) != 2:
                raise FormatError("expected 'e <u> <v>'", line_no)
            u, v = (vertex(x, line_no) for x in ints(rest, line_no))
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", line_no)
            edges.append((u, v))
        elif tag == "l":
            if not rest:
                raise FormatError("expected 'l <v> <label> ...'", line_no)
            v, *ls = ints(rest, line_no)
            if any(label < 1 for label in ls):
                raise FormatError("labels start at 1", line_no)
            labels[vertex(v, line_no)] = mask_of(ls)
        elif tag == "n":
            if len(rest) != 2:
                raise FormatError("expected 'n <v> <name>'", line_no)
            names[vertex(ints(rest[:1], line_no)[0], line_no)] = rest[1]
        else:
            raise FormatError(f"unknown line type {tag!r}", line_no)

    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    g = LabeledGraph.build(
        n,
        edges,
        labels=(labels.get(v, 0) for v in range(n)),
        names=(names.get(v) for v in range(n)),
    )
    if len(g.edges) != declared_m:
        log.warning("header declares %d edges, found %d distinct", declared_m, len(g.edges))
    return g
