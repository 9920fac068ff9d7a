# File name: expr.py
# Created: 3/2/2026 11:05 AM
# Purpose: Multi-k-expressions: syntax tree, text format (parse/print), validation, width metrics
# Notes:
# - LabelSet is an int bitmask, label l lives at bit l-1
# - Every traversal is iterative (fold / walk); generated expressions nest thousands deep
# - Join nodes flatten nested joins on construction
# Used: Yes

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TypeVar, Union

from main.core.configurator import resolve
from main.core.errors import (
    ExpressionSyntaxError,
    ExpressionValidationError,
    ResourceLimitError,
)


log = logging.getLogger(__name__)

T = TypeVar("T")

LabelSet = int


def label_bit(label: int) -> LabelSet:
    return 1 << (label - 1)


def mask_of(labels: Iterable[int]) -> LabelSet:
    mask = 0
    for label in labels:
        mask |= label_bit(label)
    return mask


def labels_of(mask: LabelSet) -> tuple[int, ...]:
    out = []
    label = 1
    while mask:
        if mask & 1:
            out.append(label)
        mask >>= 1
        label += 1
    return tuple(out)


def relabel_mask(mask: LabelSet, i: int, targets: LabelSet) -> LabelSet:
    """(S' \\ {i}) | targets when i is in S', otherwise S' unchanged."""
    bit = label_bit(i)
    if mask & bit:
        return (mask & ~bit) | targets
    return mask


# ---------------------------------------------------------------------------
# Syntax tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Create:
    m: int
    labels: LabelSet = 0
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ExpressionValidationError(f"atom must create at least one vertex, got m={self.m}")
        if self.labels < 0:
            raise ExpressionValidationError("label set must be a nonnegative bitmask")
        if self.names is not None:
            if len(self.names) != self.m:
                raise ExpressionValidationError(
                    f"atom creates {self.m} vertices but carries {len(self.names)} names"
                )
            for name in self.names:
                if not name or any(ch.isspace() for ch in name):
                    raise ExpressionValidationError(f"invalid vertex name {name!r}")


@dataclass(frozen=True)
class Eta:
    i: int
    j: int
    child: "Node"

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ExpressionValidationError("labels start at 1")
        if self.i == self.j:
            raise ExpressionValidationError(f"eta requires i != j, got eta {self.i} {self.j}")


@dataclass(frozen=True)
class Rho:
    i: int
    targets: LabelSet
    child: "Node"

    def __post_init__(self):
        if self.i < 1:
            raise ExpressionValidationError("labels start at 1")
        if self.targets < 0:
            raise ExpressionValidationError("label set must be a nonnegative bitmask")


@dataclass(frozen=True)
class Eps:
    i: int
    child: "Node"

    def __post_init__(self):
        if self.i < 1:
            raise ExpressionValidationError("labels start at 1")


@dataclass(frozen=True)
class Join:
    children: tuple["Node", ...]

    def __post_init__(self):
        flat: list[Node] = []
        for child in self.children:
            if isinstance(child, Join):
                flat.extend(child.children)
            else:
                flat.append(child)
        object.__setattr__(self, "children", tuple(flat))
        if len(flat) < 2:
            raise ExpressionValidationError("join needs at least two operands")


Node = Union[Create, Eta, Rho, Eps, Join]


def join(*parts: Node) -> Node:
    """Disjoint union of one or more parts; a single part is returned unchanged."""
    if len(parts) == 1:
        return parts[0]
    return Join(tuple(parts))


def children(node: Node) -> tuple[Node, ...]:
    if isinstance(node, Join):
        return node.children
    if isinstance(node, Create):
        return ()
    return (node.child,)


def node_labels(node: Node) -> LabelSet:
    """Labels mentioned by the node itself (not its subtree)."""
    if isinstance(node, Create):
        return node.labels
    if isinstance(node, Eta):
        return label_bit(node.i) | label_bit(node.j)
    if isinstance(node, Rho):
        return label_bit(node.i) | node.targets
    if isinstance(node, Eps):
        return label_bit(node.i)
    return 0


def node_kind(node: Node) -> str:
    return {Create: "v", Eta: "eta", Rho: "rho", Eps: "eps", Join: "join"}[type(node)]


@dataclass(frozen=True)
class Expression:
    """An expression document: declared width k plus the parse tree."""

    width: int
    root: Node

    def __post_init__(self):
        if self.width < 0:
            raise ExpressionValidationError(f"declared width must be >= 0, got {self.width}")
        limit = (1 << self.width) - 1
        for node in walk(self.root):
            used = node_labels(node)
            if used & ~limit:
                worst = max(labels_of(used))
                raise ExpressionValidationError(
                    f"label {worst} in ({node_kind(node)} ...) exceeds declared width k={self.width}"
                )


# ---------------------------------------------------------------------------
# Traversal
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Where:
    """Position of a node occurrence: parent position plus child index."""

    parent: "Where | None"
    index: int

    def path(self) -> tuple[int, ...]:
        out = []
        cur: Where | None = self
        while cur is not None and cur.parent is not None:
            out.append(cur.index)
            cur = cur.parent
        return tuple(reversed(out))


ROOT = Where(None, 0)


def walk(root: Node) -> Iterator[Node]:
    """Pre-order, left to right."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def fold(root: Node, visit: Callable[[Node, list[T], Where], T]) -> T:
    """
    Post-order fold. visit(node, child_values, where) runs once per node occurrence,
    children strictly left to right, so atoms are seen in creation order.
    """
    values: list[T] = []
    stack: list[tuple[Node, bool, Where]] = [(root, False, ROOT)]
    while stack:
        node, expanded, where = stack.pop()
        kids = children(node)
        if expanded or not kids:
            cut = len(values) - len(kids)
            args = values[cut:]
            del values[cut:]
            values.append(visit(node, args, where))
            continue
        stack.append((node, True, where))
        for idx in range(len(kids) - 1, -1, -1):
            stack.append((kids[idx], False, Where(where, idx)))
    return values[0]


def vertex_count(root: Node) -> int:
    return sum(node.m for node in walk(root) if isinstance(node, Create))


# ---------------------------------------------------------------------------
# Width metrics and classes
# ---------------------------------------------------------------------------

def used_width(e: Expression) -> int:
    used = 0
    for node in walk(e.root):
        used |= node_labels(node)
    return used.bit_count()


def is_classical(e: Expression) -> bool:
    for node in walk(e.root):
        if isinstance(node, Create) and node.labels.bit_count() != 1:
            return False
        if isinstance(node, Rho) and node.targets.bit_count() != 1:
            return False
        if isinstance(node, Eps):
            return False
    return True


def is_strict(e: Expression) -> bool:
    return not any(isinstance(node, Rho) for node in walk(e.root))


def _map_labels(node: Node, kids: list[Node], remap: Callable[[int], int]) -> Node:
    def remap_mask(mask: LabelSet) -> LabelSet:
        return mask_of(remap(label) for label in labels_of(mask))

    if isinstance(node, Create):
        return Create(node.m, remap_mask(node.labels), node.names)
    if isinstance(node, Eta):
        return Eta(remap(node.i), remap(node.j), kids[0])
    if isinstance(node, Rho):
        return Rho(remap(node.i), remap_mask(node.targets), kids[0])
    if isinstance(node, Eps):
        return Eps(remap(node.i), kids[0])
    return Join(tuple(kids))


def compact_labels(e: Expression) -> tuple[Expression, dict[int, int]]:
    """Renumber the used labels to 1..used_width, keeping their order."""
    used = 0
    for node in walk(e.root):
        used |= node_labels(node)
    mapping = {old: new for new, old in enumerate(labels_of(used), start=1)}
    if all(old == new for old, new in mapping.items()):
        return Expression(len(mapping), e.root), mapping
    root = fold(e.root, lambda node, kids, _where: _map_labels(node, kids, mapping.__getitem__))
    return Expression(len(mapping), root), mapping


def classical_code(mask: LabelSet) -> int:
    """Classical label encoding a LabelSet: 1 + integer value of the mask."""
    return 1 + mask


def expand_to_classical(e: Expression, label_cap: int | None = None) -> Expression:
    """
    Rewrite e as a classical expression over 2^used_width labels, one per LabelSet
    of the compacted labels.
    Edges are only emitted between label sets actually present at each eta.
    """
    # geval builds on this module
    from main.handlers.geval import step_signature

    cap = resolve(label_cap, "expr.expansion_label_cap")
    e, _ = compact_labels(e)
    codes = 1 << e.width
    if codes > cap:
        raise ResourceLimitError(
            f"classical expansion over {e.width} used labels needs {codes} labels (cap {cap})"
        )

    def visit(node: Node, kids: list[tuple[Node, frozenset[int]]], where: Where):
        sig = step_signature(node, [sig for _, sig in kids], where)
        if isinstance(node, Create):
            return Create(node.m, label_bit(classical_code(node.labels)), node.names), sig
        if isinstance(node, Join):
            return Join(tuple(sub for sub, _ in kids)), sig

        sub, below = kids[0]
        if isinstance(node, Eta):
            bi, bj = label_bit(node.i), label_bit(node.j)
            for a in sorted(m for m in below if m & bi):
                for b in sorted(m for m in below if m & bj):
                    sub = Eta(classical_code(a), classical_code(b), sub)
            return sub, sig

        targets = node.targets if isinstance(node, Rho) else 0
        for a in sorted(below):
            image = relabel_mask(a, node.i, targets)
            if image != a:
                sub = Rho(classical_code(a), label_bit(classical_code(image)), sub)
        return sub, sig

    root, _ = fold(e.root, visit)
    log.debug("expanded width %d expression to %d classical labels", e.width, codes)
    return Expression(codes, root)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_HEADER = re.compile(r"#mcw\s+k\s*=\s*(\d+)\s*$")

_TOKEN = re.compile(
    r"""
    (?P<nl>\n)
  | (?P<ws>[ \t\r\f\v]+)
  | (?P<meta>;@[^\n]*)
  | (?P<comment>;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<int>\d+(?![^\s();]))
  | (?P<sym>[^\s();]+)
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    value: object
    line: int
    column: int


@dataclass
class _Frame:
    line: int
    column: int
    items: list


@dataclass(frozen=True)
class _LabelList:
    labels: tuple[int, ...]


def _tokenize(text: str, line: int) -> Iterator[_Token]:
    line_start = 0
    for match in _TOKEN.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == "nl":
            line += 1
            line_start = match.end()
        elif kind in ("ws", "comment"):
            continue
        elif kind == "meta":
            yield _Token("meta", tuple(match.group()[2:].split()), line, column)
        elif kind == "int":
            yield _Token("int", int(match.group()), line, column)
        else:
            yield _Token(kind, match.group(), line, column)


def _split_header(text: str) -> tuple[int, str, int]:
    lines = text.split("\n")
    for idx, raw in enumerate(lines):
        stripped = raw.strip()
        if not stripped or (stripped.startswith(";") and not stripped.startswith(";@")):
            continue
        found = _HEADER.match(stripped)
        if not found:
            raise ExpressionSyntaxError("expected header '#mcw k=<integer>'", idx + 1, 1)
        return int(found.group(1)), "\n".join(lines[idx + 1:]), idx + 2
    raise ExpressionSyntaxError("empty document, expected header '#mcw k=<integer>'", 1, 1)


class _Builder:
    def __init__(self, width: int):
        self.width = width

    def label(self, token: _Token) -> int:
        value = token.value
        if not isinstance(value, int) or token.kind != "int":
            raise ExpressionSyntaxError(f"expected a label, got {value!r}", token.line, token.column)
        if value < 1:
            raise ExpressionValidationError("labels start at 1", token.line, token.column)
        if value > self.width:
            raise ExpressionValidationError(
                f"label {value} exceeds declared width k={self.width}", token.line, token.column
            )
        return value

    def build(self, frame: _Frame) -> Node | _LabelList:
        items: list[_Token] = frame.items
        if not items or items[0].kind == "int":
            return _LabelList(tuple(self.label(t) for t in items))

        head = items[0]
        args = items[1:]
        if head.kind != "sym":
            raise ExpressionSyntaxError("expected an operator after '('", head.line, head.column)

        def expect(shape: str, *kinds: str) -> None:
            if len(args) != len(kinds) or any(t.kind != k for t, k in zip(args, kinds)):
                raise ExpressionSyntaxError(f"expected ({shape})", frame.line, frame.column)

        op = head.value
        if op == "v":
            if not args or any(t.kind != "int" for t in args):
                raise ExpressionSyntaxError("expected (v <m> <label> ...)", frame.line, frame.column)
            m = args[0].value
            if m < 1:
                raise ExpressionValidationError(
                    f"atom must create at least one vertex, got m={m}", args[0].line, args[0].column
                )
            return Create(m, mask_of(self.label(t) for t in args[1:]))
        if op == "eta":
            expect("eta <i> <j> <expression>", "int", "int", "node")
            i, j = self.label(args[0]), self.label(args[1])
            if i == j:
                raise ExpressionValidationError(
                    f"(eta {i} {j} ...) requires i != j", frame.line, frame.column
                )
            return Eta(i, j, args[2].value)
        if op == "rho":
            expect("rho <i> (<label> ...) <expression>", "int", "list", "node")
            return Rho(self.label(args[0]), mask_of(args[1].value.labels), args[2].value)
        if op == "eps":
            expect("eps <i> <expression>", "int", "node")
            return Eps(self.label(args[0]), args[1].value)
        if op == "join":
            if len(args) < 2 or any(t.kind != "node" for t in args):
                raise ExpressionSyntaxError(
                    "expected (join <expression> <expression> ...)", frame.line, frame.column
                )
            return Join(tuple(t.value for t in args))
        raise ExpressionSyntaxError(f"unknown operator {op!r}", head.line, head.column)


def parse_expression(text: str) -> Expression:
    width, body, first_line = _split_header(text)
    builder = _Builder(width)
    stack: list[_Frame] = []
    result: Node | None = None
    last_closed: tuple[list, int] | None = None

    for token in _tokenize(body, first_line):
        if token.kind == "meta":
            target = None
            if last_closed is not None:
                container, idx = last_closed
                target = container[idx]
            if target is None or not isinstance(target.value, Create) or target.value.names:
                raise ExpressionSyntaxError(
                    "name comment ';@' must directly follow a (v ...) atom", token.line, token.column
                )
            atom: Create = target.value
            if len(token.value) != atom.m:
                raise ExpressionValidationError(
                    f"atom creates {atom.m} vertices but carries {len(token.value)} names",
                    token.line,
                    token.column,
                )
            target.value = Create(atom.m, atom.labels, token.value)
            last_closed = None
            continue

        last_closed = None
        if token.kind == "open":
            stack.append(_Frame(token.line, token.column, []))
        elif token.kind == "close":
            if not stack:
                raise ExpressionSyntaxError("unexpected ')'", token.line, token.column)
            frame = stack.pop()
            built = builder.build(frame)
            kind = "list" if isinstance(built, _LabelList) else "node"
            wrapped = _Token(kind, built, frame.line, frame.column)
            if stack:
                stack[-1].items.append(wrapped)
                last_closed = (stack[-1].items, len(stack[-1].items) - 1)
            else:
                if kind != "node":
                    raise ExpressionSyntaxError("expected an expression", frame.line, frame.column)
                if result is not None:
                    raise ExpressionSyntaxError(
                        "more than one top-level expression", frame.line, frame.column
                    )
                holder = [wrapped]
                last_closed = (holder, 0)
                result = holder
        else:
            if not stack:
                raise ExpressionSyntaxError(
                    f"unexpected {token.value!r} outside parentheses", token.line, token.column
                )
            stack[-1].items.append(token)

    if stack:
        frame = stack[-1]
        raise ExpressionSyntaxError("unclosed '('", frame.line, frame.column)
    if result is None:
        raise ExpressionSyntaxError("missing expression body", first_line, 1)
    return Expression(width, result[0].value)


def format_node(node: Node) -> str:
    out: list[str] = []
    stack: list[Node | str] = [node]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, Create):
            out.append("(v " + " ".join(str(x) for x in (item.m, *labels_of(item.labels))) + ")")
            if item.names:
                out.append(" ;@ " + " ".join(item.names) + "\n")
        elif isinstance(item, Eta):
            out.append(f"(eta {item.i} {item.j} ")
            stack.extend((")", item.child))
        elif isinstance(item, Rho):
            targets = " ".join(str(x) for x in labels_of(item.targets))
            out.append(f"(rho {item.i} ({targets}) ")
            stack.extend((")", item.child))
        elif isinstance(item, Eps):
            out.append(f"(eps {item.i} ")
            stack.extend((")", item.child))
        else:
            out.append("(join")
            stack.append(")")
            for child in reversed(item.children):
                stack.extend((child, " "))
    return "".join(out)


def format_expression(e: Expression) -> str:
    return f"#mcw k={e.width}\n{format_node(e.root)}\n"
