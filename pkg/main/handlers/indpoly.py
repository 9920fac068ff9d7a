# File name: indpoly.py
# Created: 3/6/2026 7:30 PM
# Purpose: [k]-labeled independent set polynomial by DP over the expression tree, I(x), max IS
# Notes:
# - Table is sparse over masks, dense over sizes: coeffs[mask] = (a_0, a_1, ...)
# - Coefficient tuples are never mutated once stored, so untouched masks are shared between steps
# - Label substitution and square reduction happen together in the mask rewrite
# Used: Yes

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass, field
from itertools import repeat
from typing import Iterable, Mapping

from main.core.configurator import resolve
from main.core.errors import DimensionMismatchError, EtaPreconditionViolation
from main.handlers.expr import (
    Create,
    Eta,
    Expression,
    Join,
    LabelSet,
    Node,
    Rho,
    Where,
    children,
    fold,
    label_bit,
    relabel_mask,
)
from main.handlers.geval import MaskSignature, step_signature


log = logging.getLogger(__name__)

Coeffs = tuple[int, ...]


def _trim(seq: Iterable[int]) -> Coeffs:
    out = list(seq)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    return tuple(map(operator.add, a, b)) + a[len(b):]


def _convolve(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return ()
    if len(b) == 1 and b[0] == 1:
        return a
    out = [0] * (len(a) + len(b) - 1)
    width = len(a)
    for shift, scale in enumerate(b):
        if not scale:
            continue
        row = a if scale == 1 else map(operator.mul, a, repeat(scale, width))
        out[shift:shift + width] = map(operator.add, out[shift:shift + width], row)
    return tuple(out)


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a = a + (0,) * (len(b) - len(a))
    return tuple(map(operator.sub, a, b)) + a[len(b):]


@dataclass(frozen=True)
class LabeledISPolynomial:
    k: int
    coeffs: Mapping[LabelSet, Coeffs]
    n_cap: int = field(default=0, compare=False)

    def __post_init__(self):
        clean = {}
        for mask, seq in self.coeffs.items():
            if not isinstance(seq, tuple) or (seq and seq[-1] == 0):
                seq = _trim(seq)
            if seq:
                clean[mask] = seq
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def unit(cls, k: int) -> "LabeledISPolynomial":
        return cls(k, {0: (1,)}, 0)

    @classmethod
    def from_table(cls, k: int, table: Mapping[tuple[int, LabelSet], int], n_cap: int = 0):
        grouped: dict[LabelSet, list[int]] = {}
        for (size, mask), value in table.items():
            row = grouped.setdefault(mask, [])
            row.extend([0] * (size + 1 - len(row)))
            row[size] += value
        return cls(k, {mask: tuple(row) for mask, row in grouped.items()}, n_cap)

    def coeff(self, size: int, mask: LabelSet) -> int:
        seq = self.coeffs.get(mask, ())
        return seq[size] if 0 <= size < len(seq) else 0

    def table(self) -> dict[tuple[int, LabelSet], int]:
        return {
            (size, mask): value
            for mask, seq in self.coeffs.items()
            for size, value in enumerate(seq)
            if value
        }

    def total(self) -> int:
        return sum(sum(seq) for seq in self.coeffs.values())

    def stored_entries(self) -> int:
        return sum(len(seq) for seq in self.coeffs.values())

    def within_cap(self) -> bool:
        """No stored size exceeds n_cap, the vertex count of the subexpression."""
        return all(len(seq) <= self.n_cap + 1 for seq in self.coeffs.values())


@dataclass
class MisTable:
    """Per-mask best independent set size plus the link needed to rebuild a witness."""

    best: dict[LabelSet, int]
    links: dict[LabelSet, object]


# ---------------------------------------------------------------------------
# DP rules
# ---------------------------------------------------------------------------

def binomials(m: int) -> list[int]:
    """C(m, 0..m) via C(m, l+1) = C(m, l) (m - l) / (l + 1)."""
    row = [1]
    for ell in range(m):
        row.append(row[-1] * (m - ell) // (ell + 1))
    return row


def atom_poly(m: int, labels: LabelSet, k: int) -> LabeledISPolynomial:
    row = binomials(m)
    if not labels:
        return LabeledISPolynomial(k, {0: tuple(row)}, m)
    return LabeledISPolynomial(k, {0: (1,), labels: (0, *row[1:])}, m)


def check_eta(sig: MaskSignature, i: int, j: int, path: tuple[int, ...] = ()) -> None:
    both = label_bit(i) | label_bit(j)
    for mask in sig:
        if mask & both == both:
            raise EtaPreconditionViolation(path, i, j, mask=mask)


def apply_eta(p: LabeledISPolynomial, i: int, j: int, sig: MaskSignature) -> LabeledISPolynomial:
    check_eta(sig, i, j)
    both = label_bit(i) | label_bit(j)
    kept = {mask: seq for mask, seq in p.coeffs.items() if mask & both != both}
    return LabeledISPolynomial(p.k, kept, p.n_cap)


def apply_rho(p: LabeledISPolynomial, i: int, targets: LabelSet) -> LabeledISPolynomial:
    bit = label_bit(i)
    if not any(mask & bit for mask in p.coeffs):
        return p
    out: dict[LabelSet, Coeffs] = {}
    for mask, seq in p.coeffs.items():
        image = relabel_mask(mask, i, targets)
        out[image] = _add(out[image], seq) if image in out else seq
    return LabeledISPolynomial(p.k, out, p.n_cap)


def apply_eps(p: LabeledISPolynomial, i: int) -> LabeledISPolynomial:
    return apply_rho(p, i, 0)


def _join_school(p1: LabeledISPolynomial, p2: LabeledISPolynomial) -> dict[LabelSet, Coeffs]:
    out: dict[LabelSet, Coeffs] = {}
    for m1, a in p1.coeffs.items():
        for m2, b in p2.coeffs.items():
            mask = m1 | m2
            prod = _convolve(a, b)
            out[mask] = _add(out[mask], prod) if mask in out else prod
    return out


def _zeta(values: list[Coeffs], k: int, sign: int) -> list[Coeffs]:
    """Subset-sum transform over k bits (sign=-1 gives the Moebius inverse)."""
    values = list(values)
    for bit in range(k):
        step = 1 << bit
        for mask in range(1 << k):
            if mask & step:
                low = values[mask ^ step]
                if low:
                    values[mask] = _add(values[mask], low) if sign > 0 else _sub(values[mask], low)
    return values


def _join_transform(p1: LabeledISPolynomial, p2: LabeledISPolynomial) -> dict[LabelSet, Coeffs]:
    k = p1.k
    size = 1 << k
    f = [p1.coeffs.get(mask, ()) for mask in range(size)]
    g = [p2.coeffs.get(mask, ()) for mask in range(size)]
    fz, gz = _zeta(f, k, +1), _zeta(g, k, +1)
    hz = [_convolve(a, b) if a and b else () for a, b in zip(fz, gz)]
    h = _zeta(hz, k, -1)
    return {mask: seq for mask, seq in enumerate(h) if any(seq)}


def join_poly(
    p1: LabeledISPolynomial, p2: LabeledISPolynomial, method: str | None = None
) -> LabeledISPolynomial:
    if p1.k != p2.k:
        raise DimensionMismatchError(f"cannot join polynomials of width {p1.k} and {p2.k}")
    method = resolve(method, "indpoly.join_method")
    if method == "school":
        coeffs = _join_school(p1, p2)
    elif method == "transform":
        coeffs = _join_transform(p1, p2)
    else:
        raise ValueError(f"unknown join method {method!r}")
    return LabeledISPolynomial(p1.k, coeffs, p1.n_cap + p2.n_cap)


def run(e: Expression, method: str | None = None) -> LabeledISPolynomial:
    method = resolve(method, "indpoly.join_method")
    k = e.width

    def visit(node: Node, below: list, where: Where):
        sig = step_signature(node, [s for _, s in below], where)
        if isinstance(node, Create):
            return atom_poly(node.m, node.labels, k), sig
        if isinstance(node, Join):
            acc = below[0][0]
            for p, _ in below[1:]:
                acc = join_poly(acc, p, method)
            return acc, sig
        p, below_sig = below[0]
        if isinstance(node, Eta):
            return apply_eta(p, node.i, node.j, below_sig), sig
        if isinstance(node, Rho):
            return apply_rho(p, node.i, node.targets), sig
        return apply_eps(p, node.i), sig

    poly, _ = fold(e.root, visit)
    log.debug(
        "labeled polynomial: n_cap %d, %d masks, %d stored entries",
        poly.n_cap,
        len(poly.coeffs),
        poly.stored_entries(),
    )
    return poly


def project(p: LabeledISPolynomial) -> list[int]:
    """I(x) = P(x, 1, ..., 1)."""
    acc: Coeffs = ()
    for seq in p.coeffs.values():
        acc = _add(acc, seq)
    return list(_trim(acc)) or [0]


# ---------------------------------------------------------------------------
# Maximum independent set
# ---------------------------------------------------------------------------

def _mis_join(left: MisTable, right: MisTable) -> MisTable:
    best: dict[LabelSet, int] = {}
    links: dict[LabelSet, object] = {}
    for m1, s1 in left.best.items():
        for m2, s2 in right.best.items():
            mask = m1 | m2
            if s1 + s2 > best.get(mask, -1):
                best[mask] = s1 + s2
                links[mask] = (m1, m2)
    return MisTable(best, links)


def _mis_step(node: Node, below: list[MisTable]) -> MisTable:
    if isinstance(node, Create):
        if not node.labels:
            return MisTable({0: node.m}, {0: node.m})
        return MisTable({0: 0, node.labels: node.m}, {0: 0, node.labels: node.m})
    if isinstance(node, Join):
        acc = below[0]
        for other in below[1:]:
            acc = _mis_join(acc, other)
        return acc
    table = below[0]
    if isinstance(node, Eta):
        both = label_bit(node.i) | label_bit(node.j)
        kept = {mask: size for mask, size in table.best.items() if mask & both != both}
        return MisTable(kept, {mask: mask for mask in kept})
    targets = node.targets if isinstance(node, Rho) else 0
    best: dict[LabelSet, int] = {}
    links: dict[LabelSet, object] = {}
    for mask, size in table.best.items():
        image = relabel_mask(mask, node.i, targets)
        if size > best.get(image, -1):
            best[image] = size
            links[image] = mask
    return MisTable(best, links)


def max_is(e: Expression) -> frozenset[int]:
    """A maximum independent set of evaluate(e), rebuilt from per-mask (max, +) tables."""
    tables: dict[int, MisTable] = {}
    sizes: dict[int, int] = {}

    def visit(node: Node, below: list, where: Where):
        sig = step_signature(node, [s for _, s, _ in below], where)
        table = _mis_step(node, [t for t, _, _ in below])
        size = node.m if isinstance(node, Create) else sum(n for _, _, n in below)
        tables[id(node)] = table
        sizes[id(node)] = size
        return table, sig, size

    root_table, _, _ = fold(e.root, visit)
    mask = max(sorted(root_table.best), key=root_table.best.__getitem__)
    chosen = _backtrack(e.root, mask, tables, sizes)
    log.debug("maximum independent set of size %d", len(chosen))
    return frozenset(chosen)


def _backtrack(
    root: Node, mask: LabelSet, tables: dict[int, MisTable], sizes: dict[int, int]
) -> list[int]:
    chosen: list[int] = []
    stack: list[tuple[Node, LabelSet, int]] = [(root, mask, 0)]
    while stack:
        node, want, offset = stack.pop()
        if isinstance(node, Create):
            take = tables[id(node)].links[want]
            chosen.extend(range(offset, offset + take))
            continue
        if isinstance(node, Join):
            parts = children(node)
            for part, part_want in zip(parts, _split_join(parts, want, tables)):
                stack.append((part, part_want, offset))
                offset += sizes[id(part)]
            continue
        stack.append((node.child, tables[id(node)].links[want], offset))
    return chosen


def _split_join(parts: tuple[Node, ...], want: LabelSet, tables: dict[int, MisTable]) -> list[LabelSet]:
    """Replay the left-to-right pairwise join to recover the mask each part contributes."""
    prefixes = [tables[id(parts[0])]]
    for part in parts[1:]:
        prefixes.append(_mis_join(prefixes[-1], tables[id(part)]))
    wants = [0] * len(parts)
    for idx in range(len(parts) - 1, 0, -1):
        left, right = prefixes[idx].links[want]
        wants[idx] = right
        want = left
    wants[0] = want
    return wants
