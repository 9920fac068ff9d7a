# File name: coloring.py
# Created: 3/8/2026 2:15 PM
# Purpose: c-colorability by DP over color x label incidence graphs
# Notes:
# - Table index is an edge mask over c*k bits; (color q, label l) sits at bit (q-1)*k + (l-1)
# - Join is a union-product: zeta transform, pointwise product, Moebius inverse (int64; the
#   wrap-around in intermediate sums cancels because final counts stay below 3^(ck))
# - atom_rule "exact" makes table(E) literally mean "some proper coloring realizes E";
#   "single" is the one-color-per-atom rule, enough for the yes/no answer
# Used: Yes

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from main.core.configurator import resolve
from main.core.errors import (
    DimensionMismatchError,
    EtaPreconditionViolation,
    ResourceLimitError,
)
from main.handlers.expr import (
    Create,
    Eta,
    Expression,
    Join,
    LabelSet,
    Node,
    Rho,
    Where,
    compact_labels,
    fold,
    label_bit,
    used_width,
)
from main.handlers.geval import MaskSignature, step_signature


log = logging.getLogger(__name__)


def bit_position(q: int, label: int, k: int) -> int:
    """Bit of the incidence (q, label); both 1-based."""
    return (q - 1) * k + (label - 1)


def spread(labels: LabelSet, q: int, k: int) -> int:
    """Edge mask {q} x labels."""
    return labels << ((q - 1) * k)


@lru_cache(maxsize=32)
def _indices(bits: int) -> np.ndarray:
    out = np.arange(1 << bits, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(eq=False)
class ColorTable:
    c: int
    k: int
    truth: np.ndarray

    @property
    def bits(self) -> int:
        return self.c * self.k

    def true_masks(self) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.truth))

    def count(self) -> int:
        return int(np.count_nonzero(self.truth))

    def any(self) -> bool:
        return bool(self.truth.any())

    def same_as(self, other: "ColorTable") -> bool:
        return self.c == other.c and self.k == other.k and np.array_equal(self.truth, other.truth)


def check_cap(c: int, k: int, cap: int | None = None) -> None:
    cap = resolve(cap, "coloring.table_bits_cap")
    if c * k > cap:
        raise ResourceLimitError(f"color table needs c*k = {c}*{k} = {c * k} bits (cap {cap})")


def color_atom(
    m: int, labels: LabelSet, c: int, k: int, rule: str | None = None, cap: int | None = None
) -> ColorTable:
    check_cap(c, k, cap)
    rule = resolve(rule, "coloring.atom_rule")
    truth = np.zeros(1 << (c * k), dtype=bool)
    if not labels:
        truth[0] = True
        return ColorTable(c, k, truth)

    if rule == "single":
        limit = 1
    elif rule == "exact":
        limit = min(m, c)
    else:
        raise ValueError(f"unknown atom rule {rule!r}")

    subsets = np.arange(1, 1 << c, dtype=np.int64)
    used = np.zeros_like(subsets)
    edges = np.zeros_like(subsets)
    for q in range(1, c + 1):
        has = (subsets >> (q - 1)) & 1
        used += has
        edges |= has * spread(labels, q, k)
    truth[edges[used <= limit]] = True
    return ColorTable(c, k, truth)


def _incidence(idx: np.ndarray, label: int, c: int, k: int) -> list[np.ndarray]:
    return [(idx >> bit_position(q, label, k)) & 1 for q in range(1, c + 1)]


def color_eta(
    t: ColorTable, i: int, j: int, sig: MaskSignature | None = None
) -> ColorTable:
    if sig is not None:
        both = label_bit(i) | label_bit(j)
        for mask in sig:
            if mask & both == both:
                raise EtaPreconditionViolation((), i, j, mask=mask)
    idx = _indices(t.bits)
    clash = np.zeros(idx.shape, dtype=bool)
    for hi, hj in zip(_incidence(idx, i, t.c, t.k), _incidence(idx, j, t.c, t.k)):
        clash |= (hi & hj).astype(bool)
    return ColorTable(t.c, t.k, t.truth & ~clash)


def rewrite_edges(masks: np.ndarray, i: int, targets: LabelSet, c: int, k: int) -> np.ndarray:
    """Replace every edge (q, i) by {q} x targets; other edges stay."""
    strip = 0
    for q in range(1, c + 1):
        strip |= 1 << bit_position(q, i, k)
    out = masks & ~np.int64(strip)
    for q in range(1, c + 1):
        has = (masks >> bit_position(q, i, k)) & 1
        out |= has * spread(targets, q, k)
    return out


def color_rho(t: ColorTable, i: int, targets: LabelSet) -> ColorTable:
    source = np.flatnonzero(t.truth).astype(np.int64)
    truth = np.zeros_like(t.truth)
    truth[rewrite_edges(source, i, targets, t.c, t.k)] = True
    return ColorTable(t.c, t.k, truth)


def color_eps(t: ColorTable, i: int) -> ColorTable:
    return color_rho(t, i, 0)


def _zeta(values: np.ndarray, bits: int, sign: int) -> np.ndarray:
    out = values.copy()
    for bit in range(bits):
        view = out.reshape(-1, 2, 1 << bit)
        if sign > 0:
            view[:, 1, :] += view[:, 0, :]
        else:
            view[:, 1, :] -= view[:, 0, :]
    return out


def _join_zeta(t1: ColorTable, t2: ColorTable) -> np.ndarray:
    bits = t1.bits
    f = _zeta(t1.truth.astype(np.int64), bits, +1)
    g = _zeta(t2.truth.astype(np.int64), bits, +1)
    with np.errstate(over="ignore"):
        h = _zeta(f * g, bits, -1)
    return h > 0


def _join_direct(t1: ColorTable, t2: ColorTable) -> np.ndarray:
    a = np.flatnonzero(t1.truth)
    b = np.flatnonzero(t2.truth)
    truth = np.zeros_like(t1.truth)
    if a.size and b.size:
        truth[np.bitwise_or.outer(a, b).ravel()] = True
    return truth


def color_join(t1: ColorTable, t2: ColorTable, method: str | None = None) -> ColorTable:
    if (t1.c, t1.k) != (t2.c, t2.k):
        raise DimensionMismatchError(
            f"cannot join color tables with (c, k) = {(t1.c, t1.k)} and {(t2.c, t2.k)}"
        )
    method = resolve(method, "coloring.join_method")
    if method == "zeta":
        truth = _join_zeta(t1, t2)
    elif method == "direct":
        truth = _join_direct(t1, t2)
    else:
        raise ValueError(f"unknown join method {method!r}")
    return ColorTable(t1.c, t1.k, truth)


def color_table(
    e: Expression,
    c: int,
    rule: str | None = None,
    method: str | None = None,
    cap: int | None = None,
) -> ColorTable:
    """Root table of the DP over e itself (labels as declared)."""
    if c < 1:
        raise ValueError("need at least one color")
    k = e.width
    check_cap(c, k, cap)
    rule = resolve(rule, "coloring.atom_rule")
    method = resolve(method, "coloring.join_method")

    def visit(node: Node, below: list, where: Where):
        sig = step_signature(node, [s for _, s in below], where)
        if isinstance(node, Create):
            return color_atom(node.m, node.labels, c, k, rule, cap=c * k), sig
        if isinstance(node, Join):
            acc = below[0][0]
            for t, _ in below[1:]:
                acc = color_join(acc, t, method)
            return acc, sig
        t = below[0][0]
        if isinstance(node, Eta):
            return color_eta(t, node.i, node.j), sig
        if isinstance(node, Rho):
            return color_rho(t, node.i, node.targets), sig
        return color_eps(t, node.i), sig

    table, _ = fold(e.root, visit)
    return table


def colorable(
    e: Expression,
    c: int,
    rule: str | None = None,
    method: str | None = None,
    cap: int | None = None,
) -> bool:
    check_cap(c, used_width(e), cap)
    compact, _ = compact_labels(e)
    table = color_table(compact, c, rule=rule, method=method, cap=cap)
    log.debug("colorable c=%d: %d true root entries", c, table.count())
    return table.any()
