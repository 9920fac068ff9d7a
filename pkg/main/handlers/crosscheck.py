# File name: crosscheck.py
# Created: 3/12/2026 9:15 AM
# Purpose: DP-vs-oracle harness behind `check`
# Notes:
# - One CheckResult per (subject, operation); skipped operations are recorded, never hidden
# - Failures name the expression, the operation and the first differing entry
# - to_frame() gives the long table: subject | operation | status | detail
# Used: Yes

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

import pandas as pd

from main.core.configurator import resolve
from main.core.errors import McwError
from main.handlers import coloring, indpoly, oracle
from main.handlers.expr import Expression, expand_to_classical, is_classical, is_strict, used_width
from main.handlers.geval import evaluate
from main.handlers.oracle import CorpusEntry
from main.handlers.treedec import compile_td


log = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class CheckResult:
    subject: str
    operation: str
    status: str
    detail: str = ""

    def line(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.subject}: {self.operation}: {self.status}{tail}"


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, subject: str, operation: str, status: str, detail: str = "") -> CheckResult:
        result = CheckResult(subject, operation, status, detail)
        self.results.append(result)
        if status == FAIL:
            log.error("%s", result.line())
        return result

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.subject, r.operation, r.status, r.detail) for r in self.results],
            columns=["subject", "operation", "status", "detail"],
        )

    def summary(self) -> pd.DataFrame:
        frame = self.to_frame()
        if frame.empty:
            return frame
        return (
            frame.groupby(["operation", "status"]).size().unstack(fill_value=0).reset_index()
        )


def first_table_difference(
    got: dict[tuple[int, int], int], want: dict[tuple[int, int], int], k: int
) -> str | None:
    for size, mask in sorted(set(got) | set(want)):
        a, b = got.get((size, mask), 0), want.get((size, mask), 0)
        if a != b:
            bits = format(mask, f"0{k}b")[::-1] if k else "-"
            return f"entry (size {size}, mask {bits}): dp {a}, oracle {b}"
    return None


def first_list_difference(got: list[int], want: list[int]) -> str | None:
    for idx in range(max(len(got), len(want))):
        a = got[idx] if idx < len(got) else 0
        b = want[idx] if idx < len(want) else 0
        if a != b:
            return f"coefficient {idx}: dp {a}, oracle {b}"
    return None


def _projected(table: dict[tuple[int, int], int]) -> list[int]:
    out: list[int] = []
    for (size, _), value in table.items():
        out.extend([0] * (size + 1 - len(out)))
        out[size] += value
    return out


def _check_indpoly(report: CheckReport, entry: CorpusEntry) -> None:
    name, e, g = entry.name, entry.expression, entry.graph
    truth = entry.is_table
    if truth is None:
        report.add(name, "indpoly", SKIP, f"n={g.n}")
        return
    want = truth.table()
    for method in ("school", "transform"):
        p = indpoly.run(e, method=method)
        diff = first_table_difference(p.table(), want, e.width)
        report.add(name, f"indpoly[{method}]", FAIL if diff else PASS, diff or "")

    p = indpoly.run(e)
    if p.n_cap != g.n or not p.within_cap():
        report.add(name, "n_cap", FAIL, f"n_cap {p.n_cap}, vertices {g.n}, degree {len(indpoly.project(p)) - 1}")
    else:
        report.add(name, "n_cap", PASS)
    summed = _projected(p.table())
    diff = first_list_difference(indpoly.project(p), summed) or first_list_difference(
        indpoly.project(p), _projected(want)
    )
    report.add(name, "project", FAIL if diff else PASS, diff or "")

    chosen = indpoly.max_is(e)
    adj = g.adjacency()
    clash = next(((u, v) for u in chosen for v in chosen if adj[u] >> v & 1), None)
    degree = len(indpoly.project(p)) - 1
    if clash is not None:
        report.add(name, "max_is", FAIL, f"vertices {clash[0]} and {clash[1]} are adjacent")
    elif len(chosen) != degree:
        report.add(name, "max_is", FAIL, f"size {len(chosen)}, deg I(x) = {degree}")
    else:
        report.add(name, "max_is", PASS)


def _check_coloring(report: CheckReport, entry: CorpusEntry, colors: Iterable[int]) -> None:
    name, e, g = entry.name, entry.expression, entry.graph
    cap = resolve(None, "coloring.table_bits_cap")
    for c in colors:
        truth = entry.colorings(c)
        if truth is None:
            report.add(name, "color", SKIP, f"n={g.n}")
            return
        decisions = {}
        for rule in ("exact", "single"):
            decisions[rule] = coloring.colorable(e, c, rule=rule)
            status = PASS if decisions[rule] == truth.colorable else FAIL
            detail = "" if status == PASS else f"dp {decisions[rule]}, oracle {truth.colorable}"
            report.add(name, f"color[c={c},{rule}]", status, detail)

        if c * e.width > cap:
            report.add(name, f"color-table[c={c}]", SKIP, f"c*k={c * e.width}")
            continue
        got = coloring.color_table(e, c, rule="exact").true_masks()
        extra = sorted(got - truth.masks)
        missing = sorted(truth.masks - got)
        if extra or missing:
            first = (extra or missing)[0]
            side = "dp only" if extra else "oracle only"
            report.add(name, f"color-table[c={c}]", FAIL, f"incidence mask {first:#b} ({side})")
        else:
            report.add(name, f"color-table[c={c}]", PASS)


def _check_expand(report: CheckReport, entry: CorpusEntry) -> None:
    name, e, g = entry.name, entry.expression, entry.graph
    k = used_width(e)
    if k > resolve(None, "check.expand_max_width"):
        report.add(name, "expand", SKIP, f"used k={k}")
        return
    x = expand_to_classical(e)
    gx = evaluate(x)
    if not is_classical(x):
        report.add(name, "expand", FAIL, "output is not classical")
    elif used_width(x) > 1 << k:
        report.add(name, "expand", FAIL, f"uses {used_width(x)} labels, bound {1 << k}")
    elif gx.n != g.n or gx.edges != g.edges:
        diff = sorted(gx.edges ^ g.edges)
        report.add(name, "expand", FAIL, f"edge sets differ first at {diff[0] if diff else 'vertex count'}")
    else:
        report.add(name, "expand", PASS)


def _check_compile(report: CheckReport, entry: CorpusEntry) -> None:
    name, g = entry.name, entry.graph
    if g.n > resolve(None, "check.compile_max_vertices"):
        report.add(name, "compile", SKIP, f"n={g.n}")
        return
    tw, td = oracle.brute_treewidth(g)
    compiled = compile_td(td)
    back = evaluate(compiled)
    if not back.same_named_graph(g):
        diff = sorted(tuple(sorted(edge)) for edge in back.named_edges() ^ g.named_edges())
        report.add(name, "compile", FAIL, f"round trip differs first at {diff[0] if diff else 'vertex names'}")
    elif not is_strict(compiled):
        report.add(name, "compile", FAIL, "compiled expression uses rho")
    elif used_width(compiled) > tw + 2:
        report.add(name, "compile", FAIL, f"used width {used_width(compiled)} > tw + 2 = {tw + 2}")
    else:
        report.add(name, "compile", PASS)


def check_entry(
    entry: CorpusEntry, colors: Iterable[int] | None = None, report: CheckReport | None = None
) -> CheckReport:
    report = report if report is not None else CheckReport()
    colors = list(resolve(colors, "check.colors"))
    try:
        entry.graph  # cached for the checks below
    except McwError as exc:
        report.add(entry.name, "evaluate", FAIL, str(exc))
        return report

    for step in (
        lambda: _check_indpoly(report, entry),
        lambda: _check_coloring(report, entry, colors),
        lambda: _check_expand(report, entry),
        lambda: _check_compile(report, entry),
    ):
        try:
            step()
        except McwError as exc:
            report.add(entry.name, "error", FAIL, str(exc))
    return report


def check_expression(
    name: str, e: Expression, colors: Iterable[int] | None = None, report: CheckReport | None = None
) -> CheckReport:
    return check_entry(CorpusEntry(name, e), colors, report)


def check_corpus(entries: Iterable[CorpusEntry], colors: Iterable[int] | None = None) -> CheckReport:
    report = CheckReport()
    for entry in entries:
        log.debug("checking %s", entry.name)
        check_entry(entry, colors, report)
    return report
