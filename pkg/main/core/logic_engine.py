# File name: logic_engine.py
# Created: 1/23/2026 7:16 PM
# Purpose: Per-invocation engine: input loading, output writing, phase timing
# Notes:
# - "-" means stdin for inputs and stdout for outputs
# - Phase timings land in RunState under "timings" and are reported on stderr
# Used: Yes

from __future__ import annotations

import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator

from rich.table import Table

from main.core.console import console
from main.core.errors import McwError
from main.core.run_state import RunState
from main.handlers.expr import Expression, parse_expression
from main.handlers.geval import LabeledGraph, parse_graph
from main.handlers.treedec import TreeDecomposition, parse_td


log = logging.getLogger(__name__)


class Engine:
    def __init__(self, output: str | None = None, timed: bool = False):
        self.state = RunState()
        self.output = output
        self.timed = timed

    def get_state(self) -> RunState:
        return self.state

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            previous = self.state.find(f"timings.{name}", 0.0)
            self.state.insert_data(f"timings.{name}", previous + elapsed)
            log.debug("phase %s took %.4fs", name, elapsed)

    def read_text(self, path: str) -> str:
        if path == "-":
            return sys.stdin.read()
        try:
            with open(path, "r", encoding="utf-8") as f:
                return f.read()
        except OSError as exc:
            raise McwError(f"cannot read {path}: {exc.strerror}") from None

    def load_expression(self, path: str) -> Expression:
        with self.phase("parse"):
            e = parse_expression(self.read_text(path))
        self.state.insert_data("inputs.expression", path)
        return e

    def load_graph(self, path: str) -> LabeledGraph:
        with self.phase("parse"):
            g = parse_graph(self.read_text(path))
        self.state.insert_data("inputs.graph", path)
        return g

    def load_td(self, path: str, graph: LabeledGraph) -> TreeDecomposition:
        with self.phase("parse"):
            td = parse_td(self.read_text(path), graph)
        self.state.insert_data("inputs.td", path)
        return td

    def emit(self, text: str) -> None:
        """Data output: plain text to -o or stdout."""
        if not text.endswith("\n"):
            text += "\n"
        if self.output and self.output != "-":
            try:
                with open(self.output, "w", encoding="utf-8") as f:
                    f.write(text)
            except OSError as exc:
                raise McwError(f"cannot write {self.output}: {exc.strerror}") from None
        else:
            sys.stdout.write(text)

    def report_timings(self) -> None:
        timings = self.state.section("timings")
        if not self.timed or not timings:
            return
        table = Table(title="phase timings", show_header=True)
        table.add_column("phase")
        table.add_column("seconds", justify="right")
        for name, seconds in timings.items():
            table.add_row(name, f"{seconds:.4f}")
        table.add_row("total", f"{sum(timings.values()):.4f}", style="bold")
        console.print(table)
