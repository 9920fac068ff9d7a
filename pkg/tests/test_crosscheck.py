from __future__ import annotations

from main.core.services.corpus_service import CorpusService
from main.handlers import crosscheck, indpoly, oracle
from main.handlers.crosscheck import (
    FAIL,
    PASS,
    SKIP,
    CheckReport,
    check_corpus,
    check_expression,
    first_list_difference,
    first_table_difference,
)
from main.handlers.expr import Create, Eta, Expression
from main.handlers.generators import cycle_expression
from main.handlers.oracle import Corpus


def test_bundled_corpus_passes():
    corpus = CorpusService.build()
    report = check_corpus(corpus)
    assert report.ok, [r.line() for r in report.failures]
    assert {"indpoly[school]", "indpoly[transform]", "project", "max_is", "expand", "compile"} <= {
        r.operation for r in report.results
    }


def test_single_expression_report():
    report = check_expression("C5", cycle_expression(5), colors=[2, 3])
    assert report.ok
    ops = {r.operation: r.status for r in report.results}
    assert ops["color[c=2,exact]"] == PASS
    assert ops["color[c=3,single]"] == PASS
    assert ops["color-table[c=3]"] == PASS


def test_eta_violation_is_reported():
    bad = Expression(2, Eta(1, 2, Create(1, 0b11)))
    report = check_expression("bad", bad)
    assert not report.ok
    assert report.failures[0].line().startswith("bad: evaluate: fail: eta 1 2 at /")


def test_failure_names_the_operation(monkeypatch):
    monkeypatch.setattr(indpoly, "max_is", lambda e: frozenset())
    report = check_expression("C5", cycle_expression(5), colors=[2])
    lines = [r.line() for r in report.failures]
    assert lines == ["C5: max_is: fail: size 0, deg I(x) = 2"]


def test_large_graphs_are_skipped(isolated_config):
    isolated_config.write_text(
        '{"check": {"max_vertices": 4, "color_max_vertices": 4, "compile_max_vertices": 4}}',
        encoding="utf-8",
    )
    report = check_expression("C5", cycle_expression(5))
    statuses = {r.operation: r.status for r in report.results}
    assert statuses["indpoly"] == SKIP
    assert statuses["color"] == SKIP
    assert statuses["compile"] == SKIP
    assert statuses["expand"] == PASS


def test_first_differences():
    assert first_table_difference({(1, 1): 2}, {(1, 1): 1}, 2) == "entry (size 1, mask 10): dp 2, oracle 1"
    assert first_table_difference({(0, 0): 1}, {(0, 0): 1}, 2) is None
    assert first_list_difference([1, 2], [1, 2, 1]) == "coefficient 2: dp 0, oracle 1"


def test_summary_counts_by_operation():
    report = CheckReport()
    report.add("a", "indpoly", PASS)
    report.add("b", "indpoly", FAIL, "x")
    report.add("b", "expand", PASS)
    summary = report.summary().set_index("operation")
    assert summary.loc["indpoly", "fail"] == 1
    assert summary.loc["indpoly", "pass"] == 1
    assert summary.loc["expand", "fail"] == 0
    assert len(report.to_frame()) == 3
    assert crosscheck.CheckResult("a", "op", PASS).line() == "a: op: pass"


def test_oracle_results_come_from_the_entry_cache(monkeypatch):
    calls = []
    real = oracle.enumerate_is

    def counting(g, k=None, guard=None):
        calls.append(g.n)
        return real(g, k=k, guard=guard)

    monkeypatch.setattr(oracle, "enumerate_is", counting)
    corpus = Corpus()
    corpus.add("C5", cycle_expression(5))
    assert check_corpus(corpus, colors=[2]).ok
    assert check_corpus(corpus, colors=[2]).ok
    assert calls == [5]
