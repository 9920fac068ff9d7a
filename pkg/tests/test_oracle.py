from __future__ import annotations

import random

import networkx as nx
import pytest

from conftest import corpus_expression
from main.core.errors import OracleGuardError
from main.handlers.expr import Rho, walk
from main.handlers.generators import grid_graph
from main.handlers.geval import LabeledGraph, evaluate, parse_graph
from main.handlers.oracle import (
    Corpus,
    brute_treewidth,
    chromatic_number,
    enumerate_colorings,
    enumerate_is,
    random_expression,
)


def test_is_table_of_a_labeled_edge():
    g = LabeledGraph.build(2, [(0, 1)], labels=[0b01, 0b10])
    assert enumerate_is(g).table() == {(0, 0): 1, (1, 0b01): 1, (1, 0b10): 1}


def test_is_table_of_isolated_vertices():
    g = LabeledGraph.build(3, labels=[0b1, 0b1, 0])
    p = enumerate_is(g)
    assert p.coeffs == {0: (1, 1), 0b1: (0, 2, 3, 1)}
    assert p.total() == 8


def test_is_guard():
    with pytest.raises(OracleGuardError, match="n=6"):
        enumerate_is(parse_graph("p 6 0\n"), guard=5)


def test_colorings_of_a_labeled_edge():
    g = LabeledGraph.build(2, [(0, 1)], labels=[0b01, 0b10])
    out = enumerate_colorings(g, 2)
    assert out.colorable
    assert out.masks == {0b1001, 0b0110}


def test_triangle_has_no_two_coloring():
    out = enumerate_colorings(LabeledGraph.from_networkx(nx.complete_graph(3)), 2)
    assert not out.colorable
    assert out.masks == frozenset()


def test_coloring_guard():
    with pytest.raises(OracleGuardError):
        enumerate_colorings(parse_graph("p 10 0\n"), 3, guard=1000)


def test_chromatic_numbers():
    assert chromatic_number(parse_graph("p 0 0\n")) == 0
    assert chromatic_number(parse_graph("p 3 0\n")) == 1
    assert chromatic_number(LabeledGraph.from_networkx(nx.petersen_graph())) == 3
    assert chromatic_number(LabeledGraph.from_networkx(nx.complete_graph(5))) == 5


def test_treewidth_examples():
    tree = LabeledGraph.from_networkx(nx.balanced_tree(2, 2))
    assert brute_treewidth(tree)[0] == 1
    assert brute_treewidth(LabeledGraph.from_networkx(nx.complete_graph(5)))[0] == 4
    assert brute_treewidth(grid_graph(3, 3))[0] == 3
    assert brute_treewidth(LabeledGraph.from_networkx(nx.cycle_graph(7)))[0] == 2
    assert brute_treewidth(parse_graph("p 3 0\n"))[0] == 0


def test_treewidth_decomposition_is_optimal():
    g = LabeledGraph.from_networkx(nx.petersen_graph())
    tw, td = brute_treewidth(g)
    assert tw == 4
    assert td.width == tw


def test_treewidth_guard():
    with pytest.raises(OracleGuardError, match="n=13"):
        brute_treewidth(parse_graph("p 13 0\n"))


def test_random_expressions_are_valid():
    rng = random.Random(41)
    for _ in range(50):
        n, k = rng.randint(1, 15), rng.randint(0, 4)
        e = random_expression(rng, n, k)
        assert evaluate(e).n == n
        assert e.width == k


def test_random_expressions_without_rho():
    rng = random.Random(43)
    for _ in range(20):
        e = random_expression(rng, 6, 3, rho=False)
        assert not any(isinstance(node, Rho) for node in walk(e.root))


def test_corpus_entries_cache_ground_truth():
    corpus = Corpus()
    entry = corpus.add("C5", corpus_expression("C5"), "five-cycle")
    assert len(corpus) == 1
    assert corpus.get("C5") is entry
    assert entry.graph.n == 5
    assert entry.is_table.total() == 11
    assert not entry.colorings(2).colorable
    assert entry.colorings(3).colorable
    with pytest.raises(KeyError):
        corpus.get("C6")


def test_large_corpus_entries_skip_enumeration(isolated_config):
    isolated_config.write_text('{"check": {"max_vertices": 3, "color_max_vertices": 3}}', encoding="utf-8")
    entry = Corpus().add("C5", corpus_expression("C5"))
    assert entry.is_table is None
    assert entry.colorings(3) is None
