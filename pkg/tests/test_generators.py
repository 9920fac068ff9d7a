from __future__ import annotations

import networkx as nx
import pytest

from main.handlers.expr import is_strict, used_width
from main.handlers.generators import (
    FAMILIES,
    clique_expression,
    complete_bipartite_expression,
    cycle_expression,
    generate,
    grid_expression,
    grid_graph,
    parse_size,
    path_expression,
)
from main.handlers.geval import evaluate


def test_path():
    g = evaluate(path_expression(6))
    assert g.edges == {(i, i + 1) for i in range(5)}
    assert is_strict(path_expression(6))


def test_single_vertex_path():
    g = evaluate(path_expression(1))
    assert g.n == 1 and not g.edges


def test_cycle():
    for n in (3, 5, 8):
        g = evaluate(cycle_expression(n))
        assert nx.is_isomorphic(g.to_networkx(), nx.cycle_graph(n))
    assert is_strict(cycle_expression(5))


def test_clique():
    e = clique_expression(6)
    assert nx.is_isomorphic(evaluate(e).to_networkx(), nx.complete_graph(6))
    assert not is_strict(e)


def test_complete_bipartite():
    g = evaluate(complete_bipartite_expression(2, 3))
    assert nx.is_isomorphic(g.to_networkx(), nx.complete_bipartite_graph(2, 3))


def test_grid_graph_layout():
    g = grid_graph(2, 3)
    assert g.n == 6
    assert len(g.edges) == 7
    assert g.name(3) == "1.1"
    assert nx.is_isomorphic(g.to_networkx(), nx.grid_2d_graph(2, 3))


def test_grid_expression():
    e = grid_expression(3, 4)
    assert evaluate(e).same_named_graph(grid_graph(3, 4))
    assert is_strict(e)
    assert e.width == 5
    assert used_width(e) <= 5


@pytest.mark.parametrize(
    "family,size",
    [("path", "7"), ("cycle", "4"), ("clique", "3"), ("complete-bipartite", "2x5"), ("grid", "3x3"), ("grid", "1x1")],
)
def test_family_widths_are_documented(family, size):
    fam = FAMILIES[family]
    assert generate(family, size).width == fam.width(parse_size(size, fam.dims))


def test_parse_size():
    assert parse_size("5", 1) == (5,)
    assert parse_size("3x4", 2) == (3, 4)
    assert parse_size("4", 2) == (4, 4)
    with pytest.raises(ValueError):
        parse_size("3x", 2)
    with pytest.raises(ValueError, match="1 size component"):
        parse_size("2x3", 1)


def test_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        generate("wheel", "5")


def test_too_small_sizes():
    with pytest.raises(ValueError):
        path_expression(0)
    with pytest.raises(ValueError):
        cycle_expression(2)
    with pytest.raises(ValueError):
        grid_expression(0, 3)
