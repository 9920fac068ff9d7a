from __future__ import annotations

import random

import networkx as nx
import pytest

from conftest import mcw
from main.core.errors import EtaPreconditionViolation, FormatError
from main.handlers.expr import Create, Eps, Eta, Expression, Join, Rho
from main.handlers.generators import clique_expression
from main.handlers.geval import (
    LabeledGraph,
    evaluate,
    format_graph,
    parse_graph,
    present_masks,
    signature_trace,
    strip,
)
from main.handlers.oracle import random_expression


def test_single_edge():
    g = evaluate(mcw("(eta 1 2 (join (v 1 1) (v 1 2)))", 2))
    assert g.n == 2
    assert g.edges == {(0, 1)}
    assert g.labels == (0b01, 0b10)


def test_eta_precondition_names_the_vertex():
    with pytest.raises(EtaPreconditionViolation) as err:
        evaluate(mcw("(eta 1 2 (v 1 1 2))", 2))
    assert err.value.vertex == 0
    assert err.value.path == ()
    assert "vertex 0" in str(err.value)


def test_eta_precondition_path_points_at_inner_node():
    e = mcw("(join (v 1 1) (eps 1 (eta 1 2 (v 2 1 2))))", 2)
    with pytest.raises(EtaPreconditionViolation) as err:
        evaluate(e)
    assert err.value.path == (1, 0)
    assert err.value.vertex == 1


def test_clique_from_generator():
    g = evaluate(clique_expression(4))
    assert g.n == 4
    assert len(g.edges) == 6
    assert nx.is_isomorphic(g.to_networkx(), nx.complete_graph(4))


def test_ids_follow_creation_order():
    g = evaluate(mcw("(join (v 2 1) (eps 2 (v 1 2)) (v 1))", 2))
    assert g.labels == (0b01, 0b01, 0, 0)


def test_eta_with_empty_side_is_a_no_op():
    g = evaluate(mcw("(eta 1 2 (v 3 1))", 2))
    assert g.n == 3 and not g.edges


def test_rho_on_absent_label_is_a_no_op():
    e = mcw("(rho 2 (1) (v 2 1))", 2)
    assert evaluate(e).labels == (0b01, 0b01)


def test_eta_idempotent():
    inner = Join((Create(1, 0b01), Create(2, 0b10)))
    once = evaluate(Expression(2, Eta(1, 2, inner)))
    twice = evaluate(Expression(2, Eta(1, 2, Eta(1, 2, inner))))
    assert once == twice


def test_eps_equals_empty_rho():
    inner = Eta(1, 2, Join((Create(1, 0b001), Create(1, 0b110))))
    with_eps = evaluate(Expression(3, Eps(1, Join((inner, Create(1, 0b100))))))
    with_rho = evaluate(Expression(3, Rho(1, 0, Join((inner, Create(1, 0b100))))))
    assert with_eps == with_rho


def test_join_adds_no_edges():
    left = mcw("(eta 1 2 (join (v 1 1) (v 1 2)))", 2)
    both = Expression(2, Join((left.root, left.root)))
    g = evaluate(both)
    assert g.n == 4
    assert g.edges == {(0, 1), (2, 3)}


def test_signature_examples():
    assert signature_trace(Expression(3, Create(5, 0b101))).root == {0b101}
    assert signature_trace(Expression(1, Eps(1, Create(2, 0b1)))).root == {0}


def test_signature_catches_eta_violation():
    with pytest.raises(EtaPreconditionViolation):
        signature_trace(mcw("(eta 1 2 (v 1 1 2))", 2))


def test_signature_matches_evaluation_on_random_expressions():
    rng = random.Random(7)
    for _ in range(60):
        e = random_expression(rng, rng.randint(1, 12), rng.randint(1, 4))
        assert signature_trace(e).root == present_masks(evaluate(e))


def test_signature_trace_covers_every_node():
    e = mcw("(eta 1 2 (join (v 1 1) (v 1 2)))", 2)
    trace = signature_trace(e)
    assert len(trace) == 4
    assert trace[e.root] == {0b01, 0b10}
    assert trace[e.root.child.children[0]] == {0b01}


def test_strip():
    g = LabeledGraph.build(1, labels=[0b11])
    assert strip(g).labels == (0,)
    assert strip(strip(g)) == strip(g)
    k4 = evaluate(clique_expression(4))
    assert len(strip(k4).edges) == 6


def test_graph_format_round_trip():
    g = evaluate(mcw("(eta 1 2 (join (v 1 1 3) ;@ x\n(v 2 2)))", 3))
    text = format_graph(g)
    assert text.splitlines()[0] == "p 3 2"
    assert "l 0 1 3" in text.splitlines()
    assert "n 0 x" in text.splitlines()
    assert parse_graph(text) == g


def test_graph_format_without_labels():
    g = evaluate(mcw("(eta 1 2 (join (v 1 1) (v 1 2)))", 2))
    assert format_graph(strip(g), with_labels=False) == "p 2 1\ne 0 1\n"


def test_parse_graph_errors():
    with pytest.raises(FormatError, match="header"):
        parse_graph("e 0 1\n")
    with pytest.raises(FormatError, match="out of range"):
        parse_graph("p 2 1\ne 0 2\n")
    with pytest.raises(FormatError, match="self-loop"):
        parse_graph("p 2 1\ne 1 1\n")
    with pytest.raises(FormatError) as err:
        parse_graph("p 2 1\nq 0 1\n")
    assert err.value.line == 2


def test_parse_graph_rejects_negative_counts():
    with pytest.raises(FormatError, match="negative count") as err:
        parse_graph("p -1 0\n")
    assert err.value.line == 1
    with pytest.raises(FormatError, match="negative count"):
        parse_graph("c header follows\np 2 -3\n")


def test_parse_graph_ignores_duplicate_edges():
    g = parse_graph("c comment\np 3 2\ne 0 1\ne 1 0\ne 1 2\n")
    assert g.edges == {(0, 1), (1, 2)}


def test_networkx_round_trip():
    g = LabeledGraph.from_networkx(nx.petersen_graph())
    assert g.n == 10 and len(g.edges) == 15
    assert nx.is_isomorphic(g.to_networkx(), nx.petersen_graph())


def test_same_named_graph_ignores_numbering():
    a = LabeledGraph.build(3, [(0, 1), (1, 2)], names=["a", "b", "c"])
    b = LabeledGraph.build(3, [(2, 0), (0, 1)], names=["b", "c", "a"])
    assert a.same_named_graph(b)
    c = LabeledGraph.build(3, [(0, 1)], names=["b", "c", "a"])
    assert not a.same_named_graph(c)
