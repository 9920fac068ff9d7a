from __future__ import annotations

import random

import networkx as nx
import pytest

from conftest import corpus_expression, mcw
from main.core.errors import DimensionMismatchError, EtaPreconditionViolation
from main.handlers.expr import Create, Expression, Join, Rho
from main.handlers.generators import clique_expression, cycle_expression, path_expression
from main.handlers.geval import LabeledGraph, evaluate
from main.handlers.indpoly import (
    LabeledISPolynomial,
    apply_eps,
    apply_eta,
    apply_rho,
    atom_poly,
    binomials,
    join_poly,
    max_is,
    project,
    run,
)
from main.handlers.oracle import brute_treewidth, enumerate_is, random_expression
from main.handlers.treedec import compile_td


def poly(k, coeffs):
    return LabeledISPolynomial(k, coeffs)


def random_poly(rng: random.Random, k: int) -> LabeledISPolynomial:
    coeffs = {0: (1,)}
    for mask in rng.sample(range(1, 1 << k), rng.randint(0, min(6, (1 << k) - 1))):
        size = rng.randint(1, 10)
        coeffs[mask] = (0, *(rng.randint(0, 9) for _ in range(size - 1)), rng.randint(1, 9))
    return poly(k, coeffs)


def test_binomials():
    assert binomials(0) == [1]
    assert binomials(5) == [1, 5, 10, 10, 5, 1]


def test_atom_examples():
    assert atom_poly(1, 0b1, 1).table() == {(0, 0): 1, (1, 0b1): 1}
    assert atom_poly(3, 0b11, 2).coeffs == {0: (1,), 0b11: (0, 3, 3, 1)}
    assert atom_poly(5, 0, 3).coeffs == {0: (1, 5, 10, 10, 5, 1)}


def test_trailing_zeros_are_trimmed():
    p = poly(2, {0: (1, 0, 0), 0b10: (0, 0)})
    assert p.coeffs == {0: (1,)}


def test_eta_removes_masks_with_both_labels():
    p = poly(2, {0: (1,), 0b11: (0, 0, 4), 0b01: (0, 2)})
    out = apply_eta(p, 1, 2, frozenset())
    assert out.coeffs == {0: (1,), 0b01: (0, 2)}


def test_eta_refuses_a_violating_signature():
    with pytest.raises(EtaPreconditionViolation):
        apply_eta(poly(2, {0: (1,)}), 1, 2, frozenset({0b11}))


def test_single_edge_polynomial():
    p = run(mcw("(eta 1 2 (join (v 1 1) (v 1 2)))", 2))
    assert project(p) == [1, 2]
    assert p.table() == {(0, 0): 1, (1, 0b01): 1, (1, 0b10): 1}


def test_rho_examples():
    p = poly(3, {0: (1,), 0b001: (0, 2)})
    assert apply_rho(p, 1, 0b001) == p
    assert apply_rho(p, 1, 0b110).coeffs == {0: (1,), 0b110: (0, 2)}
    merged = apply_rho(poly(2, {0: (1,), 0b01: (0, 1), 0b10: (0, 1)}), 1, 0b10)
    assert merged.coeffs == {0: (1,), 0b10: (0, 2)}


def test_eps_examples():
    p = poly(1, {0: (1,), 0b1: (0, 3)})
    assert apply_eps(p, 1).coeffs == {0: (1, 3)}
    assert apply_eps(apply_eps(p, 1), 1) == apply_eps(p, 1)


def test_eps_is_rho_to_nothing(rng):
    for _ in range(30):
        k = rng.randint(1, 4)
        p = random_poly(rng, k)
        i = rng.randint(1, k)
        assert apply_eps(p, i) == apply_rho(p, i, 0)


@pytest.mark.parametrize("method", ["school", "transform"])
def test_join_examples(method):
    p = atom_poly(2, 0b01, 2)
    assert join_poly(p, LabeledISPolynomial.unit(2), method) == p
    same = join_poly(atom_poly(1, 0b1, 1), atom_poly(1, 0b1, 1), method)
    assert same.table() == {(0, 0): 1, (1, 0b1): 2, (2, 0b1): 1}
    pair = join_poly(atom_poly(1, 0b01, 2), atom_poly(1, 0b10, 2), method)
    assert pair.coeffs == {0: (1,), 0b01: (0, 1), 0b10: (0, 1), 0b11: (0, 0, 1)}


def test_join_rejects_width_mismatch():
    with pytest.raises(DimensionMismatchError):
        join_poly(LabeledISPolynomial.unit(1), LabeledISPolynomial.unit(2))


def test_join_rejects_unknown_method():
    with pytest.raises(ValueError, match="fft"):
        join_poly(LabeledISPolynomial.unit(1), LabeledISPolynomial.unit(1), "fft")


def test_school_and_transform_agree():
    rng = random.Random(3)
    for _ in range(200):
        k = rng.randint(1, 6)
        a, b = random_poly(rng, k), random_poly(rng, k)
        assert join_poly(a, b, "school") == join_poly(a, b, "transform")


def test_join_method_comes_from_config(isolated_config):
    isolated_config.write_text('{"indpoly": {"join_method": "transform"}}', encoding="utf-8")
    e = corpus_expression("C5")
    assert project(run(e)) == [1, 5, 5]


def test_run_single_vertex():
    assert run(Expression(1, Create(1, 0b1))).table() == {(0, 0): 1, (1, 0b1): 1}


def test_clique_of_fifty():
    assert project(run(clique_expression(50))) == [1, 50]


def test_small_projections():
    assert project(LabeledISPolynomial.unit(2)) == [1]
    assert project(run(path_expression(3))) == [1, 3, 1]
    assert project(run(cycle_expression(5))) == [1, 5, 5]
    assert project(run(Expression(1, Create(6, 0)))) == [1, 6, 15, 20, 15, 6, 1]


def test_degree_cap_tracks_the_vertex_count():
    assert atom_poly(3, 0b1, 1).n_cap == 3
    assert run(path_expression(7)).n_cap == 7
    assert not poly(1, {0: (1, 2)}).within_cap()
    assert LabeledISPolynomial(1, {0: (1, 2)}, 1).within_cap()


def test_total_counts_independent_sets():
    p = run(Expression(2, Join((Create(3, 0b01), Create(2, 0b10)))))
    assert p.total() == 2 ** 5


@pytest.mark.parametrize("method", ["school", "transform"])
def test_corpus_matches_enumeration(corpus_dir, method):
    for path in sorted(corpus_dir.glob("*.mcw")):
        e = corpus_expression(path.stem)
        g = evaluate(e)
        p = run(e, method)
        assert p == enumerate_is(g, k=e.width), path.name
        assert p.n_cap == g.n, path.name


def small_connected_graphs(max_n: int = 5) -> list[nx.Graph]:
    return [g for g in nx.graph_atlas_g() if 0 < g.number_of_nodes() <= max_n and nx.is_connected(g)]


def test_atlas_has_every_connected_graph_on_five_vertices():
    sizes = [g.number_of_nodes() for g in small_connected_graphs()]
    assert [sizes.count(n) for n in range(1, 6)] == [1, 1, 2, 6, 21]


@pytest.mark.parametrize("method", ["school", "transform"])
def test_connected_graphs_up_to_five_vertices_match_enumeration(method):
    for atlas_graph in small_connected_graphs():
        g = LabeledGraph.from_networkx(atlas_graph)
        _, td = brute_treewidth(g)
        e = compile_td(td)
        p = run(e, method)
        assert p == enumerate_is(evaluate(e), k=e.width), sorted(atlas_graph.edges)
        assert project(p) == project(enumerate_is(g)), sorted(atlas_graph.edges)
        assert p.n_cap == g.n and p.within_cap()


def test_random_expressions_match_enumeration():
    rng = random.Random(5)
    for _ in range(60):
        n, k = rng.randint(1, 10), rng.randint(1, 4)
        e = random_expression(rng, n, k)
        p = run(e, rng.choice(["school", "transform"]))
        assert p == enumerate_is(evaluate(e), k=k)
        assert p.stored_entries() <= (1 << k) * (n + 1)
        assert project(p)[1] == n


def test_deep_path_runs():
    p = run(path_expression(2000))
    assert project(p)[:3] == [1, 2000, 2000 * 1999 // 2 - 1999]


def test_max_is_examples():
    assert max_is(Expression(1, Create(5, 0))) == frozenset(range(5))
    assert len(max_is(clique_expression(8))) == 1
    assert max_is(path_expression(5)) == frozenset({0, 2, 4})


def test_max_is_through_relabeling():
    e = Expression(2, Rho(1, 0b10, Join((Create(2, 0b01), Create(1, 0b10)))))
    assert max_is(e) == frozenset({0, 1, 2})


def test_max_is_on_random_expressions():
    rng = random.Random(9)
    for _ in range(50):
        e = random_expression(rng, rng.randint(1, 16), rng.randint(1, 4))
        g = evaluate(e)
        chosen = max_is(e)
        assert all(not (u in chosen and v in chosen) for u, v in g.edges)
        assert len(chosen) == len(project(run(e))) - 1
