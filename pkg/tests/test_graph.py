from fractions import Fraction

import pytest
from hypothesis import given, settings

from metrized import (
    Edge, GraphError, MetrizedGraph, laplacian_pair, optimalize, subdivide_edge, tau_pinv,
    validate, valence,
)
from metrized.catalog import circle, loop_and_parallels, k5, segment
from metrized.graph import components, remove_edge

from strategies import graphs


def tau_of(g):
    opt, _ = optimalize(g)
    return tau_pinv(opt, laplacian_pair(opt)).tau


def test_validate_k5_ok():
    assert validate(k5()).ok


def test_validate_single_vertex_ok():
    assert validate(MetrizedGraph(("a",), ())).ok


def test_validate_two_isolated_vertices():
    report = validate(MetrizedGraph(("a", "b"), ()))
    assert not report.ok
    assert "graph is disconnected" in report.violations


def test_validate_reports_lengths_and_dangling():
    g = MetrizedGraph(("a", "b"), (Edge("a", "b", 0), Edge("a", "c", 1)))
    text = " | ".join(validate(g).violations)
    assert "non-positive length" in text
    assert "unknown vertex 'c'" in text


def test_validate_duplicate_labels():
    assert not validate(MetrizedGraph(("a", "a"), (Edge("a", "a", 1),))).ok


def test_total_length():
    assert k5().total_length == 1
    assert loop_and_parallels().total_length == 1


def test_optimalize_loop_and_parallels_layout():
    opt, smap = optimalize(loop_and_parallels())
    assert opt.vertices == ("1", "2", "3", "4", "5", "6", "7")
    assert all(e.length == Fraction(1, 9) for e in opt.edges)
    assert len(opt.edges) == 9 and opt.optimal
    assert smap.added_vertices == {"4", "5", "6", "7"}
    assert smap.piece_to_original == (0, 1, 2, 2, 2, 3, 3, 4, 4)
    adjacency = {frozenset((e.u, e.v)) for e in opt.edges}
    assert adjacency == {frozenset(p) for p in
                         [("1", "3"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "3"),
                          ("1", "6"), ("6", "2"), ("1", "7"), ("7", "2")]}


def test_optimalize_idempotent_on_optimal():
    g = k5()
    opt, smap = optimalize(g)
    assert opt is g
    assert smap.is_identity and not smap.added_vertices


def test_optimalize_self_loop_becomes_triangle():
    g = MetrizedGraph(("x",), (Edge("x", "x", 3),))
    opt, smap = optimalize(g)
    assert opt.v == 3 and opt.e == 3
    assert all(e.length == 1 for e in opt.edges)
    assert {valence(opt, p) for p in opt.vertices} == {2}


def test_optimalize_rejects_invalid():
    with pytest.raises(GraphError, match="disconnected"):
        optimalize(MetrizedGraph(("a", "b"), ()))


def test_fresh_labels_avoid_collisions():
    g = MetrizedGraph((1, "4", "x"), (Edge(1, 1, 3), Edge(1, "4", 1), Edge("4", "x", 1)))
    opt, smap = optimalize(g)
    assert len(set(opt.vertices)) == opt.v
    assert len(smap.added_vertices) == 2


def test_valence():
    assert valence(k5(), "1") == 4
    opt, _ = optimalize(loop_and_parallels())
    assert valence(opt, "3") == 4
    assert valence(MetrizedGraph(("a",), (Edge("a", "a", 1),)), "a") == 2
    with pytest.raises(GraphError):
        valence(k5(), "9")


def test_subdivide_segment_keeps_tau():
    g, smap = subdivide_edge(segment(1), 0, [Fraction(1, 2), Fraction(1, 2)])
    assert g.e == 2 and len(smap.added_vertices) == 1
    assert tau_of(g) == Fraction(1, 4)


def test_subdivide_identity_split():
    g, smap = subdivide_edge(k5(), 3, [Fraction(1, 10)])
    assert g == k5() and smap.is_identity


def test_subdivide_k5_edge():
    g, _ = subdivide_edge(k5(), 0, [Fraction(1, 20), Fraction(1, 20)])
    assert tau_of(g) == Fraction(23, 500)


def test_subdivide_errors():
    with pytest.raises(GraphError, match="sum"):
        subdivide_edge(k5(), 0, [Fraction(1, 20)])
    with pytest.raises(GraphError, match="positive"):
        subdivide_edge(k5(), 0, [Fraction(1, 5), Fraction(-1, 10)])


def test_components_and_remove_edge():
    s = segment(1)
    assert len(components(remove_edge(s, 0))) == 2
    assert len(components(circle(1), skip_edge=0)) == 1


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_valence_sum_is_twice_edges(g):
    assert sum(valence(g, p) for p in g.vertices) == 2 * g.e


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_optimalize_properties(g):
    opt, smap = optimalize(g)
    assert opt.optimal
    again, smap2 = optimalize(opt)
    assert again == opt and smap2.is_identity
    for i, e in enumerate(g.edges):
        assert sum(opt.edges[k].length for k in smap.pieces_of(i)) == e.length
    for p in smap.added_vertices:
        assert valence(opt, p) == 2
    for p in g.vertices:
        assert valence(opt, p) == valence(g, p)


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=5, max_extra=4))
def test_subdivision_invariance(g):
    e = g.edges[0]
    pieces = [e.length / 3, e.length / 6, e.length / 2]
    sub, _ = subdivide_edge(g, 0, pieces)
    assert tau_of(sub) == tau_of(g)
