from fractions import Fraction

import pytest
from hypothesis import given, settings

from metrized import (
    EXACT, FLOAT, INFINITE, GraphError, EdgeComplement, arm_resistances,
    edge_complement_resistance, laplacian_pair, optimalize, resistance,
    two_point_reduction, voltage,
)
from metrized.catalog import circle, k5, segment
from metrized.circuit import grounded_potentials, _network

from oracles import resistances_from
from strategies import as_triples, graphs


def test_k5_resistance_and_voltage():
    pair = laplacian_pair(k5())
    assert resistance(pair, "1", "2") == Fraction(1, 25)
    assert voltage(pair, "1", "2", "3") == Fraction(1, 50)
    assert voltage(pair, "1", "2", "2") == Fraction(1, 25)


def test_unknown_vertex():
    pair = laplacian_pair(k5())
    with pytest.raises(GraphError, match="unknown vertex"):
        resistance(pair, "1", "9")
    with pytest.raises(GraphError):
        two_point_reduction(k5(), 0, "9")


def test_triangle_reduction():
    a = Fraction(1, 3)
    g = circle(1)
    # edge 1-2 removed leaves the path 1-3-2
    d = two_point_reduction(g, 0, "3")
    assert (d.R, d.R_a, d.R_b, d.R_c) == (2 * a, a, a, 0)
    d = two_point_reduction(g, 0, "1")
    assert (d.R_a, d.R_b, d.R_c) == (0, 2 * a, 0)


def test_triangle_edge_opposite_base():
    a = Fraction(1, 3)
    d = two_point_reduction(circle(1), 1, "1")
    assert (d.edge.u, d.edge.v) == ("2", "3")
    assert (d.R_a, d.R_b, d.R_c) == (a, a, 0)


def test_segment_bridge():
    g = segment(3)
    pair = laplacian_pair(g)
    assert edge_complement_resistance(g, pair, 0) == INFINITE
    d = two_point_reduction(g, 0, "a")
    assert d.bridge and d.R_a == 0 and d.R_b == INFINITE and d.R_c == 0
    d = two_point_reduction(g, 0, "b")
    assert d.R_a == INFINITE and d.R_b == 0
    assert arm_resistances(g, pair, 0, "b").R_a == INFINITE


def test_k5_edge_complement():
    g = k5()
    pair = laplacian_pair(g)
    # L r/(L - r) with L = 1/10, r = 1/25
    assert edge_complement_resistance(g, pair, 0) == Fraction(1, 15)


def test_grounded_potentials_path():
    adj = {0: {1: Fraction(1)}, 1: {0: Fraction(1), 2: Fraction(1, 2)}, 2: {1: Fraction(1, 2)}}
    phi = grounded_potentials(adj, 0, 2)
    assert phi == {0: 0, 1: 1, 2: 3}


def test_grounded_potentials_disconnected():
    with pytest.raises(GraphError):
        grounded_potentials({0: {}, 1: {}}, 0, 1)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_resistance_matches_grounded_oracle(g):
    opt, _ = optimalize(g)
    pair = laplacian_pair(opt)
    p = opt.vertices[0]
    want = resistances_from(list(g.vertices), as_triples(g), p)
    for q in g.vertices:
        assert resistance(pair, p, q) == want[q]


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=5, max_extra=4))
def test_two_routes_agree(g):
    opt, _ = optimalize(g)
    pair = laplacian_pair(opt)
    for i in range(opt.e):
        ec = EdgeComplement(opt, i)
        assert ec.R == edge_complement_resistance(opt, pair, i)
        for p in opt.vertices:
            a = ec.reduction(p)
            b = arm_resistances(opt, pair, i, p)
            assert (a.R_a, a.R_b, a.R_c) == (b.R_a, b.R_b, b.R_c)
            assert a.R_c >= 0
            if not a.bridge:
                assert a.R_a + a.R_b == a.R
                L = a.L
                # r(p_i, q_i) in the full graph is L || R.
                assert resistance(pair, a.edge.u, a.edge.v) == L * a.R / (L + a.R)


@settings(max_examples=30, deadline=None)
@given(graphs(max_vertices=5, max_extra=4))
def test_float_reduction_tracks_exact(g):
    opt, _ = optimalize(g)
    for i in range(opt.e):
        ex = EdgeComplement(opt, i, EXACT)
        fl = EdgeComplement(opt, i, FLOAT)
        assert ex.bridge == fl.bridge
        for p in opt.vertices:
            a, b = ex.arm_a(p), fl.arm_a(p)
            if a == INFINITE:
                assert b == INFINITE
            else:
                assert abs(b - float(a)) <= 1e-9 * max(1.0, float(ex.R if ex.R != INFINITE else 1))


def test_network_skips_loops():
    g = circle(1)
    adj = _network(g, None, EXACT)
    assert adj["1"]["2"] == 3


@settings(max_examples=50, deadline=None)
@given(graphs(max_vertices=5, max_extra=4))
def test_series_parallel_relations(g):
    opt, _ = optimalize(g)
    pair = laplacian_pair(opt)
    for i in range(opt.e):
        ec = EdgeComplement(opt, i)
        if ec.bridge:
            continue
        for p in opt.vertices:
            d = ec.reduction(p)
            L, R, Ra, Rb, Rc = d.L, d.R, d.R_a, d.R_b, d.R_c
            rp = resistance(pair, d.edge.u, p)
            rq = resistance(pair, d.edge.v, p)
            assert rp == (L + Rb) * Ra / (L + R) + Rc
            assert rq == (L + Ra) * Rb / (L + R) + Rc
            assert L * (Ra - Rb) ** 2 / (L + R) ** 2 == (rp - rq) ** 2 / L


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=5, max_extra=3))
def test_resistance_is_a_metric(g):
    opt, _ = optimalize(g)
    pair = laplacian_pair(opt)
    vs = opt.vertices
    for p in vs:
        assert resistance(pair, p, p) == 0
        for q in vs:
            r = resistance(pair, p, q)
            assert r == resistance(pair, q, p)
            assert (r > 0) == (p != q)
            assert voltage(pair, p, p, q) == 0
            assert voltage(pair, p, q, q) == r
            for s in vs:
                assert r <= resistance(pair, p, s) + resistance(pair, s, q)
                assert voltage(pair, p, q, s) == voltage(pair, p, s, q) >= 0
