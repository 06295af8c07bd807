from fractions import Fraction

import pytest
from hypothesis import given, settings

from metrized import (
    EXACT, FLOAT, MetrizedGraph, NotOptimalError, build_laplacian, laplacian_pair,
    matrix_checks, optimalize,
)
from metrized.catalog import loop_and_parallels, k5
from metrized.graph import Edge

from oracles import sympy_pinv
from strategies import graphs


def test_k5_laplacian_entries():
    lap = build_laplacian(k5())
    assert lap["1", "1"] == 40 and lap["1", "2"] == -10


def test_rejects_non_optimal():
    with pytest.raises(NotOptimalError):
        build_laplacian(loop_and_parallels())


def test_single_vertex():
    pair = laplacian_pair(MetrizedGraph((0,), ()))
    assert pair.lap.tolist() == [[0]]
    assert pair.pinv.tolist() == [[0]]
    assert matrix_checks(pair).ok


def test_matrix_checks_pass_on_k5():
    report = matrix_checks(laplacian_pair(k5()))
    assert report.ok, [r.name for r in report.failed()]


def test_float_checks_pass_on_k5():
    assert matrix_checks(laplacian_pair(k5(), FLOAT)).ok


def test_perturbed_pinv_is_caught():
    pair = laplacian_pair(k5())
    bad = pair.pinv.with_entry("1", "1", pair.pinv["1", "1"] + Fraction(1, 10**6))
    report = matrix_checks(type(pair)(pair.lap, bad))
    assert not report.ok
    assert not report["L L+ = I - J/v"].passed
    assert not report["L+ symmetric"].passed or not report["L+ doubly centered"].passed


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_pinv_matches_sympy(g):
    opt, _ = optimalize(g)
    pair = laplacian_pair(opt)
    assert pair.pinv.tolist() == sympy_pinv(pair.lap.tolist())


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_float_pinv_tracks_exact(g):
    opt, _ = optimalize(g)
    exact = laplacian_pair(opt, EXACT).pinv
    approx = laplacian_pair(opt, FLOAT).pinv
    scale = float(exact.max_abs())
    for p in opt.vertices:
        for q in opt.vertices:
            assert abs(approx[p, q] - float(exact[p, q])) <= 1e-9 * scale


def test_parallel_conductance_not_accepted_as_optimal():
    g = MetrizedGraph((0, 1), (Edge(0, 1, 1), Edge(0, 1, 1)))
    assert not g.optimal
