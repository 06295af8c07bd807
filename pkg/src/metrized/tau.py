"""The tau constant, the canonical measure, and the L/L⁺ identity suite.

``tau_pinv`` evaluates the closed form in the entries of L and L⁺ (both
printed variants, which must agree). ``tau_circuit`` is the independent
check: it sums the per-edge circuit-reduction terms, building Γ − e_i for
each edge, and never touches the pseudo-inverse of Γ itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .circuit import EdgeComplement, arm_resistances, edge_complement_resistance, resistance
from .graph import GraphError, MetrizedGraph, NotOptimalError, SubdivisionMap, optimalize, valence
from .laplacian import LaplacianPair, laplacian_pair
from .report import CheckReport, CheckResult
from .scalars import EXACT, INFINITE, ScalarField

__all__ = [
    "TauMismatchError",
    "MeasureMismatchError",
    "TauReport",
    "CanonicalMeasure",
    "tau_pinv",
    "tau_circuit",
    "tau_circuit_all_bases",
    "tau",
    "canonical_measure",
    "measure_pullback",
    "identity_suite",
]


class TauMismatchError(ArithmeticError):
    """Two formulas for the same invariant disagreed."""


class MeasureMismatchError(ArithmeticError):
    """Pieces of one original edge carried different densities, or an added vertex had mass."""


@dataclass(frozen=True)
class TauReport:
    tau: Any
    method: str
    lower_bound: Any
    graph_total_length: Any
    details: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class CanonicalMeasure:
    """Dirac coefficients 1 − υ(p)/2 at vertices plus a uniform density on each edge.

    ``edge_densities[i]`` is the dx-coefficient on ``graph.edges[i]``.
    """

    graph: MetrizedGraph
    vertex_coefficients: dict
    edge_densities: tuple

    def total_mass(self):
        mass = sum(self.vertex_coefficients.values())
        for e, d in zip(self.graph.edges, self.edge_densities):
            mass += d * e.length
        return mass


def _require_optimal(graph):
    if not graph.optimal:
        raise NotOptimalError("graph has self-loops or parallel edges; optimalize it first")


def _edge_terms(graph, pair):
    """Per edge: (l_{p_i q_i}, l⁺_{p_i p_i}, l⁺_{q_i q_i}, l⁺_{p_i q_i})."""
    lap, pinv = pair.lap, pair.pinv
    return [(lap[e.u, e.v], pinv[e.u, e.u], pinv[e.v, e.v], pinv[e.u, e.v]) for e in graph.edges]


def _diag_quadratic(pair):
    """Σ_{q,s} l_qs l⁺_qq l⁺_ss over all ordered pairs, diagonal included."""
    d = pair.pinv.diagonal()
    zero = pair.field.zero()
    return sum((row[k] * d[j] * d[k] for j, row in enumerate(pair.lap.rows)
                for k in range(len(d)) if row[k]), zero)


def tau_pinv(graph: MetrizedGraph, pair: LaplacianPair) -> TauReport:
    """τ(Γ) from L and L⁺; both closed forms are computed and must agree."""
    _require_optimal(graph)
    f = pair.field
    v = graph.v
    zero = f.zero()
    tr = pair.pinv.trace()
    first = zero
    second_alt = zero
    for l, pp, qq, pq in _edge_terms(graph, pair):
        first += l * (1 / l + pp - 2 * pq + qq) ** 2
        second_alt += l * (pp - qq) ** 2
    head = -first / 12
    tail = tr / v
    form1 = head + _diag_quadratic(pair) / 4 + tail
    form2 = head - second_alt / 4 + tail
    scale = abs(first / 12) + abs(second_alt / 4) + abs(tail)
    if not f.close(form1, form2, scale):
        raise TauMismatchError(f"closed forms disagree: {form1} vs {form2}")
    return TauReport(form1, "pinv-form-1", tail, f.convert(graph.total_length),
                     {"pinv-form-1": form1, "pinv-form-2": form2})


def _circuit_summand(L, R, Ra):
    if R == INFINITE:
        return 3 * L
    # R_a − R_b = 2 R_a − R_i
    return (L ** 3 + 3 * L * (2 * Ra - R) ** 2) / (L + R) ** 2


def tau_circuit_all_bases(graph: MetrizedGraph, field: ScalarField = EXACT) -> dict:
    """τ from the circuit-reduction sum, once for every choice of base vertex."""
    _require_optimal(graph)
    totals = {p: field.zero() for p in graph.vertices}
    for i in range(graph.e):
        comp = EdgeComplement(graph, i, field)
        L = field.convert(graph.edges[i].length)
        for p in graph.vertices:
            totals[p] += _circuit_summand(L, comp.R, comp.arm_a(p))
    return {p: s / 12 for p, s in totals.items()}


def tau_circuit(graph: MetrizedGraph, base=None, field: ScalarField = EXACT) -> TauReport:
    """τ(Γ) = (1/12) Σ_i (L_i³ + 3 L_i (R_a − R_b)²)/(L_i + R_i)², bridges contributing 3 L_i/12."""
    _require_optimal(graph)
    p = graph.vertices[0] if base is None else base
    total = field.zero()
    if p not in graph:
        raise GraphError(f"unknown vertex {p!r}")
    for i in range(graph.e):
        comp = EdgeComplement(graph, i, field)
        total += _circuit_summand(field.convert(graph.edges[i].length), comp.R, comp.arm_a(p))
    return TauReport(total / 12, "circuit", None, field.convert(graph.total_length),
                     {"base": p})


def tau(graph: MetrizedGraph, field: ScalarField = EXACT, method: str = "pinv") -> TauReport:
    """Optimalize, then compute τ by ``method`` (``pinv``, ``circuit`` or ``both``)."""
    opt, _ = optimalize(graph)
    if method == "circuit":
        rep = tau_circuit(opt, field=field)
        pair = laplacian_pair(opt, field)
        return TauReport(rep.tau, rep.method, pair.pinv.trace() / opt.v, rep.graph_total_length,
                         rep.details)
    pair = laplacian_pair(opt, field)
    rep = tau_pinv(opt, pair)
    if method == "pinv":
        return rep
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    circ = tau_circuit(opt, field=field)
    if not field.close(rep.tau, circ.tau, rep.tau):
        raise TauMismatchError(f"pseudo-inverse tau {rep.tau} != circuit tau {circ.tau}")
    return TauReport(rep.tau, rep.method, rep.lower_bound, rep.graph_total_length,
                     {**rep.details, "circuit": circ.tau})


def canonical_measure(graph: MetrizedGraph, pair: LaplacianPair) -> CanonicalMeasure:
    """μ_can: coefficient 1 − υ(p)/2 at p, density −(l + l² r(p_i, q_i)) on e_i."""
    _require_optimal(graph)
    f = pair.field
    coeffs = {p: f.one() - f.convert(valence(graph, p)) / 2 for p in graph.vertices}
    dens = []
    for e in graph.edges:
        l = pair.lap[e.u, e.v]
        dens.append(-(l + l * l * resistance(pair, e.u, e.v)))
    return CanonicalMeasure(graph, coeffs, tuple(dens))


def measure_pullback(measure: CanonicalMeasure, smap: SubdivisionMap, field: ScalarField = EXACT) -> CanonicalMeasure:
    """Express a measure on a subdivided graph on the original graph."""
    scale = max([abs(d) for d in measure.edge_densities] + [1])
    for p in smap.added_vertices:
        c = measure.vertex_coefficients[p]
        if not field.close(c, 0 * c, 1):
            raise MeasureMismatchError(f"added vertex {p!r} carries mass {c}")
    orig = smap.original
    coeffs = {p: measure.vertex_coefficients[p] for p in orig.vertices}
    dens = []
    for i in range(orig.e):
        pieces = [measure.edge_densities[k] for k in smap.pieces_of(i)]
        first = pieces[0]
        if any(not field.close(d, first, scale) for d in pieces[1:]):
            raise MeasureMismatchError(f"pieces of edge {i} disagree: {pieces}")
        dens.append(first)
    return CanonicalMeasure(orig, coeffs, tuple(dens))


def _limit_ratio(L, R, f):
    """(L/(L+R), R/(L+R)) with the R → ∞ limit (0, 1) for bridges."""
    if R == INFINITE:
        return f.zero(), f.one()
    return L / (L + R), R / (L + R)


def identity_suite(graph: MetrizedGraph, pair: LaplacianPair, bridge_limits: bool = False) -> CheckReport:
    """Check the scalar identities linking R_i, R_a, R_b with entries of L and L⁺.

    By default the R_i-dependent identities are skipped on graphs with bridges
    and a note says so. With ``bridge_limits`` they run there too, each term
    with R_i = ∞ replaced by its limit as R_i → ∞.
    """
    _require_optimal(graph)
    f = pair.field
    lap, pinv = pair.lap, pair.pinv
    v, n_edges = graph.v, graph.e
    zero = f.zero()
    tr = pinv.trace()
    labels = graph.vertices
    idx = graph.index
    L_rows, P_rows = lap.rows, pinv.rows
    Ls = [f.convert(e.length) for e in graph.edges]
    Rs = [edge_complement_resistance(graph, pair, i) for i in range(n_edges)]
    has_bridge = any(R == INFINITE for R in Rs)
    run_r = bridge_limits or not has_bridge
    terms = _edge_terms(graph, pair)
    val = {q: valence(graph, q) for q in labels}
    results, notes = [], []
    mag = max(abs(tr), pinv.max_abs(), 1 if f.exact else 0) or 1

    def add(name, lhs, rhs, scale=mag, extra=True):
        ok = f.close(lhs, rhs, scale) and extra
        results.append(CheckResult(name, ok, "" if ok else f"{lhs} != {rhs}"))

    pairs_sum = lambda g: sum((g(j, k) for j in range(v) for k in range(v) if L_rows[j][k]), zero)
    diag_quad = pairs_sum(lambda j, k: L_rows[j][k] * P_rows[j][j] * P_rows[k][k])
    half_sq = pairs_sum(lambda j, k: L_rows[j][k] * (P_rows[j][j] - P_rows[k][k]) ** 2) / 2
    edge_sq = sum(((pp - qq) ** 2 / L for (l, pp, qq, pq), L in zip(terms, Ls)), zero)

    if run_r:
        lhs = zero
        for L, R in zip(Ls, Rs):
            lhs += L if R == INFINITE else L * R ** 2 / (L + R) ** 2
        rhs = (4 * f.one() * (v - 1) / v) * tr - diag_quad \
            - 2 * pairs_sum(lambda j, k: L_rows[j][k] * P_rows[j][k] ** 2)
        add("L_i R_i^2/(L_i+R_i)^2 sum", lhs, rhs)

        ok1 = ok2 = True
        for p in labels:
            a = idx[p]
            s_l = s_r = zero
            for e, L, R in zip(graph.edges, Ls, Rs):
                wl, wr = _limit_ratio(L, R, f)
                t = P_rows[a][idx[e.u]] + P_rows[a][idx[e.v]]
                s_l += wl * t
                s_r += wr * t
            vsum = sum((val[q] * P_rows[a][idx[q]] for q in labels), zero)
            ok1 &= f.close(P_rows[a][a], tr / v + s_l - vsum, mag)
            ok2 &= f.close(P_rows[a][a], tr / v - s_r, mag)
        results.append(CheckResult("l+_pp via L_i/(L_i+R_i) and valences", ok1))
        results.append(CheckResult("l+_pp via R_i/(L_i+R_i)", ok2))

        # Σ L_i (R_b − R_a)²/(L_i+R_i)² does not depend on the base vertex.
        rhs = 4 * tr / v - half_sq
        ok = True
        for p in labels:
            lhs = zero
            for i, (L, R) in enumerate(zip(Ls, Rs)):
                if R == INFINITE:
                    lhs += L
                else:
                    d = arm_resistances(graph, pair, i, p)
                    lhs += L * (d.R_b - d.R_a) ** 2 / (L + R) ** 2
            ok &= f.close(lhs, rhs, mag)
        results.append(CheckResult("L_i (R_b-R_a)^2/(L_i+R_i)^2 sum, every base", ok))

        foster = zero
        for L, R in zip(Ls, Rs):
            foster += _limit_ratio(L, R, f)[0]
        add("sum L_i/(L_i+R_i) = e - v + 1", foster, f.convert(n_edges - v + 1), 1)
    else:
        notes.append("graph has bridges: R_i-dependent identities skipped")

    add("diagonal quadratic form, three ways", diag_quad, -half_sq,
        extra=f.close(diag_quad, edge_sq, mag) and (diag_quad >= 0 or f.close(diag_quad, zero, mag)))

    lhs = zero
    for L, R in zip(Ls, Rs):
        if R != INFINITE:
            lhs += L ** 3 / (L + R) ** 2
    rhs = sum(((L - pp + 2 * pq - qq) ** 2 / L for (l, pp, qq, pq), L in zip(terms, Ls)), zero)
    add("L_i^3/(L_i+R_i)^2 sum", lhs, rhs)

    rep = tau_pinv(graph, pair)
    results.append(CheckResult("tau >= trace(L+)/v",
                               rep.tau >= rep.lower_bound or f.close(rep.tau, rep.lower_bound, mag)))
    return CheckReport(tuple(results), tuple(notes))
