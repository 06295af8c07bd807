"""Resistance and voltage from L⁺, and per-edge circuit-reduction data.

For an edge e_i with ends p_i, q_i, the network Γ − e_i reduces (with respect
to p_i, q_i and a base vertex p) to a Y whose arms are R_a (at p_i), R_b (at
q_i) and R_c (at p). R_i = R_a + R_b is the resistance between p_i and q_i in
Γ − e_i; it is infinite exactly when e_i is a bridge.

Two independent routes are provided:

* :func:`edge_complement_resistance` and :func:`arm_resistances` derive
  everything from the pseudo-inverse of the full graph.
* :class:`EdgeComplement` / :func:`two_point_reduction` work on the network
  Γ − e_i itself, solving its grounded Laplacian by star-mesh elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable

from .graph import Edge, GraphError, MetrizedGraph, components
from .laplacian import LaplacianPair
from .scalars import EXACT, INFINITE, ScalarField

__all__ = [
    "EdgeComplementData",
    "EdgeComplement",
    "resistance",
    "voltage",
    "edge_complement_resistance",
    "arm_resistances",
    "two_point_reduction",
    "grounded_potentials",
    "is_bridge",
]


@dataclass(frozen=True)
class EdgeComplementData:
    """Y-reduction of Γ − e_i seen from base vertex ``base``."""

    edge: Edge
    index: int
    base: Hashable
    L: Any
    R: Any
    R_a: Any
    R_b: Any
    R_c: Any

    @property
    def bridge(self) -> bool:
        return self.R == INFINITE


def _entry(pair: LaplacianPair, p, q):
    try:
        return pair.pinv[p, q]
    except KeyError:
        missing = p if p not in pair.pinv.index else q
        raise GraphError(f"unknown vertex {missing!r}") from None


def resistance(pair: LaplacianPair, p, q):
    """r(p, q) = l⁺_pp − 2 l⁺_pq + l⁺_qq."""
    return _entry(pair, p, p) - 2 * _entry(pair, p, q) + _entry(pair, q, q)


def voltage(pair: LaplacianPair, z, x, y):
    """j_z(x, y): potential at x over z when unit current enters at y and leaves at z."""
    return _entry(pair, z, z) - _entry(pair, z, x) - _entry(pair, z, y) + _entry(pair, x, y)


def is_bridge(field: ScalarField, L, r) -> bool:
    """An edge is a bridge iff the resistance between its ends equals its length."""
    return r == L if field.exact else abs(r - L) <= field.tolerance * L


def edge_complement_resistance(graph: MetrizedGraph, pair: LaplacianPair, edge):
    """R_i, inverted from r(p_i, q_i) = L_i R_i / (L_i + R_i); INFINITE for bridges."""
    e = graph.edges[graph.edge_index(edge)]
    f = pair.field
    L = f.convert(e.length)
    r = resistance(pair, e.u, e.v)
    if is_bridge(f, L, r):
        return INFINITE
    if r > L:
        raise ArithmeticError(
            f"edge ({e.u!r}, {e.v!r}): resistance {r} exceeds edge length {L}"
        )
    return L * r / (L - r)


def arm_resistances(graph: MetrizedGraph, pair: LaplacianPair, edge, p) -> EdgeComplementData:
    """Y-arms of Γ − e_i from full-graph resistances via the series/parallel relations."""
    i = graph.edge_index(edge)
    e = graph.edges[i]
    f = pair.field
    L = f.convert(e.length)
    R = edge_complement_resistance(graph, pair, i)
    rp = resistance(pair, e.u, p)
    rq = resistance(pair, e.v, p)
    if R == INFINITE:
        # r(q_i, p) = r(p_i, p) + L_i when p is on the p_i side of the bridge.
        if rp < rq:
            return EdgeComplementData(e, i, p, L, R, f.zero(), INFINITE, rp)
        return EdgeComplementData(e, i, p, L, R, INFINITE, f.zero(), rq)
    diff = (rp - rq) * (L + R) / L
    Ra = (R + diff) / 2
    Rb = (R - diff) / 2
    Rc = rp - (L + Rb) * Ra / (L + R)
    return EdgeComplementData(e, i, p, L, R, Ra, Rb, Rc)


def _network(graph: MetrizedGraph, skip: int | None, field: ScalarField) -> dict:
    """Conductance adjacency of the graph minus edge ``skip``; loops carry no current."""
    adj = {p: {} for p in graph.vertices}
    for k, e in enumerate(graph.edges):
        if k == skip or e.is_loop:
            continue
        g = field.one() / field.convert(e.length)
        adj[e.u][e.v] = adj[e.u].get(e.v, field.zero()) + g
        adj[e.v][e.u] = adj[e.v].get(e.u, field.zero()) + g
    return adj


def grounded_potentials(adj: dict, ground, source, field: ScalarField = EXACT) -> dict:
    """Node potentials with ``ground`` at 0 and unit current entering at ``source``.

    Star-mesh elimination: each non-ground vertex is removed (fewest neighbours
    first), its conductances redistributed among its neighbours and its
    injected current split in proportion; back-substitution then recovers the
    potentials. Only the component of ``ground`` is solved.
    """
    comp = {ground}
    stack = [ground]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    if source not in comp:
        raise GraphError(f"{source!r} is not connected to {ground!r}")
    work = {x: dict(adj[x]) for x in comp}
    current = {x: field.zero() for x in comp}
    if source != ground:
        current[source] += field.one()
    steps = []
    alive = set(comp) - {ground}
    while alive:
        x = min(alive, key=lambda y: len(work[y]))
        alive.discard(x)
        nbrs = work.pop(x)
        total = sum(nbrs.values(), field.zero())
        ix = current.pop(x)
        steps.append((x, nbrs, total, ix))
        items = list(nbrs.items())
        for y, gy in items:
            del work[y][x]
            if ix:
                current[y] += ix * gy / total
        for a in range(len(items)):
            y, gy = items[a]
            for b in range(a + 1, len(items)):
                z, gz = items[b]
                g = gy * gz / total
                work[y][z] = work[y].get(z, field.zero()) + g
                work[z][y] = work[z].get(y, field.zero()) + g
    phi = {ground: field.zero()}
    for x, nbrs, total, ix in reversed(steps):
        phi[x] = (ix + sum((g * phi[y] for y, g in nbrs.items()), field.zero())) / total
    return phi


class EdgeComplement:
    """The network Γ − e_i, reduced with respect to the ends of e_i.

    One grounded solve (p_i at 0, unit current in at q_i) gives the arm
    R_a = j_{p_i}(p, q_i) for every base vertex p at once; R_c needs a further
    solve per base vertex and is computed on demand.
    """

    def __init__(self, graph: MetrizedGraph, edge, field: ScalarField = EXACT):
        self.graph = graph
        self.field = field
        self.index = graph.edge_index(edge)
        self.edge = e = graph.edges[self.index]
        self._adj = _network(graph, self.index, field)
        comps = components(graph, skip_edge=self.index)
        self.bridge = len(comps) > 1
        if self.bridge:
            near = next(c for c in comps if e.u in c)
            self._side = {x: (0 if x in near else 1) for x in graph.vertices}
            self.R = INFINITE
            self._arm = None
        else:
            self._side = None
            self._arm = grounded_potentials(self._adj, e.u, e.v, field)
            self.R = self._arm[e.v]

    def arm_a(self, p):
        """R_a for base vertex ``p`` (INFINITE/0 per side for a bridge)."""
        if self.bridge:
            return self.field.zero() if self._side[p] == 0 else INFINITE
        return self._arm[p]

    def reduction(self, p) -> EdgeComplementData:
        if p not in self.graph:
            raise GraphError(f"unknown vertex {p!r}")
        e, f = self.edge, self.field
        L = f.convert(e.length)
        if self.bridge:
            end = e.u if self._side[p] == 0 else e.v
            Rc = grounded_potentials(self._adj, end, p, f)[p]
            if self._side[p] == 0:
                return EdgeComplementData(e, self.index, p, L, INFINITE, f.zero(), INFINITE, Rc)
            return EdgeComplementData(e, self.index, p, L, INFINITE, INFINITE, f.zero(), Rc)
        Ra = self._arm[p]
        Rb = self.R - Ra
        # r'(p_i, p) = R_a + R_c in the Y.
        Rc = grounded_potentials(self._adj, e.u, p, f)[p] - Ra
        return EdgeComplementData(e, self.index, p, L, self.R, Ra, Rb, Rc)


def two_point_reduction(graph: MetrizedGraph, edge, p, field: ScalarField = EXACT) -> EdgeComplementData:
    """R_a, R_b, R_c and R_i for edge ``edge`` and base vertex ``p``, computed inside Γ − e_i."""
    return EdgeComplement(graph, edge, field).reduction(p)
