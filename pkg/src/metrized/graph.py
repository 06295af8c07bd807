"""Metrized graphs: model, validation, and subdivision to an optimal vertex set.

A metrized graph is a finite connected multigraph whose edges carry positive
lengths. Self-loops and parallel edges are allowed in general; a graph is
*optimal* when it has neither, which is what the discrete Laplacian needs.
Adding valence-2 vertices inside edges leaves every resistance (and hence
every invariant computed by this package) unchanged, so :func:`optimalize`
reaches an optimal vertex set by subdividing.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterator, Sequence

__all__ = [
    "GraphError",
    "NotOptimalError",
    "Edge",
    "MetrizedGraph",
    "SubdivisionMap",
    "ValidationReport",
    "validate",
    "require_valid",
    "optimalize",
    "valence",
    "subdivide_edge",
    "components",
    "remove_edge",
]

VertexId = Hashable


class GraphError(ValueError):
    """Invalid graph input or an operation applied to an unsuitable graph."""


class NotOptimalError(GraphError):
    """Raised when a graph with self-loops or parallel edges reaches the Laplacian."""


@dataclass(frozen=True)
class Edge:
    u: VertexId
    v: VertexId
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "length", Fraction(self.length))

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def key(self) -> frozenset:
        """Unordered endpoint pair; equal keys mean parallel edges."""
        return frozenset((self.u, self.v))

    def other(self, p):
        if p == self.u:
            return self.v
        if p == self.v:
            return self.u
        raise GraphError(f"{p!r} is not an endpoint of {self}")

    def scaled(self, c) -> Edge:
        return Edge(self.u, self.v, self.length * Fraction(c))


@dataclass(frozen=True)
class MetrizedGraph:
    """Ordered vertex labels and a list of edges with lengths.

    The vertex order is fixed at construction and indexes every matrix built
    from the graph. Construction only normalizes containers; use
    :func:`validate` to check connectivity and lengths.
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges, vertices: Sequence | None = None) -> MetrizedGraph:
        """Build a graph, taking vertex order from first appearance if not given."""
        edges = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        if vertices is None:
            seen = {}
            for e in edges:
                seen.setdefault(e.u, None)
                seen.setdefault(e.v, None)
            vertices = list(seen)
        return cls(tuple(vertices), tuple(edges))

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.vertices)}

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    @cached_property
    def optimal(self) -> bool:
        keys = set()
        for e in self.edges:
            if e.is_loop or e.key in keys:
                return False
            keys.add(e.key)
        return True

    def edge_index(self, edge) -> int:
        """Resolve an edge given by index or by value (first match)."""
        if isinstance(edge, int):
            if not 0 <= edge < len(self.edges):
                raise GraphError(f"edge index {edge} out of range")
            return edge
        for i, e in enumerate(self.edges):
            if e == edge:
                return i
        raise GraphError(f"unknown edge {edge!r}")

    def scaled(self, c) -> MetrizedGraph:
        """Same graph with every length multiplied by ``c``."""
        return MetrizedGraph(self.vertices, tuple(e.scaled(c) for e in self.edges))

    def __contains__(self, p) -> bool:
        return p in self.index


@dataclass(frozen=True)
class SubdivisionMap:
    """How an optimalized (or subdivided) graph relates to its source graph.

    ``piece_to_original[k]`` is the index in ``original.edges`` of the edge
    that new edge ``k`` is a piece of. ``added_vertices`` are the valence-2
    vertices introduced by subdivision.
    """

    original: MetrizedGraph
    piece_to_original: tuple
    added_vertices: frozenset = field(default_factory=frozenset)

    @classmethod
    def identity(cls, graph: MetrizedGraph) -> SubdivisionMap:
        return cls(graph, tuple(range(graph.e)), frozenset())

    @property
    def is_identity(self) -> bool:
        return not self.added_vertices and self.piece_to_original == tuple(
            range(self.original.e)
        )

    def pieces_of(self, i: int) -> list[int]:
        return [k for k, j in enumerate(self.piece_to_original) if j == i]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def components(graph: MetrizedGraph, skip_edge: int | None = None) -> list[list]:
    """Connected components (vertex lists in graph order), optionally ignoring one edge."""
    adj = defaultdict(list)
    for i, e in enumerate(graph.edges):
        if i == skip_edge or e.u not in graph.index or e.v not in graph.index:
            continue
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    comp_of = {}
    comps = []
    for s in graph.vertices:
        if s in comp_of:
            continue
        cid = len(comps)
        comp_of[s] = cid
        members = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = cid
                    members.append(y)
                    queue.append(y)
        order = graph.index
        comps.append(sorted(members, key=order.__getitem__))
    return comps


def validate(graph: MetrizedGraph) -> ValidationReport:
    """Collect every violation of the metrized-graph requirements."""
    problems = []
    if not graph.vertices:
        problems.append("graph has no vertices")
    if len(set(graph.vertices)) != len(graph.vertices):
        dupes = sorted({repr(p) for p in graph.vertices if graph.vertices.count(p) > 1})
        problems.append(f"duplicate vertex labels: {', '.join(dupes)}")
    known = set(graph.vertices)
    for i, e in enumerate(graph.edges):
        if not e.length > 0:
            problems.append(f"edge {i} ({e.u!r}, {e.v!r}) has non-positive length {e.length}")
        for p in (e.u, e.v):
            if p not in known:
                problems.append(f"edge {i} references unknown vertex {p!r}")
    if graph.vertices and len(components(graph)) > 1:
        problems.append("graph is disconnected")
    return ValidationReport(tuple(problems))


def require_valid(graph: MetrizedGraph) -> None:
    report = validate(graph)
    if not report.ok:
        raise GraphError("; ".join(report.violations))


def valence(graph: MetrizedGraph, p) -> int:
    """Number of edge directions at ``p``; a self-loop counts twice."""
    if p not in graph:
        raise GraphError(f"unknown vertex {p!r}")
    return sum((e.u == p) + (e.v == p) for e in graph.edges)


def _fresh_labels(vertices) -> Iterator:
    # Integer-like labels continue the numbering, so "1".."3" gets "4", "5", ...
    taken = set(vertices)
    numeric = [
        int(p)
        for p in vertices
        if (isinstance(p, int) and not isinstance(p, bool))
        or (isinstance(p, str) and p.isdigit())
    ]
    as_int = bool(vertices) and all(
        isinstance(p, int) and not isinstance(p, bool) for p in vertices
    )
    n = max(numeric) + 1 if numeric else len(vertices) + 1
    while True:
        label = n if as_int else str(n)
        n += 1
        if label not in taken:
            taken.add(label)
            yield label


def _path(u, w, lengths, fresh) -> tuple[list[Edge], list]:
    inner = [next(fresh) for _ in lengths[1:]]
    stops = [u, *inner, w]
    return [Edge(a, b, L) for a, b, L in zip(stops, stops[1:], lengths)], inner


def _rebuild(graph, replacement: dict, added: list) -> tuple[MetrizedGraph, SubdivisionMap]:
    edges, owner = [], []
    for i, e in enumerate(graph.edges):
        pieces = replacement.get(i, [e])
        edges.extend(pieces)
        owner.extend([i] * len(pieces))
    new = MetrizedGraph(graph.vertices + tuple(added), tuple(edges))
    return new, SubdivisionMap(graph, tuple(owner), frozenset(added))


def optimalize(graph: MetrizedGraph) -> tuple[MetrizedGraph, SubdivisionMap]:
    """Subdivide until there are no self-loops and no parallel edges.

    Each self-loop gets two interior vertices (three equal pieces); then every
    edge of a parallel family gets a midpoint. New vertices are appended in
    that order, edge by edge. Already-optimal graphs come back unchanged.
    """
    require_valid(graph)
    if graph.optimal:
        return graph, SubdivisionMap.identity(graph)
    fresh = _fresh_labels(graph.vertices)
    replacement, added = {}, []
    for i, e in enumerate(graph.edges):
        if e.is_loop:
            third = e.length / 3
            replacement[i], inner = _path(e.u, e.u, [third] * 3, fresh)
            added.extend(inner)
    family = defaultdict(int)
    for e in graph.edges:
        if not e.is_loop:
            family[e.key] += 1
    for i, e in enumerate(graph.edges):
        if not e.is_loop and family[e.key] > 1:
            half = e.length / 2
            replacement[i], inner = _path(e.u, e.v, [half, half], fresh)
            added.extend(inner)
    return _rebuild(graph, replacement, added)


def subdivide_edge(graph: MetrizedGraph, edge, split_lengths) -> tuple[MetrizedGraph, SubdivisionMap]:
    """Replace one edge by a path whose pieces have the given lengths."""
    i = graph.edge_index(edge)
    e = graph.edges[i]
    lengths = [Fraction(x) for x in split_lengths]
    if not lengths or any(not x > 0 for x in lengths):
        raise GraphError("split lengths must be positive")
    if sum(lengths) != e.length:
        raise GraphError(
            f"split lengths sum to {sum(lengths)}, edge {i} has length {e.length}"
        )
    if len(lengths) == 1:
        return graph, SubdivisionMap.identity(graph)
    pieces, inner = _path(e.u, e.v, lengths, _fresh_labels(graph.vertices))
    return _rebuild(graph, {i: pieces}, inner)


def remove_edge(graph: MetrizedGraph, edge) -> MetrizedGraph:
    """The graph Γ − e_i: same vertex set, edge ``edge`` deleted."""
    i = graph.edge_index(edge)
    return MetrizedGraph(graph.vertices, graph.edges[:i] + graph.edges[i + 1:])
