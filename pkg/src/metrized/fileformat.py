"""Graph text format and JSON serialization.

Text format, one directive per line::

    # comment
    vertex <label>              (optional; fixes the vertex order)
    edge <label_u> <label_v> <length>

``<length>`` is ``p/q`` or a decimal literal; both are read exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .graph import Edge, GraphError, MetrizedGraph
from .scalars import format_exact, parse_length

__all__ = [
    "ParseError",
    "parse_graph_text",
    "parse_graph_file",
    "format_graph",
    "graph_to_dict",
    "graph_from_dict",
]


class ParseError(GraphError):
    def __init__(self, message: str, lineno: int | None = None, source: str = "<string>"):
        self.lineno = lineno
        self.source = source
        where = f"{source}:{lineno}: " if lineno is not None else f"{source}: "
        super().__init__(where + message)


def parse_graph_text(text: str, source: str = "<string>") -> MetrizedGraph:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
        return graph_from_dict(data, source)

    declared: list = []
    declared_at: dict = {}
    edges: list[tuple[int, Edge]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected 'vertex <label>'", lineno, source)
            label = tokens[1]
            if label in declared_at:
                raise ParseError(
                    f"duplicate vertex label {label!r} (first declared on line {declared_at[label]})",
                    lineno, source)
            declared_at[label] = lineno
            declared.append(label)
        elif kind == "edge":
            if len(tokens) != 4:
                raise ParseError("expected 'edge <u> <v> <length>'", lineno, source)
            try:
                length = parse_length(tokens[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, source) from None
            if length <= 0:
                raise ParseError(f"non-positive length {tokens[3]}", lineno, source)
            edges.append((lineno, Edge(tokens[1], tokens[2], length)))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, source)

    if declared:
        for lineno, e in edges:
            for p in (e.u, e.v):
                if p not in declared_at:
                    raise ParseError(f"edge endpoint {p!r} is not a declared vertex", lineno, source)
        vertices = declared
    else:
        vertices = list(dict.fromkeys(p for _, e in edges for p in (e.u, e.v)))
    if not vertices:
        raise ParseError("no vertices", None, source)
    return MetrizedGraph(tuple(vertices), tuple(e for _, e in edges))


def parse_graph_file(path) -> MetrizedGraph:
    path = Path(path)
    return parse_graph_text(path.read_text(), str(path))


def _check_label(p) -> str:
    s = str(p)
    if not s or any(c.isspace() for c in s) or "#" in s:
        raise GraphError(f"label {p!r} cannot be written in the text format")
    return s


def format_graph(graph: MetrizedGraph) -> str:
    lines = [f"vertex {_check_label(p)}" for p in graph.vertices]
    lines += [
        f"edge {_check_label(e.u)} {_check_label(e.v)} {format_exact(e.length)}"
        for e in graph.edges
    ]
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: MetrizedGraph) -> dict:
    return {
        "vertices": [str(p) for p in graph.vertices],
        "edges": [
            {"u": str(e.u), "v": str(e.v), "length": format_exact(e.length)}
            for e in graph.edges
        ],
    }


def graph_from_dict(data: dict, source: str = "<json>") -> MetrizedGraph:
    if "graph" in data and isinstance(data["graph"], dict):
        data = data["graph"]
    try:
        edges = []
        for k, item in enumerate(data.get("edges", [])):
            raw = item["length"]
            length = Fraction(raw) if isinstance(raw, int) else parse_length(str(raw))
            if length <= 0:
                raise ParseError(f"edge {k}: non-positive length {raw}", None, source)
            edges.append(Edge(str(item["u"]), str(item["v"]), length))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed edge entry: {exc}", None, source) from None
    vertices = [str(p) for p in data.get("vertices", [])]
    if len(set(vertices)) != len(vertices):
        raise ParseError("duplicate vertex label", None, source)
    if vertices:
        known = set(vertices)
        for e in edges:
            for p in (e.u, e.v):
                if p not in known:
                    raise ParseError(f"edge endpoint {p!r} is not a declared vertex", None, source)
    else:
        vertices = list(dict.fromkeys(p for e in edges for p in (e.u, e.v)))
    if not vertices:
        raise ParseError("no vertices", None, source)
    return MetrizedGraph(tuple(vertices), tuple(edges))
