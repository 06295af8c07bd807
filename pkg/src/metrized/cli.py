"""Command-line front end: ``metrized <verb> <graph-file> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog
from .circuit import edge_complement_resistance, resistance, voltage
from .fileformat import format_graph, graph_to_dict, parse_graph_file
from .graph import GraphError, optimalize
from .laplacian import SingularMatrixError, laplacian_pair, matrix_checks
from .scalars import EXACT, FLOAT, INFINITE, format_decimal, format_exact
from .tau import (
    TauMismatchError,
    canonical_measure,
    identity_suite,
    measure_pullback,
    tau_circuit,
    tau_pinv,
)


class _Out:
    """Collects human-readable lines and the JSON ``result``/``checks`` payload."""

    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []
        self.result: dict = {}
        self.checks: list = []

    def value(self, x) -> dict:
        if x == INFINITE:
            return {"exact": "inf", "decimal": None}
        exact = format_exact(x) if isinstance(x, (Fraction, int)) else None
        return {"exact": exact, "decimal": float(x)}

    def text(self, x) -> str:
        digits = self.args.digits
        if x == INFINITE:
            return "inf"
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return str(x.numerator)
            return f"{format_exact(x)} (= {format_decimal(x, digits)})"
        return format_decimal(x, digits)

    def cell(self, x) -> str:
        if isinstance(x, Fraction) or x == INFINITE:
            return format_exact(x)
        return format_decimal(x, self.args.digits)


def _notice(msg: str) -> None:
    print(f"note: {msg}", file=sys.stderr)


def _load(args):
    graph = args.graph
    opt, smap = optimalize(graph)
    if not smap.is_identity:
        _notice(f"optimalized vertex set: added {len(smap.added_vertices)} valence-2 vertices")
    field = FLOAT if args.float else EXACT
    return graph, opt, smap, field


def _cmd_tau(args, out: _Out):
    _, opt, _, field = _load(args)
    if args.method == "circuit":
        rep = tau_circuit(opt, field=field)
        out.result["tau"] = out.value(rep.tau)
        out.lines.append(out.text(rep.tau))
        return 0
    pair = laplacian_pair(opt, field)
    rep = tau_pinv(opt, pair)
    out.result.update(
        tau=out.value(rep.tau),
        method=rep.method,
        forms={k: out.value(v) for k, v in rep.details.items()},
        lower_bound=out.value(rep.lower_bound),
        total_length=out.value(rep.graph_total_length),
    )
    out.lines.append(out.text(rep.tau))
    if args.method == "both":
        circ = tau_circuit(opt, field=field)
        agree = field.close(rep.tau, circ.tau, rep.tau)
        out.result["circuit"] = out.value(circ.tau)
        out.checks.append({"name": "pinv == circuit", "passed": agree})
        out.lines.append(f"circuit: {out.text(circ.tau)} ({'agrees' if agree else 'DISAGREES'})")
        return 0 if agree else 1
    return 0


def _pair_for(args):
    _, opt, _, field = _load(args)
    return opt, laplacian_pair(opt, field)


def _cmd_resistance(args, out: _Out):
    _, pair = _pair_for(args)
    r = resistance(pair, args.u, args.v)
    out.result["resistance"] = out.value(r)
    out.lines.append(out.text(r))
    return 0


def _cmd_voltage(args, out: _Out):
    _, pair = _pair_for(args)
    j = voltage(pair, args.z, args.x, args.y)
    out.result["voltage"] = out.value(j)
    out.lines.append(out.text(j))
    return 0


def _matrix_lines(out, name, m):
    width = max(len(out.cell(x)) for row in m.rows for x in row)
    lines = [f"{name}:"]
    lines += [" ".join(out.cell(x).rjust(width) for x in row) for row in m.rows]
    return lines


def _cmd_laplacian(args, out: _Out):
    _, pair = _pair_for(args)
    out.result.update(
        vertices={str(p): i for i, p in enumerate(pair.labels)},
        laplacian=[[out.cell(x) for x in row] for row in pair.lap.rows],
        pseudo_inverse=[[out.cell(x) for x in row] for row in pair.pinv.rows],
    )
    out.lines.append("vertices: " + " ".join(str(p) for p in pair.labels))
    out.lines += _matrix_lines(out, "L", pair.lap)
    out.lines += _matrix_lines(out, "L+", pair.pinv)
    return 0


def _cmd_canmeasure(args, out: _Out):
    _, opt, smap, field = _load(args)
    measure = canonical_measure(opt, laplacian_pair(opt, field))
    if args.original:
        measure = measure_pullback(measure, smap, field)
    g = measure.graph
    out.result.update(
        vertex_coefficients={str(p): out.value(c) for p, c in measure.vertex_coefficients.items()},
        edge_densities=[
            {"u": str(e.u), "v": str(e.v), "density": out.value(d)}
            for e, d in zip(g.edges, measure.edge_densities)
        ],
        total_mass=out.value(measure.total_mass()),
    )
    out.lines += [f"vertex {p}: {out.text(c)}" for p, c in measure.vertex_coefficients.items()]
    out.lines += [
        f"edge {k} ({e.u}, {e.v}): {out.text(d)}"
        for k, (e, d) in enumerate(zip(g.edges, measure.edge_densities))
    ]
    out.lines.append(f"total mass: {out.text(measure.total_mass())}")
    return 0


def _cmd_edgedata(args, out: _Out):
    opt, pair = _pair_for(args)
    measure = canonical_measure(opt, pair)
    rows = []
    out.lines.append("edge u v L_i R_i density")
    for k, (e, d) in enumerate(zip(opt.edges, measure.edge_densities)):
        R = edge_complement_resistance(opt, pair, k)
        L = pair.field.convert(e.length)
        rows.append({"u": str(e.u), "v": str(e.v), "L": out.value(L), "R": out.value(R),
                     "density": out.value(d)})
        out.lines.append(f"{k} {e.u} {e.v} {out.cell(L)} {out.cell(R)} {out.cell(d)}")
    out.result["edges"] = rows
    return 0


def _cmd_check(args, out: _Out):
    opt, pair = _pair_for(args)
    report = matrix_checks(pair) + identity_suite(opt, pair, bridge_limits=args.bridge_limits)
    out.checks += [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in report]
    out.result["notes"] = list(report.notes)
    out.lines += report.lines()
    out.lines.append("all checks passed" if report.ok else f"{len(report.failed())} check(s) FAILED")
    return 0 if report.ok else 1


def _cmd_optimalize(args, out: _Out):
    _, opt, _, _ = _load(args)
    out.result["graph"] = graph_to_dict(opt)
    out.lines.append(format_graph(opt).rstrip("\n"))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    backend = common.add_mutually_exclusive_group()
    backend.add_argument("--exact", action="store_true", help="exact rational arithmetic (default)")
    backend.add_argument("--float", action="store_true", help="double-precision arithmetic")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--digits", type=int, default=12, help="significant digits for decimals")

    parser = argparse.ArgumentParser(
        prog="metrized",
        description="Tau constant, canonical measure and resistances of metrized graphs.",
    )
    parser.add_argument("--demo", choices=sorted(catalog.DEMOS),
                        help="write a bundled example graph file and exit")
    parser.add_argument("--out", default=".", help="directory for --demo output")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")

    def verb(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="graph file (text format or JSON)")
        return p

    p = verb("tau", "tau constant")
    p.add_argument("--method", choices=("pinv", "circuit", "both"), default="pinv")
    p = verb("resistance", "effective resistance r(u, v)")
    p.add_argument("u")
    p.add_argument("v")
    p = verb("voltage", "voltage j_z(x, y)")
    p.add_argument("z")
    p.add_argument("x")
    p.add_argument("y")
    verb("laplacian", "discrete Laplacian and its pseudo-inverse")
    p = verb("canmeasure", "canonical measure")
    p.add_argument("--original", action="store_true",
                   help="report on the input graph instead of the optimalized one")
    verb("edgedata", "per-edge L_i, R_i and canonical density")
    p = verb("check", "matrix and identity checks")
    p.add_argument("--bridge-limits", action="store_true",
                   help="also run the R_i identities on graphs with bridges, using R_i -> inf limits")
    verb("optimalize", "print the graph with an optimal vertex set")
    return parser


_COMMANDS = {
    "tau": _cmd_tau,
    "resistance": _cmd_resistance,
    "voltage": _cmd_voltage,
    "laplacian": _cmd_laplacian,
    "canmeasure": _cmd_canmeasure,
    "edgedata": _cmd_edgedata,
    "check": _cmd_check,
    "optimalize": _cmd_optimalize,
}


def _demo(name: str, outdir: str) -> int:
    path = Path(outdir) / f"{name}.graph"
    path.write_text(format_graph(catalog.DEMOS[name]()))
    print(path)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.demo:
        if args.verb:
            parser.error("--demo cannot be combined with a verb")
        return _demo(args.demo, args.out)
    if not args.verb:
        parser.error("a verb is required")
    out = _Out(args)
    try:
        graph = args.graph = parse_graph_file(args.file)
        status = _COMMANDS[args.verb](args, out)
    except (OSError, GraphError, SingularMatrixError, TauMismatchError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        doc = {
            "graph": graph_to_dict(graph),
            "backend": "float" if args.float else "exact",
            "result": out.result,
            "checks": out.checks,
        }
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(out.lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
