"""Discrete Laplacian of an optimal metrized graph and its Moore-Penrose pseudo-inverse."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .graph import MetrizedGraph, NotOptimalError, require_valid
from .linalg import SingularMatrixError, bareiss_inverse, lu_inverse
from .report import CheckReport, CheckResult
from .scalars import EXACT, ScalarField

__all__ = [
    "SquareMatrix",
    "LaplacianPair",
    "SingularMatrixError",
    "build_laplacian",
    "pseudo_inverse",
    "solve_inverse",
    "laplacian_pair",
    "matrix_checks",
]


@dataclass(frozen=True)
class SquareMatrix:
    """A v×v matrix whose rows and columns are indexed by vertex labels."""

    labels: tuple
    rows: tuple
    field: ScalarField = EXACT

    def __post_init__(self):
        rows = tuple(tuple(self.field.convert(x) for x in row) for row in self.rows)
        n = len(self.labels)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        if len(set(self.labels)) != n:
            raise ValueError("matrix labels must be distinct")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "rows", rows)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.labels)}

    @property
    def order(self) -> int:
        return len(self.labels)

    def __getitem__(self, pq):
        p, q = pq
        return self.rows[self.index[p]][self.index[q]]

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.order)), self.field.zero())

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(self.order)]

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(self.labels, tuple(zip(*self.rows)), self.field)

    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        cols = list(zip(*other.rows))
        zero = self.field.zero()
        prod = [[sum((a * b for a, b in zip(row, col)), zero) for col in cols] for row in self.rows]
        return SquareMatrix(self.labels, prod, self.field)

    def with_entry(self, p, q, value) -> SquareMatrix:
        rows = [list(r) for r in self.rows]
        rows[self.index[p]][self.index[q]] = value
        return SquareMatrix(self.labels, rows, self.field)

    def max_abs(self):
        return max((abs(x) for row in self.rows for x in row), default=self.field.zero())

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class LaplacianPair:
    lap: SquareMatrix
    pinv: SquareMatrix

    @property
    def field(self) -> ScalarField:
        return self.lap.field

    @property
    def labels(self) -> tuple:
        return self.lap.labels


def build_laplacian(graph: MetrizedGraph, field: ScalarField = EXACT) -> SquareMatrix:
    """L = D − A with adjacency weight 1/L_k between the ends of each edge."""
    require_valid(graph)
    if not graph.optimal:
        raise NotOptimalError("graph has self-loops or parallel edges; optimalize it first")
    n = graph.v
    idx = graph.index
    zero = field.zero()
    rows = [[zero] * n for _ in range(n)]
    for e in graph.edges:
        i, j = idx[e.u], idx[e.v]
        w = field.one() / field.convert(e.length)
        rows[i][j] -= w
        rows[j][i] -= w
        rows[i][i] += w
        rows[j][j] += w
    return SquareMatrix(graph.vertices, rows, field)


def solve_inverse(m: SquareMatrix) -> SquareMatrix:
    """Dense inverse; raises :class:`SingularMatrixError` for singular input."""
    if m.field.exact:
        inv = bareiss_inverse(m.rows)
    else:
        inv = lu_inverse(m.rows, m.field.tolerance)
    return SquareMatrix(m.labels, inv, m.field)


def pseudo_inverse(lap: SquareMatrix) -> SquareMatrix:
    """L⁺ = (L − J/v)⁻¹ + J/v."""
    n = lap.order
    f = lap.field
    c = f.one() / n
    shifted = SquareMatrix(lap.labels, [[x - c for x in row] for row in lap.rows], f)
    try:
        inv = solve_inverse(shifted)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "L - J/v is singular; the graph is disconnected or L is malformed"
        ) from exc
    return SquareMatrix(lap.labels, [[x + c for x in row] for row in inv.rows], f)


def laplacian_pair(graph: MetrizedGraph, field: ScalarField = EXACT) -> LaplacianPair:
    lap = build_laplacian(graph, field)
    return LaplacianPair(lap, pseudo_inverse(lap))


def _matrices_close(a: SquareMatrix, b: SquareMatrix, scale=1) -> bool:
    f = a.field
    return all(
        f.close(x, y, scale) for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb)
    )


def _centering(n, field) -> SquareMatrix:
    c = field.one() / n
    return [[(field.one() if i == j else field.zero()) - c for j in range(n)] for i in range(n)]


def matrix_checks(pair: LaplacianPair) -> CheckReport:
    """Symmetry, double centering, L L⁺ = I − J/v and the other L⁺ identities."""
    lap, pinv, f = pair.lap, pair.pinv, pair.field
    n = lap.order
    zero = f.zero()
    scale = max(lap.max_abs() * pinv.max_abs(), 1)
    lp = lap @ pinv
    pl = pinv @ lap
    target = SquareMatrix(lap.labels, _centering(n, f), f)
    results = []

    def add(name, ok, detail=""):
        results.append(CheckResult(name, bool(ok), detail))

    add("L symmetric", _matrices_close(lap, lap.transpose(), lap.max_abs()))
    add("L+ symmetric", _matrices_close(pinv, pinv.transpose(), pinv.max_abs()))
    add("L doubly centered",
        all(f.close(sum(r, zero), zero, lap.max_abs()) for r in lap.rows)
        and all(f.close(sum(c, zero), zero, lap.max_abs()) for c in zip(*lap.rows)))
    add("L+ doubly centered",
        all(f.close(sum(r, zero), zero, pinv.max_abs()) for r in pinv.rows)
        and all(f.close(sum(c, zero), zero, pinv.max_abs()) for c in zip(*pinv.rows)))
    add("L L+ = I - J/v", _matrices_close(lp, target, scale))
    add("L+ L = I - J/v", _matrices_close(pl, target, scale))
    # sum_s l+_{ps} l_{sq}: -1/v off the diagonal, (v-1)/v on it.
    entry_ok = True
    for i in range(n):
        for j in range(n):
            s = sum((pinv.rows[i][k] * lap.rows[k][j] for k in range(n)), zero)
            want = (f.one() * (n - 1) / n) if i == j else -f.one() / n
            entry_ok &= f.close(s, want, scale)
    add("sum_s l+_ps l_sq entries", entry_ok)
    add("Moore-Penrose (i) L L+ L = L", _matrices_close(lp @ lap, lap, scale * lap.max_abs()))
    add("Moore-Penrose (ii) L+ L L+ = L+", _matrices_close(pl @ pinv, pinv, scale * pinv.max_abs()))
    add("Moore-Penrose (iii) (L L+)^T = L L+", _matrices_close(lp.transpose(), lp, scale))
    add("Moore-Penrose (iv) (L+ L)^T = L+ L", _matrices_close(pl.transpose(), pl, scale))
    dominated = all(
        pinv.rows[i][i] >= pinv.rows[i][j] or f.close(pinv.rows[i][i], pinv.rows[i][j], pinv.max_abs())
        for i in range(n) for j in range(n)
    )
    add("l+_pp >= l+_pq", dominated)
    tr = pinv.trace()
    add("trace(L+) >= 0", tr > 0 or (n == 1 and tr == 0), f"trace = {tr}")
    return CheckReport(tuple(results))
