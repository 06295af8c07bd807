"""Dense inversion kernels: fraction-free elimination for rationals, LU for floats."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

__all__ = ["SingularMatrixError", "bareiss_inverse", "integer_adjugate", "lu_inverse"]


class SingularMatrixError(ArithmeticError):
    pass


def integer_adjugate(a: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Fraction-free Gauss-Jordan on ``[A | I]``.

    Returns ``(d, B)`` with ``A @ B == d * I`` and ``d == ±det(A)``. Every
    intermediate entry is a minor of the augmented matrix, so each division
    by the previous pivot is exact.
    """
    n = len(a)
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        rk = m[k]
        pk = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = m[i]
            f = ri[k]
            if f:
                m[i] = [(pk * x - f * y) // prev for x, y in zip(ri, rk)]
            else:
                m[i] = [(pk * x) // prev for x in ri]
        prev = pk
    # Left block is now diag(d, ..., d) with d the last pivot.
    return prev, [row[n:] for row in m]


def bareiss_inverse(rows) -> list[list[Fraction]]:
    """Exact inverse of a square matrix of rationals."""
    n = len(rows)
    if n == 0:
        return []
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    scaled = [[int(Fraction(x) * den) for x in row] for row in rows]
    d, adj = integer_adjugate(scaled)
    # (den*A)^{-1} = adj/d, so A^{-1} = den*adj/d.
    return [[Fraction(den * x, d) for x in row] for row in adj]


def lu_inverse(rows, tolerance: float = 1e-9) -> list[list[float]]:
    """Float inverse via LAPACK's partially pivoted LU, with a residual check."""
    m = np.asarray(rows, dtype=float)
    if m.size == 0:
        return []
    try:
        inv = np.linalg.inv(m)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("matrix is singular") from exc
    resid = np.abs(m @ inv - np.eye(len(m))).max()
    if not np.isfinite(resid) or resid > max(tolerance, 1e-12) * 1e3:
        raise SingularMatrixError(f"matrix is numerically singular (residual {resid:.3g})")
    return inv.tolist()
