"""Invariants of metrized graphs from the discrete Laplacian and its pseudo-inverse."""

from .circuit import (
    EdgeComplement,
    EdgeComplementData,
    arm_resistances,
    edge_complement_resistance,
    resistance,
    two_point_reduction,
    voltage,
)
from .graph import (
    Edge,
    GraphError,
    MetrizedGraph,
    NotOptimalError,
    SubdivisionMap,
    ValidationReport,
    optimalize,
    subdivide_edge,
    valence,
    validate,
)
from .laplacian import (
    LaplacianPair,
    SingularMatrixError,
    SquareMatrix,
    build_laplacian,
    laplacian_pair,
    matrix_checks,
    pseudo_inverse,
    solve_inverse,
)
from .report import CheckReport, CheckResult
from .scalars import EXACT, FLOAT, INFINITE, ScalarField
from .tau import (
    CanonicalMeasure,
    MeasureMismatchError,
    TauMismatchError,
    TauReport,
    canonical_measure,
    identity_suite,
    measure_pullback,
    tau,
    tau_circuit,
    tau_circuit_all_bases,
    tau_pinv,
)

__version__ = "0.1.0"
