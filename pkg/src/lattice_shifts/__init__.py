"""Backward shifts on directed lattice graphs: exact powers, right inverses,
hypercyclicity criteria on weights and eigenvector families."""

from .graph import (
    BilateralStrip,
    DiamondChain,
    DomainError,
    GraphModel,
    HalfPlane,
    PathCycle,
    Quadrant,
    SkipPath,
    Strip,
    UnsupportedModelError,
    children,
    children_n,
    parents,
    structural_obstruction,
    truncate,
)
from .space import (
    C0,
    Constant,
    GeometricJ,
    GeometricSum,
    Lp,
    OneCoordinate,
    PolynomialJ,
    Rule,
    SparseVector,
    Table,
    boundedness_report,
    eval_weight,
    norm,
)
from .shift import apply, diagonal_regroup, diagonal_ungroup, generalized_shift_apply, power_apply, power_closed, restrict
from .rightinv import DiagonalBasisParams, alpha_table, hc_approximant, right_inverse_quadrant, right_inverse_strip
from .criteria import (
    Verdict,
    necessary_sum,
    quadrant_mixing_test,
    quadrant_obstruction_test,
    skip_graph_test,
    strip_criterion,
    strip_criterion_bilateral,
)
from .spectral import eigen_residual, eigenvector_quadrant, eigenvector_skip, gs_region_scan
from .oracle import equivalence_check, matrix_power_apply, truncated_matrix

__version__ = "0.1.0"
