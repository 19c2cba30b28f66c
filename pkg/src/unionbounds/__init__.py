"""Optimal and analytical bounds on the probability of a finite union of events.

The partial information is ``alpha_i = P(A_i)`` and ``gamma_i = sum_j P(A_i & A_j)``.
"""

from .analytic import (
    chi,
    de_caen_bound,
    ds_bound,
    gap_lower_bound,
    gk_bound,
    kat_bound,
    kat_plus_gap_bound,
    shifted_event_min,
    two_moment_min,
    yat_bound,
)
from .construction import CircleLayout, circle_layout, construct_system, verify_realization
from .exceptions import (
    ConstructionError,
    FormatError,
    InfeasibleSummaryError,
    InvalidSummaryError,
    InvalidSystemError,
    UnionBoundsError,
)
from .lp_bounds import (
    LpBoundResult,
    alpha_only_bounds,
    ds_lp,
    kat_lp,
    optimal_lower_lp,
    optimal_upper_lp,
    yat_relaxed_lp,
)
from .report import BoundReport, compute_report
from .simplex import LinearProgram, LpSolution, solve
from .system import (
    DegreeDecomposition,
    FiniteProbabilitySystem,
    MomentSummary,
    degree_decomposition,
    exact_union_probability,
    moment_summary,
    pairwise_matrix,
    validate,
)

__version__ = "0.1.0"
