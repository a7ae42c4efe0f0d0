"""Exact minimal log discrepancies of determinantal pairs of square matrices,
with independent brute-force verification oracles."""

from .core import (
    INF,
    DeterminantalPair,
    ExtendedPartition,
    MldValue,
    PreconditionError,
    new_pair,
    new_partition,
)
from .forms import (
    ChartForm,
    ExteriorForm,
    NashReport,
    ReductionResult,
    chart_form,
    d_minor,
    reduce_top_form,
    verify_chart_transition,
    verify_nash,
)
from .mld import (
    BetaVector,
    beta_coefficients,
    is_lc_along,
    is_lc_at_rank,
    is_terminal,
    mld_along,
    mld_at_rank,
    semicontinuity_profile,
)
from .oracle import (
    ABOVE_TRUNCATION,
    LocusTarget,
    OracleComparison,
    OracleResult,
    PointTarget,
    compare_with_closed_form,
    discrepancy_objective,
    minimize_objective,
    series_minor_order,
)
from .orbits import (
    contact_order_subvariety,
    nash_contact_order,
    orbit_codim,
    orbit_codim_point,
    orbit_has_finite_codim,
    orbit_in_jet_space,
    orbit_meets_point_fiber,
)
from .polynomials import MinorIndex, MultiPoly, TruncatedSeries, minor_poly, substitute_series
from .tableaux import (
    DoubleTableau,
    Membership,
    StandardExpansion,
    Tableau,
    YoungDiagram,
    bideterminant,
    dominance_leq,
    enumerate_standard_basis,
    is_standard,
    straighten,
    subalgebra_membership,
    tableau_leq,
)

__all__ = [name for name in dir() if not name.startswith("_")]
