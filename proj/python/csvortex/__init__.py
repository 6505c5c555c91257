"""Solver for the generalized self-dual Chern-Simons system on finite graphs."""

from ._core import (
    AprioriNorms,
    BackgroundPair,
    ConstantLowerSolution,
    ContinuationPoint,
    ContinuationReport,
    CriticalResult,
    DiagnosticReport,
    IntegralIdentities,
    IterationOutcome,
    LowerSolutionReport,
    MonotonicityCheck,
    NonlinearityModel,
    PotentialKind,
    PotentialModel,
    ProbeRecord,
    SolutionPair,
    SolverParams,
    SpeciesNorms,
    Status,
    VertexField,
    VortexSet,
    WeightedGraph,
    analytic_lower_bound,
    apriori_norms,
    build_report,
    check_integral_identities,
    check_lambda_monotonicity,
    check_lower_solution,
    compute_background,
    constant_lower_solution,
    dirac_field,
    find_critical,
    gamma,
    integrate,
    laplacian,
    load_graph,
    mean,
    near_critical_solution,
    parse_graph,
    solve_maximal,
    sobolev_norm,
    split,
    system_residual,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
