#pragma once

#include "csvortex/solver.hpp"

#include <vector>

namespace csvortex {

/// Necessary existence bound 4π·max{N₁,N₂}/(G(1)·H(1)·|V|); no solution can
/// exist below it.
double analytic_lower_bound(const WeightedGraph& g, const VortexSet& vortices,
                            const NonlinearityModel& nl);
double analytic_lower_bound(const BackgroundPair& bg, const NonlinearityModel& nl);

struct ProbeRecord {
    double lambda;
    IterationOutcome::Status status;
    int iterations;
};

/// Bracket around the critical coupling: non-convergent at lambda_lo (or
/// lambda_lo is the analytic bound, never probed), convergent at lambda_hi.
struct CriticalResult {
    double lambda_lo;
    double lambda_hi;
    bool lo_probed;  // false → lambda_lo is the analytic bound itself
    double analytic_bound;
    SolutionPair solution_at_hi;
    std::vector<ProbeRecord> probes;

    double width() const { return lambda_hi - lambda_lo; }
};

/// Bisects the existence dichotomy down to bisect_tol. The initial upper
/// bracket is found by doubling from the analytic bound; the set of
/// convergent λ is upward closed, so the Diverged-below/Converged-above
/// invariant is preserved. Iteration budgets scale ×10 once the bracket
/// narrows to 10·bisect_tol. params.lambda is ignored (set per probe).
CriticalResult find_critical(const WeightedGraph& g, const BackgroundPair& bg,
                             const NonlinearityModel& nl, double bisect_tol,
                             const SolverParams& params);

struct ContinuationPoint {
    double lambda;
    double sobolev_u;
    double sobolev_v;
};

/// Continuation evidence for a solution at the critical coupling itself:
/// solves at λ = lambda_hi + ε for each ε, reports the W^{1,2} Cauchy
/// behaviour, the defect of the last pair re-evaluated with λ = lambda_hi,
/// and the pointwise domination of the near-critical proxy by every solution
/// at larger ε.
struct ContinuationReport {
    std::vector<double> epsilons;
    std::vector<ContinuationPoint> trace;
    std::vector<SolutionPair> solutions;
    std::vector<double> step_dist_u;  // W^{1,2} distances between consecutive solutions
    std::vector<double> step_dist_v;
    double final_residual_u;
    double final_residual_v;
    bool domination_ok;
    double min_domination_gap;
};

ContinuationReport near_critical_solution(const WeightedGraph& g, const BackgroundPair& bg,
                                          const NonlinearityModel& nl,
                                          const CriticalResult& result,
                                          std::vector<double> epsilons,
                                          const SolverParams& params);

}  // namespace csvortex
