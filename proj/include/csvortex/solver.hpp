#pragma once

#include "csvortex/graph.hpp"
#include "csvortex/linear.hpp"
#include "csvortex/nonlinearity.hpp"
#include "csvortex/vortex.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace csvortex {

struct SolverParams {
    double lambda = 1.0;
    /// The scheme needs K strictly above λ·G(1)·H(1); the shift is
    /// K = (1 + k_margin)·λ·G(1)·H(1).
    double k_margin = 0.5;
    /// Sup-norm of successive iterate differences required for convergence.
    double tol_step = 1e-12;
    /// Sup-norm defect of the governing system required for convergence.
    double tol_residual = 1e-10;
    int max_iter = 100000;
    /// mean(u_n) or mean(v_n) below this certifies divergence. A suspected
    /// false verdict is checkable by re-running with a lower floor.
    double divergence_floor = -100.0;

    void validate() const;
};

double shift_for(const SolverParams& params, const NonlinearityModel& nl);

/// Converged solution of the shifted system at a given λ, together with the
/// reconstructed originals u′ = u₀ + u, v′ = v₀ + v.
struct SolutionPair {
    VertexField u;
    VertexField v;
    VertexField u_prime;
    VertexField v_prime;
    double lambda;
    int iterations;
    double residual_u;
    double residual_v;
};

struct IterationOutcome {
    enum class Status { converged, diverged, iteration_budget_exceeded };

    Status status = Status::iteration_budget_exceeded;
    std::optional<SolutionPair> solution;  // set iff converged
    int iterations = 0;
    double mean_u = 0.0;
    double mean_v = 0.0;
    double last_step = 0.0;
    double residual_u = 0.0;
    double residual_v = 0.0;

    bool converged() const { return status == Status::converged; }
};

const char* to_string(IterationOutcome::Status status);

/// Thrown when an iterate fails the proven strict pointwise decrease; this
/// signals K below the admissible threshold or a broken solve, never a
/// tolerable state.
class MonotonicityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IterationState {
    VertexField u;
    VertexField v;
};

/// Right-hand sides of the shifted system evaluated pointwise at (u, v):
///   Δu = −λ e^{v₀+v} H(e^{v₀+v}) g(e^{u₀+u}) + 4πN₁/|V|
///   Δv = −λ e^{u₀+u} G(e^{u₀+u}) h(e^{v₀+v}) + 4πN₂/|V|
/// Throws if e^{u₀+u} or e^{v₀+v} exceeds 1 beyond roundoff slack (a broken
/// monotone envelope).
std::pair<VertexField, VertexField> rhs_system(const WeightedGraph& g,
                                               const BackgroundPair& bg,
                                               const NonlinearityModel& nl, double lambda,
                                               const VertexField& u, const VertexField& v);

/// One iteration step: two shifted solves of
///   (Δ−K) u_{n+1} = rhs_u(u_n, v_n) − K u_n   (and the v analogue),
/// asserting the strict pointwise decrease u_{n+1} < u_n, v_{n+1} < v_n.
IterationState iterate_once(const IterationState& state, const BackgroundPair& bg,
                            const NonlinearityModel& nl, const SolverParams& params,
                            const FactorizationCache& cache);

/// Sup-norm defects of the two equations of the shifted system at (u, v).
std::pair<double, double> system_residual(const WeightedGraph& g, const BackgroundPair& bg,
                                          const NonlinearityModel& nl, double lambda,
                                          const VertexField& u, const VertexField& v);

/// Runs the monotone iteration from (u₁,v₁) = (−u₀,−v₀) and classifies the
/// outcome: the maximal solution, certified divergence, or budget exhaustion.
/// One solve is sequential; independent solves at different λ may run
/// concurrently sharing the graph, background, and nonlinearity.
IterationOutcome solve_maximal(const WeightedGraph& g, const BackgroundPair& bg,
                               const NonlinearityModel& nl, const SolverParams& params);

struct LowerSolutionReport {
    bool is_lower_solution;
    /// Minimum pointwise slack Δu_− − rhs over both equations; negative when
    /// the inequality fails somewhere.
    double min_slack;
};

/// Checks the two lower-solution inequalities Δu_− ≥ rhs_u(u_−, v_−),
/// Δv_− ≥ rhs_v(u_−, v_−) pointwise with 1e−12 tolerance.
LowerSolutionReport check_lower_solution(const WeightedGraph& g, const BackgroundPair& bg,
                                         const NonlinearityModel& nl, double lambda,
                                         const VertexField& u_minus,
                                         const VertexField& v_minus);

/// Constant pair (−c₁, −c₂) with c₁ > max u₀, c₂ > max v₀, and the smallest
/// λ making it a lower solution; any larger λ admits a solution.
struct ConstantLowerSolution {
    double c1;
    double c2;
    double min_lambda;
};

ConstantLowerSolution constant_lower_solution(const WeightedGraph& g,
                                              const BackgroundPair& bg,
                                              const NonlinearityModel& nl);

}  // namespace csvortex
