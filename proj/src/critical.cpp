#include "csvortex/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csvortex {

namespace {

constexpr int kMaxDoublings = 60;

int scaled_budget(int max_iter) {
    if (max_iter > std::numeric_limits<int>::max() / 10) {
        return std::numeric_limits<int>::max();
    }
    return max_iter * 10;
}

IterationOutcome probe(const WeightedGraph& g, const BackgroundPair& bg,
                       const NonlinearityModel& nl, SolverParams params, double lambda,
                       std::vector<ProbeRecord>& log) {
    params.lambda = lambda;
    IterationOutcome outcome = solve_maximal(g, bg, nl, params);
    log.push_back({lambda, outcome.status, outcome.iterations});
    return outcome;
}

}  // namespace

double analytic_lower_bound(const WeightedGraph& g, const VortexSet& vortices,
                            const NonlinearityModel& nl) {
    const double n = static_cast<double>(std::max(vortices.n1, vortices.n2));
    return 4.0 * std::numbers::pi * n /
           (nl.G.value_at_one() * nl.H.value_at_one() * g.total_volume());
}

double analytic_lower_bound(const BackgroundPair& bg, const NonlinearityModel& nl) {
    const double n = static_cast<double>(std::max(bg.n1, bg.n2));
    return 4.0 * std::numbers::pi * n /
           (nl.G.value_at_one() * nl.H.value_at_one() * bg.total_volume);
}

CriticalResult find_critical(const WeightedGraph& g, const BackgroundPair& bg,
                             const NonlinearityModel& nl, double bisect_tol,
                             const SolverParams& params) {
    if (!(bisect_tol > 0.0)) {
        throw std::invalid_argument("bisect_tol must be positive");
    }
    const double bound = analytic_lower_bound(bg, nl);

    std::vector<ProbeRecord> probes;
    double lo = bound;
    bool lo_probed = false;

    // Doubling from the analytic bound until a convergent λ appears.
    double hi = 2.0 * bound;
    std::optional<SolutionPair> sol_at_hi;
    for (int k = 0; k <= kMaxDoublings; ++k) {
        IterationOutcome outcome = probe(g, bg, nl, params, hi, probes);
        if (outcome.converged()) {
            sol_at_hi = std::move(*outcome.solution);
            break;
        }
        lo = hi;
        lo_probed = true;
        hi *= 2.0;
        if (k == kMaxDoublings) {
            throw std::runtime_error(
                "no convergent lambda found below " + std::to_string(hi) +
                "; pathological inputs or divergence_floor set too high");
        }
    }

    // Convergence slows near the critical coupling, so the iteration budget
    // scales ×10 once the bracket is within 10× of the target width.
    while (hi - lo > bisect_tol) {
        SolverParams probe_params = params;
        if (hi - lo <= 10.0 * bisect_tol) {
            probe_params.max_iter = scaled_budget(params.max_iter);
        }
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;  // bracket is already at floating-point resolution
        }
        IterationOutcome outcome = probe(g, bg, nl, probe_params, mid, probes);
        if (outcome.converged()) {
            hi = mid;
            sol_at_hi = std::move(*outcome.solution);
        } else {
            lo = mid;
            lo_probed = true;
        }
    }

    return CriticalResult{lo, hi, lo_probed, bound, std::move(*sol_at_hi),
                          std::move(probes)};
}

ContinuationReport near_critical_solution(const WeightedGraph& g, const BackgroundPair& bg,
                                          const NonlinearityModel& nl,
                                          const CriticalResult& result,
                                          std::vector<double> epsilons,
                                          const SolverParams& params) {
    if (epsilons.empty()) {
        throw std::invalid_argument("epsilons must be nonempty");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) {
            throw std::invalid_argument("epsilons must be positive");
        }
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
            throw std::invalid_argument("epsilons must be strictly decreasing");
        }
    }

    ContinuationReport report;
    report.epsilons = std::move(epsilons);
    for (const double eps : report.epsilons) {
        const double lambda = result.lambda_hi + eps;
        SolverParams p = params;
        p.lambda = lambda;
        // Same budget scaling as the final bisection bracket: these probes
        // sit next to the critical coupling where convergence is slowest.
        p.max_iter = scaled_budget(params.max_iter);
        IterationOutcome outcome = solve_maximal(g, bg, nl, p);
        if (!outcome.converged()) {
            // Probes above lambda_hi must converge; anything else means the
            // bracket is inconsistent and must be reported, not masked.
            throw std::runtime_error("continuation probe at lambda=" +
                                     std::to_string(lambda) + " did not converge (" +
                                     std::string(to_string(outcome.status)) + ")");
        }
        SolutionPair sol = std::move(*outcome.solution);
        report.trace.push_back(
            {lambda, sobolev_norm(g, sol.u), sobolev_norm(g, sol.v)});
        report.solutions.push_back(std::move(sol));
    }

    for (std::size_t i = 0; i + 1 < report.solutions.size(); ++i) {
        const VertexField du(g, Eigen::VectorXd(report.solutions[i].u.values() -
                                                report.solutions[i + 1].u.values()));
        const VertexField dv(g, Eigen::VectorXd(report.solutions[i].v.values() -
                                                report.solutions[i + 1].v.values()));
        report.step_dist_u.push_back(sobolev_norm(g, du));
        report.step_dist_v.push_back(sobolev_norm(g, dv));
    }

    // Defect of the near-critical proxy evaluated with λ = lambda_hi.
    const SolutionPair& last = report.solutions.back();
    const auto [ru, rv] =
        system_residual(g, bg, nl, result.lambda_hi, last.u, last.v);
    report.final_residual_u = ru;
    report.final_residual_v = rv;

    // Solutions at larger ε must dominate the proxy pointwise.
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < report.solutions.size(); ++i) {
        min_gap = std::min(
            min_gap, (report.solutions[i].u.values() - last.u.values()).minCoeff());
        min_gap = std::min(
            min_gap, (report.solutions[i].v.values() - last.v.values()).minCoeff());
    }
    report.min_domination_gap = min_gap;
    report.domination_ok = report.solutions.size() < 2 || min_gap > 0.0;
    return report;
}

}  // namespace csvortex
