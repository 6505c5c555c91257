#include "csvortex/solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace csvortex {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

// Roundoff slack for the strict-decrease assertion and the exp(u₀+u) ≤ 1
// envelope.
constexpr double kMonotoneSlack = 1e-13;
constexpr double kEnvelopeSlack = 1e-12;
constexpr double kLowerSolutionTol = 1e-12;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", x);
    return buf;
}

double exp_unit_arg(double a, const char* what) {
    const double t = std::exp(a);
    if (t > 1.0 + kEnvelopeSlack) {
        throw std::runtime_error(std::string(what) + ": exp(" + sci(a) +
                                 ") exceeds 1; the monotone envelope is broken");
    }
    return std::min(t, 1.0);
}

void check_binding(const WeightedGraph& g, const BackgroundPair& bg) {
    require_bound(g, bg.u0, "background u0");
    require_bound(g, bg.v0, "background v0");
}

}  // namespace

void SolverParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (!(k_margin > 0.0)) {
        throw std::invalid_argument("k_margin must be positive (K must exceed λG(1)H(1))");
    }
    if (!(tol_step > 0.0) || !(tol_residual > 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("max_iter must be ≥ 1");
    }
    if (!std::isfinite(divergence_floor)) {
        throw std::invalid_argument("divergence_floor must be finite");
    }
}

double shift_for(const SolverParams& params, const NonlinearityModel& nl) {
    return (1.0 + params.k_margin) * params.lambda * nl.G.value_at_one() *
           nl.H.value_at_one();
}

const char* to_string(IterationOutcome::Status status) {
    switch (status) {
        case IterationOutcome::Status::converged:
            return "converged";
        case IterationOutcome::Status::diverged:
            return "diverged";
        case IterationOutcome::Status::iteration_budget_exceeded:
            return "iteration_budget_exceeded";
    }
    return "unknown";
}

std::pair<VertexField, VertexField> rhs_system(const WeightedGraph& g,
                                               const BackgroundPair& bg,
                                               const NonlinearityModel& nl, double lambda,
                                               const VertexField& u, const VertexField& v) {
    check_binding(g, bg);
    require_bound(g, u, "rhs_system");
    require_bound(g, v, "rhs_system");

    const double const_u = four_pi * static_cast<double>(bg.n1) / bg.total_volume;
    const double const_v = four_pi * static_cast<double>(bg.n2) / bg.total_volume;

    VertexField rhs_u(g);
    VertexField rhs_v(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
        const double tu = exp_unit_arg(bg.u0[x] + u[x], "rhs_system");
        const double tv = exp_unit_arg(bg.v0[x] + v[x], "rhs_system");
        rhs_u[x] = -lambda * tv * nl.H.value(tv) * nl.G.primitive(tu) + const_u;
        rhs_v[x] = -lambda * tu * nl.G.value(tu) * nl.H.primitive(tv) + const_v;
    }
    return {std::move(rhs_u), std::move(rhs_v)};
}

IterationState iterate_once(const IterationState& state, const BackgroundPair& bg,
                            const NonlinearityModel& nl, const SolverParams& params,
                            const FactorizationCache& cache) {
    const WeightedGraph& g = cache.graph();
    const double expected_shift = shift_for(params, nl);
    if (std::abs(cache.shift() - expected_shift) > 1e-12 * expected_shift) {
        throw std::invalid_argument("factorization cache shift does not match params");
    }

    auto [rhs_u, rhs_v] = rhs_system(g, bg, nl, params.lambda, state.u, state.v);
    rhs_u.values() -= cache.shift() * state.u.values();
    rhs_v.values() -= cache.shift() * state.v.values();

    IterationState next{cache.solve(rhs_u), cache.solve(rhs_v)};

    for (std::size_t x = 0; x < g.size(); ++x) {
        if (next.u[x] > state.u[x] + kMonotoneSlack ||
            next.v[x] > state.v[x] + kMonotoneSlack) {
            throw MonotonicityError(
                "strict decrease violated at vertex '" + g.id_of(x) +
                "' (du=" + sci(next.u[x] - state.u[x]) +
                ", dv=" + sci(next.v[x] - state.v[x]) +
                "); K may be below the admissible threshold");
        }
    }
    return next;
}

std::pair<double, double> system_residual(const WeightedGraph& g, const BackgroundPair& bg,
                                          const NonlinearityModel& nl, double lambda,
                                          const VertexField& u, const VertexField& v) {
    const auto [rhs_u, rhs_v] = rhs_system(g, bg, nl, lambda, u, v);
    const VertexField lap_u = laplacian(g, u);
    const VertexField lap_v = laplacian(g, v);
    const double ru = (lap_u.values() - rhs_u.values()).cwiseAbs().maxCoeff();
    const double rv = (lap_v.values() - rhs_v.values()).cwiseAbs().maxCoeff();
    return {ru, rv};
}

IterationOutcome solve_maximal(const WeightedGraph& g, const BackgroundPair& bg,
                               const NonlinearityModel& nl, const SolverParams& params) {
    params.validate();
    check_binding(g, bg);

    const FactorizationCache cache(ShiftedOperator(g, shift_for(params, nl)));
    IterationState state{VertexField(g, Eigen::VectorXd(-bg.u0.values())),
                         VertexField(g, Eigen::VectorXd(-bg.v0.values()))};

    IterationOutcome out;
    out.residual_u = std::numeric_limits<double>::quiet_NaN();
    out.residual_v = std::numeric_limits<double>::quiet_NaN();

    for (int n = 1; n <= params.max_iter; ++n) {
        IterationState next = iterate_once(state, bg, nl, params, cache);
        const double step =
            std::max((next.u.values() - state.u.values()).cwiseAbs().maxCoeff(),
                     (next.v.values() - state.v.values()).cwiseAbs().maxCoeff());
        state = std::move(next);

        out.iterations = n;
        out.last_step = step;
        out.mean_u = mean(g, state.u);
        out.mean_v = mean(g, state.v);

        if (out.mean_u < params.divergence_floor || out.mean_v < params.divergence_floor) {
            out.status = IterationOutcome::Status::diverged;
            return out;
        }

        if (step < params.tol_step) {
            const auto [ru, rv] = system_residual(g, bg, nl, params.lambda, state.u, state.v);
            out.residual_u = ru;
            out.residual_v = rv;
            if (ru <= params.tol_residual && rv <= params.tol_residual) {
                const double margin_u = (bg.u0.values() + state.u.values()).maxCoeff();
                const double margin_v = (bg.v0.values() + state.v.values()).maxCoeff();
                if (!(margin_u < 0.0) || !(margin_v < 0.0)) {
                    throw std::runtime_error(
                        "converged iterate violates the sign condition u0+u < 0 "
                        "(margins " +
                        sci(margin_u) + ", " + sci(margin_v) + ")");
                }
                VertexField u_prime(g, Eigen::VectorXd(bg.u0.values() + state.u.values()));
                VertexField v_prime(g, Eigen::VectorXd(bg.v0.values() + state.v.values()));
                out.status = IterationOutcome::Status::converged;
                out.solution = SolutionPair{state.u,          state.v, std::move(u_prime),
                                            std::move(v_prime), params.lambda, n,
                                            ru,               rv};
                return out;
            }
        }
    }

    out.status = IterationOutcome::Status::iteration_budget_exceeded;
    const auto [ru, rv] = system_residual(g, bg, nl, params.lambda, state.u, state.v);
    out.residual_u = ru;
    out.residual_v = rv;
    return out;
}

LowerSolutionReport check_lower_solution(const WeightedGraph& g, const BackgroundPair& bg,
                                         const NonlinearityModel& nl, double lambda,
                                         const VertexField& u_minus,
                                         const VertexField& v_minus) {
    const auto [rhs_u, rhs_v] = rhs_system(g, bg, nl, lambda, u_minus, v_minus);
    const VertexField lap_u = laplacian(g, u_minus);
    const VertexField lap_v = laplacian(g, v_minus);

    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < g.size(); ++x) {
        min_slack = std::min(min_slack, lap_u[x] - rhs_u[x]);
        min_slack = std::min(min_slack, lap_v[x] - rhs_v[x]);
    }
    return {min_slack >= -kLowerSolutionTol, min_slack};
}

ConstantLowerSolution constant_lower_solution(const WeightedGraph& g,
                                              const BackgroundPair& bg,
                                              const NonlinearityModel& nl) {
    check_binding(g, bg);
    const double c1 = bg.u0.values().maxCoeff() + 1.0;
    const double c2 = bg.v0.values().maxCoeff() + 1.0;
    const double const_u = four_pi * static_cast<double>(bg.n1) / bg.total_volume;
    const double const_v = four_pi * static_cast<double>(bg.n2) / bg.total_volume;

    // Constants have Δ ≡ 0, so the pair is a lower solution exactly when
    // λ·(nonlinear factor) ≥ 4πN_i/|V| at every vertex.
    double min_lambda = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const double tu = std::exp(bg.u0[x] - c1);
        const double tv = std::exp(bg.v0[x] - c2);
        const double factor_u = tv * nl.H.value(tv) * nl.G.primitive(tu);
        const double factor_v = tu * nl.G.value(tu) * nl.H.primitive(tv);
        min_lambda = std::max(min_lambda, const_u / factor_u);
        min_lambda = std::max(min_lambda, const_v / factor_v);
    }
    return {c1, c2, min_lambda};
}

}  // namespace csvortex
