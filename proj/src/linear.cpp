#include "csvortex/linear.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace csvortex {

namespace {

constexpr double kShiftedResidualTol = 1e-10;
constexpr double kPoissonCompatibilityTol = 1e-9;
constexpr double kPoissonResidualTol = 1e-9;

double sup_norm(const Eigen::VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::SparseMatrix<double> weighted_laplacian_matrix(const WeightedGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(4 * g.edges().size() + g.size());
    Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
    for (const auto& e : g.edges()) {
        const auto a = static_cast<Eigen::Index>(e.a);
        const auto b = static_cast<Eigen::Index>(e.b);
        triplets.emplace_back(a, b, e.weight);
        triplets.emplace_back(b, a, e.weight);
        degree[a] += e.weight;
        degree[b] += e.weight;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        triplets.emplace_back(i, i, -degree[i]);
    }
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(triplets.begin(), triplets.end());
    return lap;
}

ShiftedOperator::ShiftedOperator(const WeightedGraph& g, double shift_value)
    : graph(g), shift(shift_value) {
    if (!(shift > 0.0) || !std::isfinite(shift)) {
        throw std::invalid_argument("shift K must be positive for Δ−K to be invertible");
    }
}

FactorizationCache::FactorizationCache(const ShiftedOperator& op)
    : graph_(op.graph), shift_(op.shift) {
    // Row x of (Δ−K)w = f scaled by μ(x) reads (L w)(x) − K μ(x) w(x) = μ(x) f(x);
    // K·diag(μ) − L is symmetric positive definite, so factor that and negate.
    Eigen::SparseMatrix<double> system = -weighted_laplacian_matrix(graph_);
    const auto n = static_cast<Eigen::Index>(graph_.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        system.coeffRef(i, i) += shift_ * graph_.measures()[i];
    }
    ldlt_.compute(system);
    if (ldlt_.info() != Eigen::Success) {
        throw std::runtime_error("shifted operator factorization failed (K=" +
                                 std::to_string(shift_) + ")");
    }
}

VertexField FactorizationCache::solve(const VertexField& f) const {
    require_bound(graph_, f, "solve_shifted");
    const Eigen::VectorXd rhs = -graph_.measures().cwiseProduct(f.values());
    Eigen::VectorXd w = ldlt_.solve(rhs);
    if (ldlt_.info() != Eigen::Success) {
        throw std::runtime_error("shifted solve failed");
    }

    VertexField result(graph_, std::move(w));
    const VertexField lap = laplacian(graph_, result);
    const double residual =
        sup_norm(lap.values() - shift_ * result.values() - f.values());
    const double allowed = kShiftedResidualTol * (1.0 + sup_norm(f.values()));
    if (!(residual <= allowed)) {
        throw std::runtime_error("shifted solve residual " + std::to_string(residual) +
                                 " exceeds " + std::to_string(allowed) +
                                 " (K=" + std::to_string(shift_) + ")");
    }
    return result;
}

VertexField solve_shifted(const FactorizationCache& cache, const VertexField& f) {
    return cache.solve(f);
}

PoissonSolver::PoissonSolver(const WeightedGraph& g) : graph_(g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    if (n == 1) {
        return;  // nothing to factor; the only compatible rhs is f ≡ 0
    }
    // Pin vertex 0: drop its row and column from −L, which is positive
    // definite on the remaining vertices of a connected graph.
    const Eigen::SparseMatrix<double> neg_lap = -weighted_laplacian_matrix(g);
    Eigen::SparseMatrix<double> reduced = neg_lap.block(1, 1, n - 1, n - 1);
    ldlt_.compute(reduced);
    if (ldlt_.info() != Eigen::Success) {
        throw std::runtime_error("Poisson factorization failed");
    }
}

VertexField PoissonSolver::solve(const VertexField& f) const {
    require_bound(graph_, f, "solve_poisson_mean_zero");
    const double total = integrate(graph_, f);
    const double allowed =
        kPoissonCompatibilityTol * sup_norm(f.values()) * graph_.total_volume();
    if (std::abs(total) > allowed) {
        throw std::invalid_argument("incompatible Poisson right-hand side: ∫f dμ = " +
                                    std::to_string(total));
    }

    const auto n = static_cast<Eigen::Index>(graph_.size());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    if (n > 1) {
        const Eigen::VectorXd scaled = -graph_.measures().cwiseProduct(f.values());
        w.tail(n - 1) = ldlt_.solve(scaled.tail(n - 1));
        if (ldlt_.info() != Eigen::Success) {
            throw std::runtime_error("Poisson solve failed");
        }
    }

    VertexField result(graph_, std::move(w));
    const double m = mean(graph_, result);
    result.values().array() -= m;

    const VertexField lap = laplacian(graph_, result);
    const double residual = sup_norm(lap.values() - f.values());
    const double residual_allowed = kPoissonResidualTol * (1.0 + sup_norm(f.values()));
    if (!(residual <= residual_allowed)) {
        throw std::runtime_error("Poisson solve residual " + std::to_string(residual) +
                                 " exceeds " + std::to_string(residual_allowed));
    }
    return result;
}

VertexField solve_poisson_mean_zero(const WeightedGraph& g, const VertexField& f) {
    return PoissonSolver(g).solve(f);
}

}  // namespace csvortex
