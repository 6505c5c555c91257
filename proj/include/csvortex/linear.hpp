#pragma once

#include "csvortex/graph.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace csvortex {

/// Descriptor of the strictly negative-definite operator Δ − K, K > 0.
struct ShiftedOperator {
    ShiftedOperator(const WeightedGraph& g, double shift);

    WeightedGraph graph;
    double shift;
};

/// Cholesky factorization of the measure-weighted symmetric form of Δ − K,
/// reusable across solves. Immutable once built; a different K needs a new
/// cache. Solving is const and safe to call concurrently on one cache.
class FactorizationCache {
public:
    explicit FactorizationCache(const ShiftedOperator& op);

    const WeightedGraph& graph() const { return graph_; }
    double shift() const { return shift_; }

    /// Solves (Δ − K) w = f. The residual ‖(Δ−K)w − f‖_∞ is checked against
    /// 1e−10·(1 + ‖f‖_∞) after every solve.
    VertexField solve(const VertexField& f) const;

private:
    WeightedGraph graph_;
    double shift_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

VertexField solve_shifted(const FactorizationCache& cache, const VertexField& f);

/// Solver for the singular problem Δw = f with ∫f dμ = 0, normalized to
/// ∫w dμ = 0. One vertex is pinned to make the reduced system definite, then
/// the result is re-centered.
class PoissonSolver {
public:
    explicit PoissonSolver(const WeightedGraph& g);

    const WeightedGraph& graph() const { return graph_; }

    /// Throws std::invalid_argument when |∫f dμ| > 1e−9·‖f‖_∞·|V|
    /// (incompatible right-hand side).
    VertexField solve(const VertexField& f) const;

private:
    WeightedGraph graph_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

VertexField solve_poisson_mean_zero(const WeightedGraph& g, const VertexField& f);

/// Weighted Laplacian matrix L with L(x,y) = ω_xy and L(x,x) = −Σ_y ω_xy,
/// so that (L u)(x) = μ(x)·Δu(x). Negative semidefinite.
Eigen::SparseMatrix<double> weighted_laplacian_matrix(const WeightedGraph& g);

}  // namespace csvortex
