#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace csvortex {

struct GraphEdge {
    std::size_t a;
    std::size_t b;
    double weight;
};

/// Finite connected graph with symmetric positive edge weights and a
/// positive vertex measure. The graph data is immutable and shared: copying
/// a WeightedGraph copies a handle, and two handles compare as the same
/// graph when they share the data. Vertex order is fixed to sorted
/// identifiers so that fields and serialized output are reproducible.
class WeightedGraph {
public:
    /// Builds and validates a graph. Throws std::invalid_argument on:
    /// duplicate vertex ids, nonpositive measure or weight, self-loops,
    /// duplicate edges, edges naming unknown vertices, or a disconnected
    /// vertex set.
    WeightedGraph(std::vector<std::pair<std::string, double>> vertices,
                  const std::vector<std::tuple<std::string, std::string, double>>& edges);

    std::size_t size() const { return data_->ids.size(); }
    const std::vector<std::string>& ids() const { return data_->ids; }
    const std::string& id_of(std::size_t v) const { return data_->ids.at(v); }

    /// Index of a vertex id in the fixed vertex order; throws if unknown.
    std::size_t index_of(std::string_view id) const;
    bool contains(std::string_view id) const;

    double mu(std::size_t v) const { return data_->mu[static_cast<Eigen::Index>(v)]; }
    const Eigen::VectorXd& measures() const { return data_->mu; }

    /// Total volume |V| = ∫_V 1 dμ = Σ_x μ(x).
    double total_volume() const { return data_->volume; }

    const std::vector<std::pair<std::size_t, double>>& neighbors(std::size_t v) const {
        return data_->adjacency[v];
    }
    const std::vector<GraphEdge>& edges() const { return data_->edges; }

    /// Identity: true when both handles refer to the same underlying data.
    bool is(const WeightedGraph& other) const { return data_ == other.data_; }

private:
    struct Data {
        std::vector<std::string> ids;
        std::unordered_map<std::string, std::size_t> index;
        Eigen::VectorXd mu;
        std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
        std::vector<GraphEdge> edges;
        double volume = 0.0;
    };

    std::shared_ptr<const Data> data_;
};

/// One real value per vertex, bound to a specific graph by identity. All
/// values are finite; the length always equals the vertex count of the
/// bound graph.
class VertexField {
public:
    explicit VertexField(const WeightedGraph& g)
        : graph_(g), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()))) {}
    VertexField(const WeightedGraph& g, Eigen::VectorXd values);
    VertexField(const WeightedGraph& g, const std::vector<double>& values);

    const WeightedGraph& graph() const { return graph_; }
    bool bound_to(const WeightedGraph& g) const { return graph_.is(g); }

    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    double operator[](std::size_t v) const { return values_[static_cast<Eigen::Index>(v)]; }
    double& operator[](std::size_t v) { return values_[static_cast<Eigen::Index>(v)]; }

    Eigen::VectorXd& values() { return values_; }
    const Eigen::VectorXd& values() const { return values_; }
    std::vector<double> to_vector() const {
        return {values_.data(), values_.data() + values_.size()};
    }

private:
    WeightedGraph graph_;
    Eigen::VectorXd values_;
};

/// Throws std::invalid_argument unless `f` is bound to `g`.
void require_bound(const WeightedGraph& g, const VertexField& f, const char* what);

/// μ-Laplacian: Δu(x) = (1/μ(x)) Σ_{y∼x} ω_xy (u(y) − u(x)).
VertexField laplacian(const WeightedGraph& g, const VertexField& u);

/// Bilinear edge-difference form:
/// Γ(u,v)(x) = (1/(2μ(x))) Σ_{y∼x} ω_xy (u(y) − u(x)) (v(y) − v(x)).
/// Γ(u,u) is the squared gradient |∇u|².
VertexField gamma(const WeightedGraph& g, const VertexField& u, const VertexField& v);

/// ∫_V f dμ = Σ_x μ(x) f(x).
double integrate(const WeightedGraph& g, const VertexField& f);

/// W^{1,2} norm: (∫_V (|∇u|² + u²) dμ)^{1/2}.
double sobolev_norm(const WeightedGraph& g, const VertexField& u);

/// Volume-weighted mean: ∫_V u dμ / ∫_V 1 dμ.
double mean(const WeightedGraph& g, const VertexField& u);

/// Decomposition u = ū + u′ with ∫ u′ dμ = 0.
std::pair<double, VertexField> split(const WeightedGraph& g, const VertexField& u);

}  // namespace csvortex
