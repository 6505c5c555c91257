#include "csvortex/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace csvortex {

WeightedGraph::WeightedGraph(
    std::vector<std::pair<std::string, double>> vertices,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
    if (vertices.empty()) {
        throw std::invalid_argument("graph must have at least one vertex");
    }
    std::sort(vertices.begin(), vertices.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    auto data = std::make_shared<Data>();
    data->ids.reserve(vertices.size());
    data->mu.resize(static_cast<Eigen::Index>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& [id, measure] = vertices[i];
        if (data->index.count(id) != 0) {
            throw std::invalid_argument("duplicate vertex id '" + id + "'");
        }
        if (!(measure > 0.0) || !std::isfinite(measure)) {
            throw std::invalid_argument("vertex '" + id + "' has nonpositive measure");
        }
        data->index.emplace(id, i);
        data->ids.push_back(id);
        data->mu[static_cast<Eigen::Index>(i)] = measure;
        data->volume += measure;
    }

    data->adjacency.resize(data->ids.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    data->edges.reserve(edges.size());
    for (const auto& [ida, idb, weight] : edges) {
        const auto ita = data->index.find(ida);
        const auto itb = data->index.find(idb);
        if (ita == data->index.end() || itb == data->index.end()) {
            throw std::invalid_argument("edge references unknown vertex '" +
                                        (ita == data->index.end() ? ida : idb) + "'");
        }
        const std::size_t a = ita->second;
        const std::size_t b = itb->second;
        if (a == b) {
            throw std::invalid_argument("self-loop at vertex '" + ida + "'");
        }
        if (!(weight > 0.0) || !std::isfinite(weight)) {
            throw std::invalid_argument("edge " + ida + "-" + idb + " has nonpositive weight");
        }
        const auto key = std::minmax(a, b);
        if (!seen.insert(key).second) {
            throw std::invalid_argument("duplicate edge " + ida + "-" + idb);
        }
        data->edges.push_back({key.first, key.second, weight});
        data->adjacency[a].emplace_back(b, weight);
        data->adjacency[b].emplace_back(a, weight);
    }
    for (auto& nbrs : data->adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
    }

    // Connectedness: required by the maximum-principle arguments the solver
    // relies on, so disconnected input is rejected outright.
    std::vector<bool> visited(data->ids.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    visited[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t x = frontier.front();
        frontier.pop();
        for (const auto& [y, w] : data->adjacency[x]) {
            (void)w;
            if (!visited[y]) {
                visited[y] = true;
                ++reached;
                frontier.push(y);
            }
        }
    }
    if (reached != data->ids.size()) {
        throw std::invalid_argument("graph is not connected");
    }

    data_ = std::move(data);
}

std::size_t WeightedGraph::index_of(std::string_view id) const {
    const auto it = data_->index.find(std::string(id));
    if (it == data_->index.end()) {
        throw std::invalid_argument("unknown vertex id '" + std::string(id) + "'");
    }
    return it->second;
}

bool WeightedGraph::contains(std::string_view id) const {
    return data_->index.count(std::string(id)) != 0;
}

namespace {

void require_finite(const Eigen::VectorXd& values) {
    if (!values.allFinite()) {
        throw std::invalid_argument("vertex field contains non-finite values");
    }
}

}  // namespace

VertexField::VertexField(const WeightedGraph& g, Eigen::VectorXd values)
    : graph_(g), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != g.size()) {
        throw std::invalid_argument("vertex field length does not match graph size");
    }
    require_finite(values_);
}

VertexField::VertexField(const WeightedGraph& g, const std::vector<double>& values)
    : VertexField(g, Eigen::Map<const Eigen::VectorXd>(
                         values.data(), static_cast<Eigen::Index>(values.size()))) {}

void require_bound(const WeightedGraph& g, const VertexField& f, const char* what) {
    if (!f.bound_to(g)) {
        throw std::invalid_argument(std::string(what) + ": field is not bound to this graph");
    }
}

VertexField laplacian(const WeightedGraph& g, const VertexField& u) {
    require_bound(g, u, "laplacian");
    VertexField out(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
        double acc = 0.0;
        for (const auto& [y, w] : g.neighbors(x)) {
            acc += w * (u[y] - u[x]);
        }
        out[x] = acc / g.mu(x);
    }
    return out;
}

VertexField gamma(const WeightedGraph& g, const VertexField& u, const VertexField& v) {
    require_bound(g, u, "gamma");
    require_bound(g, v, "gamma");
    VertexField out(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
        double acc = 0.0;
        for (const auto& [y, w] : g.neighbors(x)) {
            acc += w * (u[y] - u[x]) * (v[y] - v[x]);
        }
        out[x] = acc / (2.0 * g.mu(x));
    }
    return out;
}

double integrate(const WeightedGraph& g, const VertexField& f) {
    require_bound(g, f, "integrate");
    return g.measures().dot(f.values());
}

double sobolev_norm(const WeightedGraph& g, const VertexField& u) {
    require_bound(g, u, "sobolev_norm");
    const VertexField grad2 = gamma(g, u, u);
    const double energy = integrate(g, grad2) + g.measures().dot(u.values().cwiseAbs2());
    return std::sqrt(energy);
}

double mean(const WeightedGraph& g, const VertexField& u) {
    require_bound(g, u, "mean");
    return integrate(g, u) / g.total_volume();
}

std::pair<double, VertexField> split(const WeightedGraph& g, const VertexField& u) {
    const double m = mean(g, u);
    VertexField fluct(g, Eigen::VectorXd(u.values().array() - m));
    return {m, std::move(fluct)};
}

}  // namespace csvortex
