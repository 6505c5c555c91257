#pragma once

#include "csvortex/graph.hpp"
#include "csvortex/nonlinearity.hpp"
#include "csvortex/vortex.hpp"

#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace csvortex::testing {

inline std::string padded_id(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%02u", prefix, static_cast<unsigned>(i));
    return buf;
}

inline WeightedGraph make_complete(std::size_t n, double mu = 1.0, double w = 1.0) {
    std::vector<std::pair<std::string, double>> vertices;
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        vertices.emplace_back(padded_id("k", i), mu);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            edges.emplace_back(padded_id("k", i), padded_id("k", j), w);
        }
    }
    return WeightedGraph(vertices, edges);
}

inline WeightedGraph make_path(std::size_t n, double mu = 1.0, double w = 1.0) {
    std::vector<std::pair<std::string, double>> vertices;
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        vertices.emplace_back(padded_id("p", i), mu);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.emplace_back(padded_id("p", i), padded_id("p", i + 1), w);
    }
    return WeightedGraph(vertices, edges);
}

inline WeightedGraph make_cycle(std::size_t n, double mu = 1.0, double w = 1.0) {
    std::vector<std::pair<std::string, double>> vertices;
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        vertices.emplace_back(padded_id("c", i), mu);
    }
    for (std::size_t i = 0; i < n; ++i) {
        edges.emplace_back(padded_id("c", i), padded_id("c", (i + 1) % n), w);
    }
    return WeightedGraph(vertices, edges);
}

/// Random connected graph: a random attachment tree plus extra edges, with
/// platform-independent weights derived from raw mt19937 draws.
inline WeightedGraph make_random_connected(std::size_t n, std::size_t extra_edges,
                                           unsigned seed, double mu_lo = 0.8,
                                           double mu_hi = 1.25, double w_lo = 4.0,
                                           double w_hi = 8.0) {
    std::mt19937 rng(seed);
    const auto unit = [&rng]() { return static_cast<double>(rng() % 100000) / 100000.0; };

    std::vector<std::pair<std::string, double>> vertices;
    for (std::size_t i = 0; i < n; ++i) {
        vertices.emplace_back(padded_id("r", i), mu_lo + (mu_hi - mu_lo) * unit());
    }
    std::vector<std::tuple<std::string, std::string, double>> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j = rng() % i;
        seen.emplace(j, i);
        edges.emplace_back(padded_id("r", j), padded_id("r", i), w_lo + (w_hi - w_lo) * unit());
    }
    std::size_t added = 0;
    while (added < extra_edges) {
        const std::size_t a = rng() % n;
        const std::size_t b = rng() % n;
        if (a == b) {
            continue;
        }
        const auto key = std::minmax(a, b);
        if (!seen.insert(key).second) {
            continue;
        }
        edges.emplace_back(padded_id("r", key.first), padded_id("r", key.second),
                           w_lo + (w_hi - w_lo) * unit());
        ++added;
    }
    return WeightedGraph(vertices, edges);
}

inline VertexField random_field(const WeightedGraph& g, std::mt19937& rng, double lo = -1.0,
                                double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    VertexField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = dist(rng);
    }
    return f;
}

inline VertexField constant_field(const WeightedGraph& g, double c) {
    VertexField f(g);
    f.values().setConstant(c);
    return f;
}

}  // namespace csvortex::testing
