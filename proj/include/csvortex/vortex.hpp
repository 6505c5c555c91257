#pragma once

#include "csvortex/graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace csvortex {

/// Vortex locations and multiplicities for the two species. Entries are
/// (vertex index, multiplicity ≥ 1), at most one entry per vertex per
/// species; N₁ and N₂ are the multiplicity totals.
struct VortexSet {
    std::vector<std::pair<std::size_t, int>> species1;
    std::vector<std::pair<std::size_t, int>> species2;
    int n1 = 0;
    int n2 = 0;

    static VortexSet from_ids(const WeightedGraph& g,
                              const std::vector<std::pair<std::string, int>>& species1,
                              const std::vector<std::pair<std::string, int>>& species2);
};

/// Discrete Dirac data: x ↦ Σ_j mult_j·[x = p_j]/μ(x), normalized so that
/// ∫ δ_p dμ = 1 for each unit vortex.
VertexField dirac_field(const WeightedGraph& g,
                        const std::vector<std::pair<std::size_t, int>>& vortices);

/// Mean-zero background pair (u₀, v₀) with
/// Δu₀ = −4πN₁/|V| + 4π Σ_j δ_{p′_j} and the analogous v₀ equation.
struct BackgroundPair {
    VertexField u0;
    VertexField v0;
    int n1;
    int n2;
    double total_volume;
};

BackgroundPair compute_background(const WeightedGraph& g, const VortexSet& vortices);

}  // namespace csvortex
