#include "csvortex/vortex.hpp"

#include "csvortex/linear.hpp"

#include <numbers>
#include <set>
#include <stdexcept>

namespace csvortex {

namespace {

std::vector<std::pair<std::size_t, int>> resolve_species(
    const WeightedGraph& g, const std::vector<std::pair<std::string, int>>& entries,
    const char* which) {
    if (entries.empty()) {
        throw std::invalid_argument(std::string(which) + " needs at least one vortex");
    }
    std::vector<std::pair<std::size_t, int>> resolved;
    std::set<std::size_t> seen;
    resolved.reserve(entries.size());
    for (const auto& [id, mult] : entries) {
        const std::size_t v = g.index_of(id);
        if (mult < 1) {
            throw std::invalid_argument("vortex at '" + id + "' has multiplicity < 1");
        }
        if (!seen.insert(v).second) {
            throw std::invalid_argument("repeated vortex vertex '" + id +
                                        "' (merge multiplicities first)");
        }
        resolved.emplace_back(v, mult);
    }
    return resolved;
}

}  // namespace

VortexSet VortexSet::from_ids(const WeightedGraph& g,
                              const std::vector<std::pair<std::string, int>>& species1,
                              const std::vector<std::pair<std::string, int>>& species2) {
    VortexSet vs;
    vs.species1 = resolve_species(g, species1, "species1");
    vs.species2 = resolve_species(g, species2, "species2");
    for (const auto& [v, mult] : vs.species1) {
        (void)v;
        vs.n1 += mult;
    }
    for (const auto& [v, mult] : vs.species2) {
        (void)v;
        vs.n2 += mult;
    }
    return vs;
}

VertexField dirac_field(const WeightedGraph& g,
                        const std::vector<std::pair<std::size_t, int>>& vortices) {
    VertexField field(g);
    for (const auto& [v, mult] : vortices) {
        if (v >= g.size()) {
            throw std::invalid_argument("vortex vertex index out of range");
        }
        if (mult < 1) {
            throw std::invalid_argument("vortex multiplicity must be ≥ 1");
        }
        field[v] += static_cast<double>(mult) / g.mu(v);
    }
    return field;
}

BackgroundPair compute_background(const WeightedGraph& g, const VortexSet& vortices) {
    constexpr double four_pi = 4.0 * std::numbers::pi;
    const double volume = g.total_volume();
    const PoissonSolver poisson(g);

    const auto background_for = [&](const std::vector<std::pair<std::size_t, int>>& species,
                                    int total) {
        // ∫ rhs dμ = −4πN + 4πN = 0, so the Poisson problem is compatible by
        // construction.
        VertexField rhs = dirac_field(g, species);
        rhs.values() = four_pi * rhs.values();
        rhs.values().array() -= four_pi * static_cast<double>(total) / volume;
        return poisson.solve(rhs);
    };

    return BackgroundPair{background_for(vortices.species1, vortices.n1),
                          background_for(vortices.species2, vortices.n2), vortices.n1,
                          vortices.n2, volume};
}

}  // namespace csvortex
