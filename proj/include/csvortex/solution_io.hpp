#pragma once

#include "csvortex/diagnostics.hpp"
#include "csvortex/solver.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace csvortex {

/// Serializes with fixed field order and every double printed with 17
/// significant digits, so identical inputs produce byte-identical output.
std::string dump_json(const nlohmann::ordered_json& value);

nlohmann::ordered_json diagnostics_to_json(const DiagnosticReport& report);

/// Solution document for a converged run: lambda, iterations, residuals,
/// vertex order, the four per-vertex fields, and the diagnostics report.
nlohmann::ordered_json solution_to_json(const WeightedGraph& g, const SolutionPair& sol,
                                        const DiagnosticReport& diagnostics);

/// Fields of a stored solution document needed for independent
/// re-verification.
struct StoredSolution {
    double lambda;
    std::vector<std::string> vertices;
    std::vector<double> u;
    std::vector<double> v;
    std::optional<std::vector<double>> u_prime;
    std::optional<std::vector<double>> v_prime;
};

/// Parses a solution document; throws std::runtime_error with a schema
/// message on malformed input.
StoredSolution read_solution(const nlohmann::json& doc);
StoredSolution load_solution(const std::string& path);

}  // namespace csvortex
