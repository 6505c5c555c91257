#pragma once

#include "csvortex/nonlinearity.hpp"
#include "csvortex/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace csvortex {

/// Run configuration parsed from the flat `key = value` config format.
/// Values are JSON scalars/arrays or bare words, e.g.
///   G.kind = polynomial
///   G.coeffs = [1.0, 2.0]
///   H.kind = constant_one
///   vortices.species1 = [["v3", 1], ["v7", 2]]
/// Unknown keys are rejected; everything is validated before any
/// computation.
struct RunConfig {
    NonlinearityModel nonlinearity;
    std::vector<std::pair<std::string, int>> vortices_species1;
    std::vector<std::pair<std::string, int>> vortices_species2;
    SolverParams params;  // lambda filled from `lambda` key or CLI flag

    std::optional<double> lambda;
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    std::optional<int> lambda_steps;
    double bisect_tol = 1e-3;
    /// Continuation offsets; empty means the default {0.1, 0.01, 0.001}
    /// relative to the analytic bound, resolved at run time.
    std::vector<double> epsilons;

    static RunConfig parse(std::istream& in, const std::string& source_name);
    static RunConfig load(const std::string& path);
};

}  // namespace csvortex
