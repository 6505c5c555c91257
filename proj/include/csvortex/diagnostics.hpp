#pragma once

#include "csvortex/solver.hpp"

#include <vector>

namespace csvortex {

/// Relative defects of the two integral identities a converged solution must
/// satisfy:
///   λ ∫ e^{v₀+v} H(e^{v₀+v}) g(e^{u₀+u}) dμ = 4πN₁
///   λ ∫ e^{u₀+u} G(e^{u₀+u}) h(e^{v₀+v}) dμ = 4πN₂
/// The nonlinearity primitives are evaluated through the quadrature path so
/// the check stays independent of the solver's closed forms.
struct IntegralIdentities {
    double lhs1;
    double lhs2;
    double defect1;  // |lhs1/(4πN₁) − 1|
    double defect2;
};

IntegralIdentities check_integral_identities(const WeightedGraph& g,
                                             const BackgroundPair& bg,
                                             const NonlinearityModel& nl, double lambda,
                                             const VertexField& u, const VertexField& v);
IntegralIdentities check_integral_identities(const WeightedGraph& g,
                                             const BackgroundPair& bg,
                                             const NonlinearityModel& nl,
                                             const SolutionPair& sol);

struct MonotonicityCheck {
    bool strictly_increasing;
    double min_gap;  // smallest pointwise increment between consecutive solutions
};

/// Verifies that maximal solutions increase strictly pointwise along a
/// λ-sorted chain. Throws std::invalid_argument on unsorted input; duplicate
/// λ values are allowed and yield gap 0 (hence false).
MonotonicityCheck check_lambda_monotonicity(const std::vector<SolutionPair>& solutions);

/// Mean/fluctuation bookkeeping for one species, plus the energy identity
/// ‖∇u′‖₂² = λ ∫ (nonlinear term)·u′ dμ that converged solutions satisfy.
struct SpeciesNorms {
    double mean;
    double fluct_grad_norm;  // ‖∇u′‖₂ of the fluctuation part
    double sobolev;          // ‖u‖_{W^{1,2}}
    double energy_lhs;
    double energy_rhs;
    double energy_defect;  // relative
};

struct AprioriNorms {
    SpeciesNorms u;
    SpeciesNorms v;
};

AprioriNorms apriori_norms(const WeightedGraph& g, const BackgroundPair& bg,
                           const NonlinearityModel& nl, const SolutionPair& sol);

struct DiagnosticReport {
    double identity_defect_1;
    double identity_defect_2;
    double sign_margin_u;  // max(u₀+u); negative for valid solutions
    double sign_margin_v;
    double mean_u;
    double mean_v;
    double fluct_grad_u;
    double fluct_grad_v;
    double sobolev_u;
    double sobolev_v;
    double energy_defect_u;
    double energy_defect_v;
    double residual_u;
    double residual_v;
    bool pass;
};

/// Tolerances the report is judged against.
inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kEnergyTol = 1e-8;

DiagnosticReport build_report(const WeightedGraph& g, const BackgroundPair& bg,
                              const NonlinearityModel& nl, const SolutionPair& sol,
                              double tol_residual);

}  // namespace csvortex
