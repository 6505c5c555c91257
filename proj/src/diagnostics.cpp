#include "csvortex/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace csvortex {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

double relative_defect(double lhs, double target) {
    return std::abs(lhs / target - 1.0);
}

}  // namespace

IntegralIdentities check_integral_identities(const WeightedGraph& g,
                                             const BackgroundPair& bg,
                                             const NonlinearityModel& nl, double lambda,
                                             const VertexField& u, const VertexField& v) {
    require_bound(g, u, "check_integral_identities");
    require_bound(g, v, "check_integral_identities");

    VertexField integrand1(g);
    VertexField integrand2(g);
    for (std::size_t x = 0; x < g.size(); ++x) {
        const double tu = std::min(std::exp(bg.u0[x] + u[x]), 1.0);
        const double tv = std::min(std::exp(bg.v0[x] + v[x]), 1.0);
        integrand1[x] = tv * nl.H.value(tv) * nl.G.primitive_quadrature(tu);
        integrand2[x] = tu * nl.G.value(tu) * nl.H.primitive_quadrature(tv);
    }
    IntegralIdentities out;
    out.lhs1 = lambda * integrate(g, integrand1);
    out.lhs2 = lambda * integrate(g, integrand2);
    out.defect1 = relative_defect(out.lhs1, four_pi * bg.n1);
    out.defect2 = relative_defect(out.lhs2, four_pi * bg.n2);
    return out;
}

IntegralIdentities check_integral_identities(const WeightedGraph& g,
                                             const BackgroundPair& bg,
                                             const NonlinearityModel& nl,
                                             const SolutionPair& sol) {
    return check_integral_identities(g, bg, nl, sol.lambda, sol.u, sol.v);
}

MonotonicityCheck check_lambda_monotonicity(const std::vector<SolutionPair>& solutions) {
    if (solutions.size() < 2) {
        throw std::invalid_argument("need at least two solutions to compare");
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < solutions.size(); ++i) {
        const SolutionPair& a = solutions[i];
        const SolutionPair& b = solutions[i + 1];
        if (b.lambda < a.lambda) {
            throw std::invalid_argument("solutions must be sorted by lambda");
        }
        if (!b.u.bound_to(a.u.graph())) {
            throw std::invalid_argument("solutions belong to different graphs");
        }
        min_gap = std::min(min_gap, (b.u.values() - a.u.values()).minCoeff());
        min_gap = std::min(min_gap, (b.v.values() - a.v.values()).minCoeff());
    }
    return {min_gap > 0.0, min_gap};
}

AprioriNorms apriori_norms(const WeightedGraph& g, const BackgroundPair& bg,
                           const NonlinearityModel& nl, const SolutionPair& sol) {
    require_bound(g, sol.u, "apriori_norms");
    require_bound(g, sol.v, "apriori_norms");

    const auto norms_for = [&](const VertexField& w, bool first_species) {
        SpeciesNorms out;
        auto [m, fluct] = split(g, w);
        out.mean = m;
        out.fluct_grad_norm = std::sqrt(integrate(g, gamma(g, fluct, fluct)));
        out.sobolev = sobolev_norm(g, w);

        // Energy identity: pair the governing equation with the fluctuation
        // and integrate; the constant part drops out because ∫u′dμ = 0.
        VertexField weighted(g);
        for (std::size_t x = 0; x < g.size(); ++x) {
            const double tu = std::min(std::exp(bg.u0[x] + sol.u[x]), 1.0);
            const double tv = std::min(std::exp(bg.v0[x] + sol.v[x]), 1.0);
            const double factor = first_species
                                      ? tv * nl.H.value(tv) * nl.G.primitive_quadrature(tu)
                                      : tu * nl.G.value(tu) * nl.H.primitive_quadrature(tv);
            weighted[x] = factor * fluct[x];
        }
        out.energy_lhs = out.fluct_grad_norm * out.fluct_grad_norm;
        out.energy_rhs = sol.lambda * integrate(g, weighted);
        const double scale = std::max({std::abs(out.energy_lhs), std::abs(out.energy_rhs), 1.0});
        out.energy_defect = std::abs(out.energy_lhs - out.energy_rhs) / scale;
        return out;
    };

    return {norms_for(sol.u, true), norms_for(sol.v, false)};
}

DiagnosticReport build_report(const WeightedGraph& g, const BackgroundPair& bg,
                              const NonlinearityModel& nl, const SolutionPair& sol,
                              double tol_residual) {
    const IntegralIdentities identities = check_integral_identities(g, bg, nl, sol);
    const AprioriNorms norms = apriori_norms(g, bg, nl, sol);

    DiagnosticReport report;
    report.identity_defect_1 = identities.defect1;
    report.identity_defect_2 = identities.defect2;
    report.sign_margin_u = (bg.u0.values() + sol.u.values()).maxCoeff();
    report.sign_margin_v = (bg.v0.values() + sol.v.values()).maxCoeff();
    report.mean_u = norms.u.mean;
    report.mean_v = norms.v.mean;
    report.fluct_grad_u = norms.u.fluct_grad_norm;
    report.fluct_grad_v = norms.v.fluct_grad_norm;
    report.sobolev_u = norms.u.sobolev;
    report.sobolev_v = norms.v.sobolev;
    report.energy_defect_u = norms.u.energy_defect;
    report.energy_defect_v = norms.v.energy_defect;
    report.residual_u = sol.residual_u;
    report.residual_v = sol.residual_v;
    report.pass = report.identity_defect_1 <= kIdentityTol &&
                  report.identity_defect_2 <= kIdentityTol &&
                  report.sign_margin_u < 0.0 && report.sign_margin_v < 0.0 &&
                  report.energy_defect_u <= kEnergyTol &&
                  report.energy_defect_v <= kEnergyTol &&
                  report.residual_u <= tol_residual && report.residual_v <= tol_residual;
    return report;
}

}  // namespace csvortex
