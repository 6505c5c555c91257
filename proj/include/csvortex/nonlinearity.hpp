#pragma once

#include <functional>
#include <vector>

namespace csvortex {

enum class PotentialKind { constant_one, polynomial, tabulated };

/// One of the two Higgs-potential density functions (G or H): positive and
/// nondecreasing on [0,1], together with its primitive g(t) = ∫_t^1 G(τ) dτ.
/// Models are validated at construction and immutable afterwards.
class PotentialModel {
public:
    /// Defaults to the classical case G ≡ 1.
    PotentialModel() = default;

    static PotentialModel constant_one();

    /// G(t) = Σ a_k t^k. Requires a_k ≥ 0 and a_0 > 0, which guarantees
    /// positivity and monotonicity on [0,1].
    static PotentialModel polynomial(std::vector<double> coeffs);

    /// Piecewise-linear interpolant through (grid, values). The grid must be
    /// strictly increasing and span [0,1]; positivity and monotonicity are
    /// validated on a 1024-point sample at load time.
    static PotentialModel tabulated(std::vector<double> grid, std::vector<double> values);

    PotentialKind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    /// G(t) for t ∈ [0,1]; arguments outside by more than 1e−12 throw
    /// std::domain_error, inside the slack they are clamped.
    double value(double t) const;
    double value_at_one() const { return value_at_one_; }

    /// g(t) = ∫_t^1 G(τ) dτ. Closed form for constant/polynomial kinds;
    /// adaptive quadrature to 1e−12 absolute for tabulated kinds.
    double primitive(double t) const;

    /// Same integral, always via adaptive quadrature. Second evaluation path
    /// used by diagnostics to stay independent of the closed forms.
    double primitive_quadrature(double t) const;

private:
    PotentialKind kind_ = PotentialKind::constant_one;
    std::vector<double> coeffs_;
    std::vector<double> grid_;
    std::vector<double> values_;
    double value_at_one_ = 1.0;
};

/// The pair (G, H) defining the system's nonlinearity.
struct NonlinearityModel {
    PotentialModel G;
    PotentialModel H;

    static NonlinearityModel classical() {
        return {PotentialModel::constant_one(), PotentialModel::constant_one()};
    }
};

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace csvortex
