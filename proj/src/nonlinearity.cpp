#include "csvortex/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csvortex {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kQuadratureTol = 1e-12;
constexpr int kMonotonicitySamples = 1024;

double clamp_to_unit(double t, const char* what) {
    if (t < -kDomainSlack || t > 1.0 + kDomainSlack) {
        throw std::domain_error(std::string(what) + " argument " + std::to_string(t) +
                                " outside [0,1]");
    }
    return std::clamp(t, 0.0, 1.0);
}

double simpson_estimate(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fb, double fm, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_estimate(a, fa, m, fm, flm);
    const double right = simpson_estimate(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0) {
        throw std::runtime_error("adaptive quadrature failed to converge");
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (a == b) {
        return 0.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_estimate(a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, b, fa, fb, fm, whole, tol, 60);
}

PotentialModel PotentialModel::constant_one() {
    PotentialModel m;
    m.kind_ = PotentialKind::constant_one;
    m.value_at_one_ = 1.0;
    return m;
}

PotentialModel PotentialModel::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty() || !(coeffs.front() > 0.0)) {
        throw std::invalid_argument("polynomial model requires a_0 > 0");
    }
    for (double a : coeffs) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("polynomial model requires coefficients a_k ≥ 0");
        }
    }
    PotentialModel m;
    m.kind_ = PotentialKind::polynomial;
    m.coeffs_ = std::move(coeffs);
    m.value_at_one_ = 0.0;
    for (double a : m.coeffs_) {
        m.value_at_one_ += a;
    }
    return m;
}

PotentialModel PotentialModel::tabulated(std::vector<double> grid,
                                         std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size()) {
        throw std::invalid_argument("tabulated model needs matching grid/values, ≥ 2 points");
    }
    if (std::abs(grid.front()) > kDomainSlack || std::abs(grid.back() - 1.0) > kDomainSlack) {
        throw std::invalid_argument("tabulated grid must span [0,1]");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("tabulated grid must be strictly increasing");
        }
    }
    grid.front() = 0.0;
    grid.back() = 1.0;

    PotentialModel m;
    m.kind_ = PotentialKind::tabulated;
    m.grid_ = std::move(grid);
    m.values_ = std::move(values);
    m.value_at_one_ = m.values_.back();

    // The existence theory needs G > 0 nondecreasing; fail fast on bad input.
    // Node values decide both properties exactly for a linear interpolant.
    for (std::size_t i = 0; i < m.values_.size(); ++i) {
        if (!(m.values_[i] > 0.0) || !std::isfinite(m.values_[i])) {
            throw std::invalid_argument("tabulated model must be positive on [0,1]");
        }
        if (i > 0 && m.values_[i] < m.values_[i - 1]) {
            throw std::invalid_argument("tabulated model must be nondecreasing on [0,1]");
        }
    }
    double prev = -1.0;
    for (int i = 0; i < kMonotonicitySamples; ++i) {
        const double t = static_cast<double>(i) / (kMonotonicitySamples - 1);
        const double v = m.value(t);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("tabulated model must be positive on [0,1]");
        }
        if (v < prev - kDomainSlack) {
            throw std::invalid_argument("tabulated model must be nondecreasing on [0,1]");
        }
        prev = v;
    }
    return m;
}

double PotentialModel::value(double t) const {
    t = clamp_to_unit(t, "potential");
    switch (kind_) {
        case PotentialKind::constant_one:
            return 1.0;
        case PotentialKind::polynomial: {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
                acc = acc * t + *it;
            }
            return acc;
        }
        case PotentialKind::tabulated: {
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
            if (it == grid_.begin()) {
                return values_.front();
            }
            if (it == grid_.end()) {
                return values_.back();
            }
            const auto hi = static_cast<std::size_t>(it - grid_.begin());
            const auto lo = hi - 1;
            const double frac = (t - grid_[lo]) / (grid_[hi] - grid_[lo]);
            return values_[lo] + frac * (values_[hi] - values_[lo]);
        }
    }
    throw std::logic_error("unreachable potential kind");
}

double PotentialModel::primitive(double t) const {
    t = clamp_to_unit(t, "primitive");
    switch (kind_) {
        case PotentialKind::constant_one:
            return 1.0 - t;
        case PotentialKind::polynomial: {
            // ∫_t^1 Σ a_k τ^k dτ = Σ a_k (1 − t^{k+1})/(k+1)
            double acc = 0.0;
            double tpow = t;
            for (std::size_t k = 0; k < coeffs_.size(); ++k) {
                acc += coeffs_[k] * (1.0 - tpow) / static_cast<double>(k + 1);
                tpow *= t;
            }
            return acc;
        }
        case PotentialKind::tabulated:
            return primitive_quadrature(t);
    }
    throw std::logic_error("unreachable potential kind");
}

double PotentialModel::primitive_quadrature(double t) const {
    t = clamp_to_unit(t, "primitive");
    return adaptive_simpson([this](double tau) { return value(tau); }, t, 1.0,
                            kQuadratureTol);
}

}  // namespace csvortex
