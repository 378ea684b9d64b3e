#include "hcnls/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hcnls {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::GroundStateRange: return "GroundStateRange";
        case Regime::ExcludedLow: return "ExcludedLow";
        case Regime::ExcludedHigh: return "ExcludedHigh";
    }
    return "?";
}

ModelParams make_params(int d, double alpha, double p) {
    if (d < 3) {
        throw std::invalid_argument("make_params: dimension d must be >= 3, got " + std::to_string(d));
    }
    if (!(alpha > 0.0) || !(alpha < d)) {
        throw std::invalid_argument("make_params: Riesz order alpha must lie in (0, d), got " +
                                    std::to_string(alpha));
    }
    if (!(p > 1.0)) {
        throw std::invalid_argument("make_params: exponent p must exceed 1, got " + std::to_string(p));
    }

    ModelParams m;
    m.d = d;
    m.alpha = alpha;
    m.p = p;
    m.mu0 = 0.25 * (d - 2.0) * (d - 2.0);
    m.theta = (d * p - (d + alpha)) / (2.0 * p);

    const double pi = std::numbers::pi;
    m.riesz_const = std::tgamma(0.5 * (d - alpha)) /
                    (std::tgamma(0.5 * alpha) * std::pow(pi, 0.5 * d) * std::pow(2.0, alpha));
    m.sphere_area = 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);

    const double kappa_den = d * p - d - alpha - 2.0;
    if (kappa_den > 0.0) {
        m.kappa = 2.0 * (d + alpha - (d - 2.0) * p) / kappa_den;
    }

    if (p <= m.p_low()) {
        m.regime = Regime::ExcludedLow;
    } else if (p >= m.p_high()) {
        m.regime = Regime::ExcludedHigh;
    } else {
        m.regime = Regime::GroundStateRange;
    }

    const double alpha_low = std::max(0.0, d - 4.0);
    m.dynamics_ok = alpha > alpha_low && alpha < d && p > 2.0 && p < m.p_high();

    const double pc = m.mass_critical_p();
    m.mass_critical = std::abs(p - pc) <= 1e-12 * std::max(1.0, pc);

    return m;
}

} // namespace hcnls
