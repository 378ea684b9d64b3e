#pragma once

#include <optional>

namespace hcnls {

// Existence range of the ground-state equation in the exponent p:
// GroundStateRange iff (d+alpha)/d < p < (d+alpha)/(d-2); the closed
// boundaries are excluded (no nontrivial solutions there).
enum class Regime { GroundStateRange, ExcludedLow, ExcludedHigh };

const char* to_string(Regime r);

// Model parameters (d, alpha, p) together with every derived constant used
// throughout: the critical Hardy coupling mu0 = (d-2)^2/4, the interpolation
// exponent theta = (dp-(d+alpha))/(2p), the Riesz normalization
// Gamma((d-alpha)/2) / (Gamma(alpha/2) pi^{d/2} 2^alpha), the area of S^{d-1},
// and the scaling exponent kappa = 2(d+alpha-(d-2)p)/(dp-d-alpha-2) (defined
// only when its denominator is positive).
struct ModelParams {
    int d = 0;
    double alpha = 0.0;
    double p = 0.0;

    double mu0 = 0.0;
    double theta = 0.0;
    double riesz_const = 0.0;
    double sphere_area = 0.0;
    std::optional<double> kappa;
    Regime regime = Regime::ExcludedLow;
    bool dynamics_ok = false;    // (d-4)_+ < alpha < d and 2 < p < (d+alpha)/(d-2)
    bool mass_critical = false;  // p = (d+alpha+2)/d, i.e. p*theta = 1

    double mass_critical_p() const { return (d + alpha + 2.0) / d; }
    double p_low() const { return (d + alpha) / d; }
    double p_high() const { return (d + alpha) / (d - 2.0); }
};

// Validates d >= 3, 0 < alpha < d, p > 1 (distinct diagnostics) and fills in
// all derived constants.
ModelParams make_params(int d, double alpha, double p);

} // namespace hcnls
