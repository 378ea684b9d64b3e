#pragma once

#include <vector>

#include "hcnls/field.hpp"
#include "hcnls/grid.hpp"

namespace hcnls {

// Monotone cubic (Fritsch-Carlson) interpolant on strictly increasing nodes.
// Evaluation left of the first node extends with the boundary value
// (even-reflection convention for transformed profiles); right of the last
// node is the caller's business (see ProfileExtender).
class PchipInterpolant {
  public:
    PchipInterpolant(std::vector<double> x, std::vector<double> y);
    double operator()(double xq) const;

  private:
    std::vector<double> x_, y_, slope_;
};

// Least-squares fit of the far-field form v(r) = c r^{-1/2} e^{-r} (the
// transformed trace of the ground-state decay c_Q r^{-(d-1)/2} e^{-r}) over
// the window [r_lo, r_hi]. slope is the residual drift of
// log(r^{1/2} v) + r per unit r; it vanishes when the profile has settled
// into the asymptotic regime.
struct TailFit {
    double c = 0.0;
    double slope = 0.0;
    bool ok = false;
};

TailFit fit_exponential_tail(const RadialGrid& grid, const std::vector<double>& v, double r_lo,
                             double r_hi);

// Positive radial profile (transformed variable) extended beyond its grid by
// the fitted exponential tail; used to resample ground states under dilation.
class ProfileExtender {
  public:
    ProfileExtender(const RadialGrid& grid, const std::vector<double>& v);

    double operator()(double r) const;
    const TailFit& tail() const { return tail_; }
    double r_switch() const { return r_switch_; }

  private:
    PchipInterpolant inner_;
    TailFit tail_;
    double r_switch_;
};

} // namespace hcnls
