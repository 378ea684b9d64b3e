#include "hcnls/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcnls {

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) {
        throw std::invalid_argument("PchipInterpolant: need at least 3 matching nodes");
    }
    slope_.assign(n, 0.0);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    // Fritsch-Carlson: weighted harmonic mean where slopes agree in sign
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] > 0.0) {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // one-sided endpoint slopes, clipped to preserve monotonicity
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) {
            s = 0.0;
        } else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
            s = 3.0 * d0;
        }
        return s;
    };
    slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double PchipInterpolant::operator()(double xq) const {
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

TailFit fit_exponential_tail(const RadialGrid& grid, const std::vector<double>& v, double r_lo,
                             double r_hi) {
    // linear LS on y = log(r^{1/2} v) + r over the window; y = log c + slope*r
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int j = 0; j < grid.n; ++j) {
        const double r = grid.nodes[j];
        if (r < r_lo || r > r_hi) continue;
        if (!(v[j] > 0.0)) continue;
        const double y = std::log(std::sqrt(r) * v[j]) + r;
        sx += r;
        sy += y;
        sxx += r * r;
        sxy += r * y;
        ++count;
    }
    TailFit fit;
    if (count < 4) return fit;
    const double det = count * sxx - sx * sx;
    if (det == 0.0) return fit;
    fit.slope = (count * sxy - sx * sy) / det;
    const double intercept = (sy * sxx - sx * sxy) / det;
    // pin the amplitude at the window midpoint so a small residual slope does
    // not lever the extrapolation
    const double rm = 0.5 * (r_lo + r_hi);
    fit.c = std::exp(intercept + fit.slope * rm);
    fit.ok = std::isfinite(fit.c) && fit.c > 0.0;
    return fit;
}

ProfileExtender::ProfileExtender(const RadialGrid& grid, const std::vector<double>& v)
    : inner_(grid.nodes, v), r_switch_(grid.nodes.back()) {
    tail_ = fit_exponential_tail(grid, v, 0.5 * grid.r_max, 0.75 * grid.r_max);
    if (!tail_.ok) {
        // profile has no usable exponential window (e.g. compactly supported
        // test data); extend by zero
        tail_.c = 0.0;
    }
}

double ProfileExtender::operator()(double r) const {
    if (r <= r_switch_) return inner_(r);
    return tail_.c * std::exp(-r) / std::sqrt(r);
}

} // namespace hcnls
