#include "hcnls/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hcnls {

std::vector<double> RadialGrid::radial_weights(int d) const {
    std::vector<double> w(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        w[j] = w_plain[j] * std::pow(nodes[j], d - 1);
    }
    return w;
}

GridPtr make_grid(int n, double r_max, Grading grading) {
    if (n < 16) {
        throw std::invalid_argument("make_grid: need at least 16 nodes, got " + std::to_string(n));
    }
    if (!(r_max > 0.0)) {
        throw std::invalid_argument("make_grid: r_max must be positive, got " + std::to_string(r_max));
    }
    if (!std::isfinite(grading.power) || grading.power < 1.0 || grading.power > 4.0) {
        throw std::invalid_argument("make_grid: grading power must lie in [1, 4], got " +
                                    std::to_string(grading.power));
    }

    auto g = std::make_shared<RadialGrid>();
    g->n = n;
    g->r_max = r_max;
    g->grading = grading;
    g->edges.resize(n + 1);
    g->nodes.resize(n);
    g->w_plain.resize(n);
    g->w_2.resize(n);

    const bool uniform = grading.power == 1.0;
    for (int j = 0; j <= n; ++j) {
        g->edges[j] = uniform ? r_max * (static_cast<double>(j) / n)
                              : r_max * std::pow(static_cast<double>(j) / n, grading.power);
    }
    g->edges[n] = r_max;
    for (int j = 0; j < n; ++j) {
        const double a = g->edges[j], b = g->edges[j + 1];
        g->nodes[j] = 0.5 * (a + b);
        g->w_plain[j] = b - a;
        g->w_2[j] = (b - a) * g->nodes[j];  // = (b^2 - a^2)/2, exact for f(r) = r
    }
    return g;
}

} // namespace hcnls
