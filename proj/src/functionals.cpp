#include "hcnls/functionals.hpp"

#include "hcnls/laplacian.hpp"
#include "hcnls/simd/kernels.hpp"

namespace hcnls {

double mass(const RadialField& f, const ModelParams& params) {
    const auto& g = *f.grid;
    return params.sphere_area * simd::weighted_norm_sq(g.w_2.data(), f.values.data(), f.values.size());
}

double hardy_seminorm_sq(const RadialField& f, const ModelParams& params) {
    RadialLaplacian lap(*f.grid);
    return params.sphere_area * lap.quadratic_form(f.values);
}

double weighted_moment(const RadialField& f, const ModelParams& params) {
    const auto& g = *f.grid;
    std::vector<double> w(g.w_2.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = g.w_2[j] * g.nodes[j] * g.nodes[j];
    return params.sphere_area * simd::weighted_norm_sq(w.data(), f.values.data(), f.values.size());
}

double tail_mass_fraction(const RadialField& f, double frac) {
    const auto& g = *f.grid;
    const double r0 = frac * g.r_max;
    double total = 0.0, outer = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        const double m = g.w_2[j] * std::norm(f.values[j]);
        total += m;
        if (g.nodes[j] >= r0) outer += m;
    }
    return total > 0.0 ? outer / total : 0.0;
}

} // namespace hcnls
