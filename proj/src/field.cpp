#include "hcnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace hcnls {

RadialField RadialField::zeros(GridPtr g) {
    RadialField f;
    f.values.assign(g->n, Complex{0.0, 0.0});
    f.grid = std::move(g);
    return f;
}

RadialField RadialField::from_v(GridPtr g, const std::function<Complex(double)>& v) {
    RadialField f = zeros(std::move(g));
    for (int j = 0; j < f.size(); ++j) {
        f.values[j] = v(f.grid->nodes[j]);
    }
    return f;
}

RadialField RadialField::from_u(GridPtr g, int d, const std::function<Complex(double)>& u) {
    RadialField f = zeros(std::move(g));
    const double e = 0.5 * (d - 2.0);
    for (int j = 0; j < f.size(); ++j) {
        const double r = f.grid->nodes[j];
        f.values[j] = std::pow(r, e) * u(r);
    }
    return f;
}

bool RadialField::all_finite() const {
    for (const Complex& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

void require_same_grid(const RadialField& f, const RadialGrid& grid, const char* where) {
    if (!f.grid || !(*f.grid == grid)) {
        throw std::invalid_argument(std::string(where) + ": field grid does not match operator grid");
    }
}

} // namespace hcnls
