#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hcnls/grid.hpp"

namespace hcnls {

using Complex = std::complex<double>;

// Complex radial field stored in the transformed variable
//   v(r) = r^{(d-2)/2} u(r),
// so that the physical field is u(r) = r^{-(d-2)/2} v(r). All energy-space
// functionals are smooth-weight quadratures of v (see functionals.hpp).
struct RadialField {
    GridPtr grid;
    std::vector<Complex> values;  // v_j ~ v(r_j)

    static RadialField zeros(GridPtr g);

    // Samples the *transformed* profile v(r) at the nodes.
    static RadialField from_v(GridPtr g, const std::function<Complex(double)>& v);

    // Samples the *physical* profile u(r); v_j = r_j^{(d-2)/2} u(r_j).
    static RadialField from_u(GridPtr g, int d, const std::function<Complex(double)>& u);

    int size() const { return static_cast<int>(values.size()); }
    bool all_finite() const;
};

// Throws std::invalid_argument when the field does not live on `grid`.
void require_same_grid(const RadialField& f, const RadialGrid& grid, const char* where);

} // namespace hcnls
