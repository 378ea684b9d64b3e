#pragma once

#include <memory>
#include <vector>

namespace hcnls {

// Cell-boundary grading: edges t_j = r_max * (j/n)^power, j = 0..n.
// power = 1 is the uniform default; power > 1 grades toward the origin.
struct Grading {
    double power = 1.0;
    bool operator==(const Grading&) const = default;
};

// Radial quadrature grid on [0, r_max]: n cells with edges t_0 < ... < t_n,
// nodes at cell midpoints, and product-midpoint weights
//   w_plain_j = cell width                (for  int f dr)
//   w_2_j     = cell width * r_j          (for  int f r dr, exact on constants)
// Weights for int f r^{d-1} dr come from radial_weights(d).
struct RadialGrid {
    int n = 0;
    double r_max = 0.0;
    Grading grading;
    std::vector<double> nodes;    // r_1..r_n (size n)
    std::vector<double> edges;    // t_0..t_n (size n+1), t_0 = 0
    std::vector<double> w_plain;  // size n
    std::vector<double> w_2;      // size n

    std::vector<double> radial_weights(int d) const;  // w_plain_j * r_j^{d-1}

    bool operator==(const RadialGrid& other) const {
        return n == other.n && r_max == other.r_max && grading == other.grading;
    }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Rejects n < 16, r_max <= 0 and grading powers outside [1, 4].
GridPtr make_grid(int n, double r_max, Grading grading = {});

} // namespace hcnls
