#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcnls/field.hpp"
#include "hcnls/grid.hpp"
#include "hcnls/params.hpp"

namespace hcnls {

// Discretized radial Riesz convolution
//   (I_alpha * f)(r_j) = sum_k K_{jk} f(r_k),
// with K_{jk} = riesz_const * k_ang(r_j, r_k) * w_d_k and
//   k_ang(r, s) = int_{S^{d-1}} |r e_1 - s w|^{-(d-alpha)} dw.
//
// For d = 3 and alpha != 1 the angular integral has the closed form
//   k_ang(r, s) = 2 pi [(r+s)^{alpha-1} - |r-s|^{alpha-1}] / (r s (alpha-1));
// other (d, alpha) use graded-panel angular quadrature. Diagonal entries are
// cell averages of the (weakly singular) kernel over the node's own cell, so
// every entry is finite for all 0 < alpha < d.
//
// The bilinear form <I_alpha*f, g> in L^2(r^{d-1} dr) is symmetric by
// construction: w_d_j K_{jk} = riesz_const * k_ang(r_j,r_k) * w_d_j * w_d_k.
// Contributions from s > r_max are dropped (exponentially decaying fields;
// tail_mass_fraction is the reporting proxy).
struct RieszOperator {
    ModelParams params;
    GridPtr grid;
    std::vector<double> w_d;     // quadrature weights for int f r^{d-1} dr
    std::vector<double> kernel;  // n x n, row-major

    int size() const { return grid->n; }
};

struct RieszBuildOptions {
    // Kernel cache file keyed by (d, alpha, n, r_max, grading); loaded when
    // present and valid, written otherwise. Cached bytes are bit-identical to
    // fresh assembly.
    std::optional<std::string> cache_path;
    // Skip the d = 3 closed form (test hook; also taken for alpha = 1).
    bool force_quadrature = false;
};

RieszOperator build_riesz(const ModelParams& params, GridPtr grid, const RieszBuildOptions& opts = {});

std::vector<double> apply_riesz(const RieszOperator& op, const std::vector<double>& f);

// ||(I_alpha * |u|^p) |u|^p||_{L^1} = 2p G(u)
double choquard_norm(const RadialField& f, const ModelParams& params, const RieszOperator& op);

// G(u) = (1/2p) int (I_alpha * |u|^p) |u|^p dx
double choquard_energy(const RadialField& f, const ModelParams& params, const RieszOperator& op);

// |u_j|^p sampled at the nodes (physical field, from the transformed values).
std::vector<double> abs_u_pow_p(const RadialField& f, const ModelParams& params);

// Angular kernel: d = 3 closed form (throws for alpha = 1 or d != 3).
double k_ang_closed3(double r, double s, double alpha);

// Angular kernel by graded-panel quadrature, any 0 < alpha < d, r != s or
// alpha > 1.
double k_ang_quadrature(int d, double alpha, double r, double s);

} // namespace hcnls
