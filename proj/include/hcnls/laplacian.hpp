#pragma once

#include <vector>

#include "hcnls/field.hpp"
#include "hcnls/grid.hpp"

namespace hcnls {

// Finite-volume discretization of the two-dimensional radial Laplacian
//   (L v)(r) = -(v'' + v'/r)
// acting on the transformed variable. This is the whole Hardy operator: after
// v = r^{(d-2)/2} u the critical inverse-square potential is absorbed and the
// operator is d-independent.
//
// Flux form on cells [t_{j-1}, t_j] with midpoint nodes r_j:
//   F_j = t_j (v_{j+1} - v_j)/(r_{j+1} - r_j),   F at r=0 vanishes (even
//   reflection), and the r_max closure is homogeneous Dirichlet through the
//   boundary edge. L is self-adjoint and nonnegative in the l^2(w_2) inner
//   product; its quadratic form is the Hardy seminorm up to the sphere area.
class RadialLaplacian {
  public:
    explicit RadialLaplacian(const RadialGrid& grid);

    // y = L v
    void apply(const std::vector<Complex>& v, std::vector<Complex>& y) const;
    void apply(const std::vector<double>& v, std::vector<double>& y) const;

    // sum_j c_j |v_{j+1}-v_j|^2 + c_b |v_{n-1}|^2  ( = <Lv, v>_{w2} >= 0 )
    double quadratic_form(const std::vector<Complex>& v) const;
    double quadratic_form(const std::vector<double>& v) const;

    // Solves (I + z L) x = rhs (tridiagonal Thomas sweep).
    void solve_shifted(Complex z, const std::vector<Complex>& rhs, std::vector<Complex>& x) const;

    int size() const { return n_; }
    const std::vector<double>& w2() const { return w2_; }
    // c_j = t_{j+1}/(r_{j+2}-r_{j+1}) in 1-based terms; see implementation.
    const std::vector<double>& edge_coeffs() const { return c_; }
    double boundary_coeff() const { return cb_; }

  private:
    int n_;
    std::vector<double> c_;   // size n-1, interior edge conductances
    double cb_;               // Dirichlet closure conductance at r_max
    std::vector<double> w2_;  // cell weights (width * r_j)
};

} // namespace hcnls
