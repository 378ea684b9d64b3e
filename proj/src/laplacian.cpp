#include "hcnls/laplacian.hpp"

namespace hcnls {

RadialLaplacian::RadialLaplacian(const RadialGrid& grid) : n_(grid.n), w2_(grid.w_2) {
    c_.resize(n_ - 1);
    for (int j = 0; j + 1 < n_; ++j) {
        c_[j] = grid.edges[j + 1] / (grid.nodes[j + 1] - grid.nodes[j]);
    }
    cb_ = grid.edges[n_] / (grid.edges[n_] - grid.nodes[n_ - 1]);
}

template <typename T>
static void apply_impl(int n, const std::vector<double>& c, double cb, const std::vector<double>& w2,
                       const std::vector<T>& v, std::vector<T>& y) {
    y.resize(n);
    for (int j = 0; j < n; ++j) {
        T acc = (j > 0) ? c[j - 1] * (v[j] - v[j - 1]) : T{};
        if (j + 1 < n) {
            acc += c[j] * (v[j] - v[j + 1]);
        } else {
            acc += cb * v[j];
        }
        y[j] = acc / w2[j];
    }
}

void RadialLaplacian::apply(const std::vector<Complex>& v, std::vector<Complex>& y) const {
    apply_impl(n_, c_, cb_, w2_, v, y);
}

void RadialLaplacian::apply(const std::vector<double>& v, std::vector<double>& y) const {
    apply_impl(n_, c_, cb_, w2_, v, y);
}

template <typename T>
static double quad_impl(int n, const std::vector<double>& c, double cb, const std::vector<T>& v) {
    double s = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        const T d = v[j + 1] - v[j];
        if constexpr (std::is_same_v<T, Complex>) {
            s += c[j] * std::norm(d);
        } else {
            s += c[j] * d * d;
        }
    }
    if constexpr (std::is_same_v<T, Complex>) {
        s += cb * std::norm(v[n - 1]);
    } else {
        s += cb * v[n - 1] * v[n - 1];
    }
    return s;
}

double RadialLaplacian::quadratic_form(const std::vector<Complex>& v) const {
    return quad_impl(n_, c_, cb_, v);
}

double RadialLaplacian::quadratic_form(const std::vector<double>& v) const {
    return quad_impl(n_, c_, cb_, v);
}

void RadialLaplacian::solve_shifted(Complex z, const std::vector<Complex>& rhs,
                                    std::vector<Complex>& x) const {
    // Row j of (I + z L): diag 1 + z (c_{j-1}+c_j)/w2_j, off-diagonals -z c/w2_j.
    const int n = n_;
    std::vector<Complex> diag(n), upper(n - 1), work(n);
    for (int j = 0; j < n; ++j) {
        double row = (j > 0 ? c_[j - 1] : 0.0) + (j + 1 < n ? c_[j] : cb_);
        diag[j] = 1.0 + z * (row / w2_[j]);
        if (j + 1 < n) upper[j] = -z * (c_[j] / w2_[j]);
    }
    x.resize(n);
    // forward sweep; lower_j = -z c_{j-1}/w2_j
    work[0] = upper.empty() ? Complex{} : upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (int j = 1; j < n; ++j) {
        const Complex lower = -z * (c_[j - 1] / w2_[j]);
        const Complex denom = diag[j] - lower * work[j - 1];
        if (j < n - 1) work[j] = upper[j] / denom;
        x[j] = (rhs[j] - lower * x[j - 1]) / denom;
    }
    for (int j = n - 2; j >= 0; --j) {
        x[j] -= work[j] * x[j + 1];
    }
}

} // namespace hcnls
