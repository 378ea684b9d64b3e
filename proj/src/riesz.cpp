#include "hcnls/riesz.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "hcnls/detail/gauss.hpp"
#include "hcnls/functionals.hpp"
#include "hcnls/simd/kernels.hpp"

namespace hcnls {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area_dim(int dim) {  // |S^{dim-1}|
    return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

// Integrand of the angular kernel: sin^{d-2}(t) * |r e_1 - s w|^{-(d-alpha)}
// with the chord written as (r-s)^2 + 4 r s sin^2(t/2) (no cancellation near
// the diagonal).
double ang_integrand(int d, double alpha, double r, double s, double t) {
    const double sh = std::sin(0.5 * t);
    const double q2 = (r - s) * (r - s) + 4.0 * r * s * sh * sh;
    return std::pow(std::sin(t), d - 2) * std::pow(q2, -0.5 * (d - alpha));
}

// int_a^b s (r+s)^{alpha-1} ds
double moment_plus(double r, double a, double b, double alpha) {
    auto prim = [&](double s) {
        const double t = r + s;
        return std::pow(t, alpha + 1.0) / (alpha + 1.0) - r * std::pow(t, alpha) / alpha;
    };
    return prim(b) - prim(a);
}

// int_a^b s |r-s|^{alpha-1} ds with a <= r <= b
double moment_minus(double r, double a, double b, double alpha) {
    const double ra = r - a, br = b - r;
    return r * std::pow(ra, alpha) / alpha - std::pow(ra, alpha + 1.0) / (alpha + 1.0) +
           r * std::pow(br, alpha) / alpha + std::pow(br, alpha + 1.0) / (alpha + 1.0);
}

// Exact int over the cell [a, b] (containing r) of k_ang_closed3(r, s) s^2 ds.
double diag_cell_closed3(double r, double a, double b, double alpha) {
    return 2.0 * kPi / (r * (alpha - 1.0)) *
           (moment_plus(r, a, b, alpha) - moment_minus(r, a, b, alpha));
}

// Cell average of the generic-d kernel: int_a^b k_ang(r, s) s^{d-1} ds, with
// the weak |r-s|^{alpha-1}-type singularity resolved by panels graded toward
// s = r on both sides.
double diag_cell_quadrature(int d, double alpha, double r, double a, double b) {
    static const auto gauss = detail::gauss_legendre(8);
    auto side = [&](double from, double to, bool toward_upper) {
        // integrate [from, to] where the singular endpoint is `to` (toward_upper)
        // or `from` (!toward_upper)
        double total = 0.0;
        double lo = from, hi = to;
        const double floor_w = 1e-12 * std::max(1.0, r);
        for (int panel = 0; panel < 48; ++panel) {
            const double w = hi - lo;
            if (w <= floor_w) break;
            double pa, pb;
            if (toward_upper) {
                pa = lo;
                pb = hi - 0.5 * w;
                lo = pb;
            } else {
                pb = hi;
                pa = lo + 0.5 * w;
                hi = pa;
            }
            for (std::size_t q = 0; q < gauss.first.size(); ++q) {
                const double s = 0.5 * (pa + pb) + 0.5 * (pb - pa) * gauss.first[q];
                total += 0.5 * (pb - pa) * gauss.second[q] * std::pow(s, d - 1) *
                         k_ang_quadrature(d, alpha, r, s);
            }
        }
        return total;
    };
    return side(a, r, true) + side(r, b, false);
}

struct CacheHeader {
    char magic[8];
    std::uint32_t version;
    std::int32_t d;
    std::int32_t n;
    double alpha;
    double r_max;
    double grading_power;
};

constexpr char kMagic[8] = {'H', 'C', 'N', 'L', 'S', 'K', 'R', 'N'};

bool load_kernel_cache(const std::string& path, const ModelParams& p, const RadialGrid& g,
                       std::vector<double>& kernel) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    CacheHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0 || h.version != 1u) return false;
    if (h.d != p.d || h.n != g.n || h.alpha != p.alpha || h.r_max != g.r_max ||
        h.grading_power != g.grading.power) {
        return false;
    }
    kernel.resize(static_cast<std::size_t>(g.n) * g.n);
    in.read(reinterpret_cast<char*>(kernel.data()),
            static_cast<std::streamsize>(kernel.size() * sizeof(double)));
    return static_cast<bool>(in);
}

void save_kernel_cache(const std::string& path, const ModelParams& p, const RadialGrid& g,
                       const std::vector<double>& kernel) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return;  // cache is best-effort
    CacheHeader h{};
    std::memcpy(h.magic, kMagic, 8);
    h.version = 1u;
    h.d = p.d;
    h.n = g.n;
    h.alpha = p.alpha;
    h.r_max = g.r_max;
    h.grading_power = g.grading.power;
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(kernel.data()),
              static_cast<std::streamsize>(kernel.size() * sizeof(double)));
}

} // namespace

double k_ang_closed3(double r, double s, double alpha) {
    if (std::abs(alpha - 1.0) < 1e-12) {
        throw std::invalid_argument("k_ang_closed3: alpha = 1 has no power-form closed expression");
    }
    return 2.0 * kPi * (std::pow(r + s, alpha - 1.0) - std::pow(std::abs(r - s), alpha - 1.0)) /
           (r * s * (alpha - 1.0));
}

double k_ang_quadrature(int d, double alpha, double r, double s) {
    static const auto gauss = detail::gauss_legendre(16);
    const double pref = sphere_area_dim(d - 1);

    const double diff = std::abs(r - s);
    double theta_cut;
    double tail = 0.0;
    if (diff == 0.0) {
        if (alpha <= 1.0) {
            throw std::invalid_argument("k_ang_quadrature: diagonal is non-integrable for alpha <= 1");
        }
        // analytic small-angle tail of the integrable theta^{alpha-2} singularity
        theta_cut = 1e-6;
        tail = std::pow(r, alpha - d) * std::pow(theta_cut, alpha - 1.0) / (alpha - 1.0);
    } else {
        theta_cut = std::max(1e-3 * diff / std::sqrt(r * s), 1e-15 * kPi);
    }

    double total = 0.0;
    double hi = kPi;
    while (hi * 0.5 > theta_cut) {
        const double lo = hi * 0.5;
        for (std::size_t q = 0; q < gauss.first.size(); ++q) {
            const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gauss.first[q];
            total += 0.5 * (hi - lo) * gauss.second[q] * ang_integrand(d, alpha, r, s, t);
        }
        hi = lo;
    }
    if (diff > 0.0) {
        // last panel [0, hi]: the integrand is smooth there (q^2 >= diff^2 > 0)
        for (std::size_t q = 0; q < gauss.first.size(); ++q) {
            const double t = 0.5 * hi + 0.5 * hi * gauss.first[q];
            total += 0.5 * hi * gauss.second[q] * ang_integrand(d, alpha, r, s, t);
        }
    }
    return pref * (total + tail);
}

RieszOperator build_riesz(const ModelParams& params, GridPtr grid, const RieszBuildOptions& opts) {
    if (!(params.alpha > 0.0) || !(params.alpha < params.d)) {
        throw std::invalid_argument("build_riesz: alpha must lie in (0, d)");
    }
    RieszOperator op;
    op.params = params;
    op.grid = std::move(grid);
    op.w_d = op.grid->radial_weights(params.d);

    const RadialGrid& g = *op.grid;
    const int n = g.n;

    if (opts.cache_path && load_kernel_cache(*opts.cache_path, params, g, op.kernel)) {
        return op;
    }

    op.kernel.assign(static_cast<std::size_t>(n) * n, 0.0);
    const bool closed3 = params.d == 3 && std::abs(params.alpha - 1.0) > 1e-12 && !opts.force_quadrature;
    const double c = params.riesz_const;
    const double alpha = params.alpha;

    for (int j = 0; j < n; ++j) {
        const double rj = g.nodes[j];
        double* row = op.kernel.data() + static_cast<std::size_t>(j) * n;
        row[j] = closed3 ? c * diag_cell_closed3(rj, g.edges[j], g.edges[j + 1], alpha)
                         : c * diag_cell_quadrature(params.d, alpha, rj, g.edges[j], g.edges[j + 1]);
        for (int k = j + 1; k < n; ++k) {
            const double rk = g.nodes[k];
            const double kang = closed3 ? k_ang_closed3(rj, rk, alpha)
                                        : k_ang_quadrature(params.d, alpha, rj, rk);
            row[k] = c * kang * op.w_d[k];
            op.kernel[static_cast<std::size_t>(k) * n + j] = c * kang * op.w_d[j];
        }
    }

    if (opts.cache_path) save_kernel_cache(*opts.cache_path, params, g, op.kernel);
    return op;
}

std::vector<double> apply_riesz(const RieszOperator& op, const std::vector<double>& f) {
    const int n = op.size();
    if (static_cast<int>(f.size()) != n) {
        throw std::invalid_argument("apply_riesz: sample count does not match operator grid");
    }
    std::vector<double> out(n);
    simd::matvec(op.kernel.data(), n, n, f.data(), out.data());
    return out;
}

std::vector<double> abs_u_pow_p(const RadialField& f, const ModelParams& params) {
    const auto& g = *f.grid;
    std::vector<double> out(f.values.size());
    const double e = 0.5 * (params.d - 2.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double absu = std::abs(f.values[j]) * std::pow(g.nodes[j], -e);
        out[j] = std::pow(absu, params.p);
    }
    return out;
}

double choquard_norm(const RadialField& f, const ModelParams& params, const RieszOperator& op) {
    require_same_grid(f, *op.grid, "choquard_norm");
    const std::vector<double> fp = abs_u_pow_p(f, params);
    const std::vector<double> conv = apply_riesz(op, fp);
    return params.sphere_area * simd::weighted_dot(op.w_d.data(), fp.data(), conv.data(), fp.size());
}

double choquard_energy(const RadialField& f, const ModelParams& params, const RieszOperator& op) {
    return choquard_norm(f, params, op) / (2.0 * params.p);
}

double energy(const RadialField& f, const ModelParams& params, const RieszOperator& op) {
    if (params.regime != Regime::GroundStateRange && !params.dynamics_ok) {
        throw std::invalid_argument("energy: exponent p admits no Choquard energy in this regime");
    }
    return 0.5 * hardy_seminorm_sq(f, params) - choquard_energy(f, params, op);
}

} // namespace hcnls
