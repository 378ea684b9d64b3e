#include "hcnls/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcnls/functionals.hpp"
#include "hcnls/interp.hpp"
#include "hcnls/laplacian.hpp"
#include "hcnls/simd/kernels.hpp"

namespace hcnls {

namespace {

void require_compatible(const ModelParams& params, const RieszOperator& op, const char* where) {
    if (op.params.d != params.d || op.params.alpha != params.alpha) {
        throw std::invalid_argument(std::string(where) + ": Riesz operator built for other (d, alpha)");
    }
}

std::vector<double> real_part(const RadialField& f) {
    std::vector<double> v(f.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.values[j].real();
    return v;
}

RadialField to_field(GridPtr grid, const std::vector<double>& v) {
    RadialField f = RadialField::zeros(std::move(grid));
    for (std::size_t j = 0; j < v.size(); ++j) f.values[j] = Complex{v[j], 0.0};
    return f;
}

// Functional pieces on real nonnegative profiles. The sphere-area factor is
// included in all three: it does not cancel in the quotient (net power
// 1/2 - 1/(2p)), only in the gradient direction.
struct Pieces {
    double h2 = 0.0;  // ||sqrt(L) u||^2
    double m = 0.0;   // ||u||^2
    double dd = 0.0;  // ||(I_alpha*|u|^p)|u|^p||_{L^1}
    std::vector<double> f;     // u^p
    std::vector<double> conv;  // K f
};

struct WeinsteinWork {
    const ModelParams& params;
    const RadialGrid& grid;
    const RieszOperator& op;
    RadialLaplacian lap;
    std::vector<double> upow_exp;  // r^{-(d-2)p/2}
    std::vector<double> nl_scale;  // w_d r^{-(d-2)/2}

    WeinsteinWork(const ModelParams& p, const RadialGrid& g, const RieszOperator& o)
        : params(p), grid(g), op(o), lap(g), upow_exp(g.n), nl_scale(g.n) {
        const double e = 0.5 * (p.d - 2.0);
        for (int j = 0; j < g.n; ++j) {
            upow_exp[j] = std::pow(g.nodes[j], -e * p.p);
            nl_scale[j] = op.w_d[j] * std::pow(g.nodes[j], -e);
        }
    }

    Pieces evaluate(const std::vector<double>& v) const {
        Pieces out;
        out.h2 = params.sphere_area * lap.quadratic_form(v);
        out.m = params.sphere_area *
                simd::weighted_dot(grid.w_2.data(), v.data(), v.data(), v.size());
        out.f.resize(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            out.f[j] = upow_exp[j] * std::pow(v[j], params.p);
        }
        out.conv.resize(v.size());
        simd::matvec(op.kernel.data(), v.size(), v.size(), out.f.data(), out.conv.data());
        out.dd = params.sphere_area *
                 simd::weighted_dot(op.w_d.data(), out.f.data(), out.conv.data(), v.size());
        return out;
    }

    double log_quotient(const Pieces& p) const {
        return 0.5 * params.theta * std::log(p.h2) + 0.5 * (1.0 - params.theta) * std::log(p.m) -
               std::log(p.dd) / (2.0 * params.p);
    }

    // gradient of log W up to the (positive, constant) sphere-area factor
    std::vector<double> gradient(const std::vector<double>& v, const Pieces& p) const {
        std::vector<double> g(v.size());
        std::vector<double> lv(v.size());
        lap.apply(v, lv);
        const double th = params.theta;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double sv = grid.w_2[j] * lv[j];  // stiffness matvec
            const double upm1 = (v[j] > 0.0) ? out_pow(v[j], j) : 0.0;
            g[j] = th * sv / p.h2 + (1.0 - th) * grid.w_2[j] * v[j] / p.m -
                   nl_scale[j] * p.conv[j] * upm1 / p.dd;
        }
        return g;
    }

    // u_j^{p-1} = (r^{-(d-2)/2} v)^{p-1}
    double out_pow(double vj, std::size_t j) const {
        const double e = 0.5 * (params.d - 2.0);
        const double u = vj * std::pow(grid.nodes[j], -e);
        return std::pow(u, params.p - 1.0);
    }

    // gradient of the dilation-gauge functional g1 = log(H^2/M); vanishes on
    // the continuum scale orbit, pins the discrete iterate to grid-resolved
    // scales
    std::vector<double> scale_gradient(const std::vector<double>& v, const Pieces& p) const {
        std::vector<double> g(v.size());
        std::vector<double> lv(v.size());
        lap.apply(v, lv);
        for (std::size_t j = 0; j < v.size(); ++j) {
            g[j] = 2.0 * grid.w_2[j] * (lv[j] / p.h2 - v[j] / p.m);
        }
        return g;
    }

    // Retraction onto {||u|| = ||sqrt(L)u|| = 1}: positivity clamp, then the
    // exact amplitude/dilation pair a = 1/sqrt(m0), b = sqrt(m0/h0) applied as
    // v <- a b v(b r) with monotone-cubic resampling and exponential tail.
    std::vector<double> retract(const std::vector<double>& v_raw) const {
        std::vector<double> v = v_raw;
        for (double& x : v) x = std::max(x, 0.0);
        double m0 = simd::weighted_dot(grid.w_2.data(), v.data(), v.data(), v.size());
        if (!(m0 > 0.0)) {
            throw std::runtime_error("minimize_weinstein: iterate collapsed to zero");
        }
        const double h0 = lap.quadratic_form(v);
        const double b = std::sqrt(m0 / h0);
        if (std::abs(b - 1.0) > 1e-13) {
            const double ab = b / std::sqrt(m0);
            ProfileExtender ext(grid, v);
            for (int j = 0; j < grid.n; ++j) {
                v[j] = ab * std::max(ext(b * grid.nodes[j]), 0.0);
            }
            m0 = simd::weighted_dot(grid.w_2.data(), v.data(), v.data(), v.size());
            if (!(m0 > 0.0)) {
                throw std::runtime_error("minimize_weinstein: iterate collapsed to zero");
            }
        }
        const double a = 1.0 / std::sqrt(params.sphere_area * m0);
        for (double& x : v) x *= a;
        return v;
    }

    // Sobolev preconditioner: solve (W2 + S) z = g (real tridiagonal sweep)
    std::vector<double> precondition(const std::vector<double>& g) const {
        const int n = static_cast<int>(g.size());
        const auto& c = lap.edge_coeffs();
        const auto& w2 = lap.w2();
        std::vector<double> diag(n), upper(n - 1), z(n), work(n);
        for (int j = 0; j < n; ++j) {
            diag[j] = w2[j] + (j > 0 ? c[j - 1] : 0.0) + (j + 1 < n ? c[j] : lap.boundary_coeff());
            if (j + 1 < n) upper[j] = -c[j];
        }
        work[0] = upper[0] / diag[0];
        z[0] = g[0] / diag[0];
        for (int j = 1; j < n; ++j) {
            const double lower = -c[j - 1];
            const double denom = diag[j] - lower * work[j - 1];
            if (j < n - 1) work[j] = upper[j] / denom;
            z[j] = (g[j] - lower * z[j - 1]) / denom;
        }
        for (int j = n - 2; j >= 0; --j) z[j] -= work[j] * z[j + 1];
        return z;
    }
};


// Dense partial-pivot LU solve, in place. Rows x cols = n x n.
void lu_solve(std::vector<double>& a, std::vector<double>& b, int n) {
    std::vector<int> piv(n);
    for (int col = 0; col < n; ++col) {
        int pr = col;
        double best = std::abs(a[static_cast<std::size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double cand = std::abs(a[static_cast<std::size_t>(r) * n + col]);
            if (cand > best) {
                best = cand;
                pr = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("newton_el_solve: singular Jacobian");
        piv[col] = pr;
        if (pr != col) {
            for (int k = 0; k < n; ++k) {
                std::swap(a[static_cast<std::size_t>(col) * n + k],
                          a[static_cast<std::size_t>(pr) * n + k]);
            }
            std::swap(b[col], b[pr]);
        }
        const double inv = 1.0 / a[static_cast<std::size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double factor = a[static_cast<std::size_t>(r) * n + col] * inv;
            if (factor == 0.0) continue;
            a[static_cast<std::size_t>(r) * n + col] = factor;
            const double* src = a.data() + static_cast<std::size_t>(col) * n;
            double* dst = a.data() + static_cast<std::size_t>(r) * n;
            for (int k = col + 1; k < n; ++k) dst[k] -= factor * src[k];
            b[r] -= factor * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        const double* row = a.data() + static_cast<std::size_t>(r) * n;
        for (int k = r + 1; k < n; ++k) s -= row[k] * b[k];
        b[r] = s / row[r];
    }
}

// Residual F(v) = L v + v - N(v) of the transformed ground-state equation
// for real nonnegative v; N_j = (K u^p)_j u_j^{p-1} r_j^{(d-2)/2}.
struct ElEvaluator {
    const ModelParams& params;
    const RadialGrid& grid;
    const RieszOperator& op;
    RadialLaplacian lap;
    double e;

    ElEvaluator(const ModelParams& p, const RadialGrid& g, const RieszOperator& o)
        : params(p), grid(g), op(o), lap(g), e(0.5 * (p.d - 2.0)) {}

    std::vector<double> u_of(const std::vector<double>& v) const {
        std::vector<double> u(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            u[j] = std::max(v[j], 0.0) * std::pow(grid.nodes[j], -e);
        }
        return u;
    }

    std::vector<double> residual(const std::vector<double>& v, std::vector<double>* nl_out = nullptr,
                                 std::vector<double>* u_out = nullptr,
                                 std::vector<double>* conv_out = nullptr) const {
        std::vector<double> u = u_of(v);
        std::vector<double> f(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) f[j] = std::pow(u[j], params.p);
        std::vector<double> conv(v.size());
        simd::matvec(op.kernel.data(), v.size(), v.size(), f.data(), conv.data());
        std::vector<double> lv(v.size());
        lap.apply(v, lv);
        std::vector<double> res(v.size());
        std::vector<double> nl(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            nl[j] = conv[j] * std::pow(u[j], params.p - 1.0) * std::pow(grid.nodes[j], e);
            res[j] = lv[j] + v[j] - nl[j];
        }
        if (nl_out) *nl_out = std::move(nl);
        if (u_out) *u_out = std::move(u);
        if (conv_out) *conv_out = std::move(conv);
        return res;
    }

    double weighted_norm(const std::vector<double>& x) const {
        return std::sqrt(simd::weighted_dot(grid.w_2.data(), x.data(), x.data(), x.size()));
    }
};

} // namespace

double weinstein_quotient(const RadialField& f, const ModelParams& params, const RieszOperator& op) {
    require_compatible(params, op, "weinstein_quotient");
    require_same_grid(f, *op.grid, "weinstein_quotient");
    const double h2 = hardy_seminorm_sq(f, params);
    const double m = mass(f, params);
    const double dd = choquard_norm(f, params, op);
    if (!(dd > 0.0)) {
        throw std::invalid_argument("weinstein_quotient: vanishing Choquard term");
    }
    return std::pow(h2, 0.5 * params.theta) * std::pow(m, 0.5 * (1.0 - params.theta)) /
           std::pow(dd, 1.0 / (2.0 * params.p));
}

WeinsteinResult minimize_weinstein(const ModelParams& params, GridPtr grid, const RieszOperator& op,
                                   const RadialField& init, double tol, int max_iter) {
    if (params.regime != Regime::GroundStateRange) {
        throw std::invalid_argument("minimize_weinstein: no minimizer outside the ground-state range");
    }
    require_compatible(params, op, "minimize_weinstein");
    require_same_grid(init, *grid, "minimize_weinstein");

    WeinsteinWork work(params, *grid, op);
    std::vector<double> v = work.retract(real_part(init));  // throws on zero init

    Pieces pieces = work.evaluate(v);
    if (!(pieces.dd > 0.0)) {
        throw std::invalid_argument("minimize_weinstein: initializer has vanishing Choquard term");
    }
    double j_cur = work.log_quotient(pieces);

    // tangent-projected, preconditioned descent direction and its dual norm;
    // the projection removes the dilation-gauge mode fixed by the retraction
    std::vector<double> grad, dir;
    double gnorm = 0.0;
    auto refresh_direction = [&]() {
        grad = work.gradient(v, pieces);
        std::vector<double> gs = work.scale_gradient(v, pieces);
        std::vector<double> z = work.precondition(grad);
        std::vector<double> zs = work.precondition(gs);
        const double denom = simd::dot(gs.data(), zs.data(), gs.size());
        const double ratio = denom > 0.0 ? simd::dot(grad.data(), zs.data(), grad.size()) / denom : 0.0;
        dir.resize(v.size());
        double dual_sq = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            grad[j] -= ratio * gs[j];
            dir[j] = z[j] - ratio * zs[j];
        }
        dual_sq = simd::dot(grad.data(), dir.data(), grad.size());
        gnorm = std::sqrt(std::max(0.0, dual_sq));
    };
    refresh_direction();

    WeinsteinResult best;
    best.u = to_field(grid, v);
    best.sharp_c = std::exp(j_cur);
    best.iterations = 0;
    best.converged = gnorm < tol;
    best.grad_norm = gnorm;
    if (best.converged) return best;

    std::vector<double> v_prev = v, dir_prev = dir;
    double step = 1.0;

    for (int it = 1; it <= max_iter; ++it) {
        // Barzilai-Borwein step on the (retracted, projected) pairs
        if (it > 1) {
            double sy = 0.0, yy = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                const double s = v[j] - v_prev[j];
                const double y = dir[j] - dir_prev[j];
                sy += s * y;
                yy += y * y;
            }
            step = (sy > 0.0 && yy > 0.0) ? sy / yy : 1.0;
            step = std::clamp(step, 1e-6, 1e3);
        }

        v_prev = v;
        dir_prev = dir;
        const double j_old = j_cur;

        const double slope = simd::dot(grad.data(), dir.data(), grad.size());
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> trial = v_prev;
            for (std::size_t j = 0; j < trial.size(); ++j) trial[j] -= step * dir[j];
            trial = work.retract(trial);
            Pieces tp = work.evaluate(trial);
            if (tp.dd > 0.0) {
                const double j_trial = work.log_quotient(tp);
                if (j_trial <= j_old - 1e-4 * step * std::max(slope, 0.0) || j_trial < j_old) {
                    v = std::move(trial);
                    pieces = std::move(tp);
                    j_cur = j_trial;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            // descent stalled at backtracking resolution: report best iterate
            best.u = to_field(grid, v);
            best.sharp_c = std::exp(j_cur);
            best.iterations = it;
            best.grad_norm = gnorm;
            best.converged = gnorm < tol;
            return best;
        }

        refresh_direction();

        const double rel_change = std::abs(j_cur - j_old) / std::max(std::abs(j_cur), 1e-30);
        if (rel_change < tol && gnorm < tol) {
            best.u = to_field(grid, v);
            best.sharp_c = std::exp(j_cur);
            best.iterations = it;
            best.converged = true;
            best.grad_norm = gnorm;
            return best;
        }
    }

    best.u = to_field(grid, v);
    best.sharp_c = std::exp(j_cur);
    best.iterations = max_iter;
    best.converged = false;
    best.grad_norm = gnorm;
    return best;
}

double el_residual_norm(const RadialField& q, const ModelParams& params, const RieszOperator& op) {
    require_compatible(params, op, "el_residual_norm");
    require_same_grid(q, *op.grid, "el_residual_norm");
    ElEvaluator ev(params, *op.grid, op);
    std::vector<double> v = real_part(q);
    std::vector<double> nl;
    std::vector<double> res = ev.residual(v, &nl);
    const double scale = std::max({ev.weighted_norm(nl), ev.weighted_norm(v), 1e-30});
    return ev.weighted_norm(res) / scale;
}

NewtonResult newton_el_solve(const ModelParams& params, GridPtr grid, const RieszOperator& op,
                             const RadialField& init, const NewtonOptions& opts) {
    require_compatible(params, op, "newton_el_solve");
    require_same_grid(init, *grid, "newton_el_solve");
    const int n = grid->n;
    ElEvaluator ev(params, *grid, op);
    const RadialLaplacian& lap = ev.lap;

    std::vector<double> v = real_part(init);
    for (double& x : v) x = std::max(x, 0.0);

    std::vector<double> nl, u, conv;
    std::vector<double> res = ev.residual(v, &nl, &u, &conv);
    double rnorm = ev.weighted_norm(res);

    NewtonResult out;
    out.iterations = 0;

    const double p = params.p;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const double scale = std::max({ev.weighted_norm(nl), ev.weighted_norm(v), 1e-30});
        if (rnorm / scale <= opts.tol) {
            out.converged = true;
            break;
        }

        // dense Jacobian: L + I - diag((p-1) rho) - B
        std::vector<double> jac(static_cast<std::size_t>(n) * n, 0.0);
        const auto& c = lap.edge_coeffs();
        const auto& w2 = lap.w2();
        for (int j = 0; j < n; ++j) {
            double* row = jac.data() + static_cast<std::size_t>(j) * n;
            const double up2 = u[j] > 0.0 ? std::pow(u[j], p - 2.0) : 0.0;
            const double rho = conv[j] * up2;
            double diag = 1.0 - (p - 1.0) * rho;
            diag += ((j > 0 ? c[j - 1] : 0.0) + (j + 1 < n ? c[j] : lap.boundary_coeff())) / w2[j];
            if (j > 0) row[j - 1] = -c[j - 1] / w2[j];
            if (j + 1 < n) row[j + 1] = -c[j] / w2[j];
            row[j] = diag;
            // nonlocal block: -p K_{jk} u_k^{p-1} r_k^{-e} u_j^{p-2} v_j
            const double left = p * up2 * v[j];
            if (left != 0.0) {
                const double* krow = op.kernel.data() + static_cast<std::size_t>(j) * n;
                for (int k = 0; k < n; ++k) {
                    const double uk = u[k];
                    if (uk <= 0.0) continue;
                    row[k] -= left * krow[k] * std::pow(uk, p - 1.0) *
                              std::pow(grid->nodes[k], -ev.e);
                }
            }
        }

        std::vector<double> delta = res;
        lu_solve(jac, delta, n);

        // damping on the weighted residual norm
        double s = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 25; ++bt) {
            std::vector<double> trial = v;
            for (int j = 0; j < n; ++j) trial[j] = std::max(trial[j] - s * delta[j], 0.0);
            std::vector<double> t_nl, t_u, t_conv;
            std::vector<double> t_res = ev.residual(trial, &t_nl, &t_u, &t_conv);
            const double t_norm = ev.weighted_norm(t_res);
            if (t_norm < rnorm) {
                v = std::move(trial);
                res = std::move(t_res);
                nl = std::move(t_nl);
                u = std::move(t_u);
                conv = std::move(t_conv);
                rnorm = t_norm;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        out.iterations = it;
        if (!accepted) break;
    }

    const double scale = std::max({ev.weighted_norm(nl), ev.weighted_norm(v), 1e-30});
    out.residual = rnorm / scale;
    out.converged = out.residual <= opts.tol;
    out.q = to_field(grid, v);
    return out;
}

GroundStateResult rescale_to_ground_state(const WeinsteinResult& min_result,
                                          const ModelParams& params, const RieszOperator& op,
                                          const RescaleOptions& opts) {
    require_compatible(params, op, "rescale_to_ground_state");
    const GridPtr grid = min_result.u.grid;
    const double th = params.theta;
    const double p = params.p;

    // exact amplitude/dilation bookkeeping to ||u|| = ||sqrt(L)u|| = 1
    const double m0 = mass(min_result.u, params);
    const double h0 = hardy_seminorm_sq(min_result.u, params);
    const double a = 1.0 / std::sqrt(m0);
    const double b = std::sqrt(m0 / h0);

    const double c_est = min_result.sharp_c;
    const double nu1 = std::pow(th, -params.alpha / (4.0 * (p - 1.0))) *
                       std::pow(1.0 - th, (params.alpha + 2.0) / (4.0 * (p - 1.0))) *
                       std::pow(c_est, -p / (p - 1.0));
    const double nu2 = std::sqrt((1.0 - th) / th);

    const double amp = a * std::pow(b, 0.5 * params.d) / nu1;
    const double dil = b / nu2;

    std::vector<double> v_min = real_part(min_result.u);
    ProfileExtender ext(*grid, v_min);
    std::vector<double> q(grid->n);
    for (int j = 0; j < grid->n; ++j) q[j] = amp * ext(dil * grid->nodes[j]);

    GroundStateResult out;
    out.tail_extended = dil > 1.0;
    out.iterations = min_result.iterations;
    out.converged = min_result.converged;
    out.sharp_c = c_est;

    RadialField qf = to_field(grid, q);
    if (opts.polish) {
        NewtonOptions nopts;
        nopts.tol = opts.polish_tol;
        nopts.max_iter = opts.polish_max_iter;
        NewtonResult polished = newton_el_solve(params, grid, op, qf, nopts);
        qf = std::move(polished.q);
        out.iterations += polished.iterations;
        out.converged = out.converged && polished.converged;
    }

    out.m_gs = std::sqrt(mass(qf, params));
    out.h_gs = std::sqrt(hardy_seminorm_sq(qf, params));
    out.n_gs = choquard_norm(qf, params, op);
    out.e_gs = 0.5 * out.h_gs * out.h_gs - out.n_gs / (2.0 * p);
    auto [r1, r2] = pohozaev_check(qf, params, op);
    out.pohozaev_residual_1 = r1;
    out.pohozaev_residual_2 = r2;
    out.el_residual = el_residual_norm(qf, params, op);
    out.q = std::move(qf);
    return out;
}

std::pair<double, double> pohozaev_check(const RadialField& q, const ModelParams& params,
                                         const RieszOperator& op) {
    const double m2 = mass(q, params);
    const double h2 = hardy_seminorm_sq(q, params);
    const double nn = choquard_norm(q, params, op);
    const double denom = params.d + params.alpha - (params.d - 2.0) * params.p;
    const double target1 = 2.0 * params.p / denom * m2;
    const double target2 = (params.d * params.p - params.d - params.alpha) / denom * m2;
    return {std::abs(nn - target1) / target1, std::abs(h2 - target2) / target2};
}

Regime existence_classifier(const ModelParams& params) { return params.regime; }

AsymptoticsReport asymptotics_report(const RadialField& q, const ModelParams& params) {
    if (!(params.regime == Regime::GroundStateRange && params.p > 2.0)) {
        throw std::invalid_argument("asymptotics_report: requires the ground-state range with p > 2");
    }
    const RadialGrid& g = *q.grid;
    AsymptoticsReport rep;

    // quadratic extrapolation of v to r = 0 from the first nodes
    const int k = std::min(8, g.n);
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (int j = 0; j < k; ++j) {
        const double r = g.nodes[j], y = q.values[j].real();
        const double r2 = r * r;
        s0 += 1;
        s1 += r;
        s2 += r2;
        s3 += r2 * r;
        s4 += r2 * r2;
        b0 += y;
        b1 += r * y;
        b2 += r2 * y;
    }
    // solve the 3x3 normal equations by Cramer
    const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) + s2 * (s1 * s3 - s2 * s2);
    rep.v0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) + s2 * (b1 * s3 - b2 * s2)) / det;

    const double r_first = g.nodes.front();
    double near_sup = 0.0;
    for (int j = 0; j < g.n && g.nodes[j] <= 10.0 * r_first; ++j) {
        near_sup = std::max(near_sup, std::abs(q.values[j].real() - rep.v0) / std::abs(rep.v0));
    }
    rep.near_fit = near_sup;

    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = q.values[j].real();
    auto fit = fit_exponential_tail(g, v, 0.5 * g.r_max, 0.75 * g.r_max);
    rep.far_rate = fit.slope;
    rep.far_prefactor = fit.c;
    rep.ok = rep.v0 > 0.0 && fit.ok && std::abs(fit.slope) <= 0.05 &&
             std::isfinite(fit.c) && fit.c > 0.0;
    return rep;
}

ThresholdQuantities threshold_quantities(double sharp_c, const ModelParams& params) {
    const double th = params.theta;
    if (!(th > 0.0 && th < 1.0)) {
        throw std::invalid_argument("threshold_quantities: theta must lie in (0,1)");
    }
    const double p = params.p;
    const double a = (params.d * p - params.d - params.alpha) / (4.0 * (p - 1.0));
    const double b = (params.d * p - params.d - params.alpha - 2.0) / (4.0 * (p - 1.0));
    const double cpow = std::pow(sharp_c, p / (p - 1.0));
    ThresholdQuantities t{};
    t.m_gs = std::pow(th, -a) * std::pow(1.0 - th, b) * cpow;
    t.h_gs = std::pow(th, 0.5 - a) * std::pow(1.0 - th, b - 0.5) * cpow;
    t.n_gs = t.m_gs * t.m_gs / (1.0 - th);
    t.e_gs = 0.5 * t.h_gs * t.h_gs - t.n_gs / (2.0 * p);
    return t;
}

RadialField gaussian_init(GridPtr grid, double width, double amplitude) {
    return RadialField::from_v(std::move(grid), [width, amplitude](double r) {
        return Complex{amplitude * std::exp(-(r / width) * (r / width)), 0.0};
    });
}

GroundStateResult compute_ground_state(const ModelParams& params, GridPtr grid,
                                       const RieszOperator& op, const GroundStateOptions& opts) {
    auto init = gaussian_init(grid, opts.init_width);
    auto min_result = minimize_weinstein(params, grid, op, init, opts.tol, opts.max_iter);
    return rescale_to_ground_state(min_result, params, op, opts.rescale);
}

} // namespace hcnls
