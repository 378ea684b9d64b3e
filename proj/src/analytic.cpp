#include "hcnls/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcnls/functionals.hpp"
#include "hcnls/simd/kernels.hpp"

namespace hcnls {

namespace {

std::vector<double> real_values(const RadialField& f) {
    std::vector<double> v(f.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.values[j].real();
    return v;
}

} // namespace

PseudoconformalSolution make_pseudoconformal(const ModelParams& params, const RadialField& q,
                                             double t_blowup, double lambda, double phase) {
    if (!params.mass_critical) {
        throw std::invalid_argument("make_pseudoconformal: requires the mass-critical exponent");
    }
    if (!(params.alpha > params.d - 2.0 && params.alpha < params.d)) {
        throw std::invalid_argument("make_pseudoconformal: requires d-2 < alpha < d");
    }
    if (!(t_blowup > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("make_pseudoconformal: T and lambda must be positive");
    }
    PseudoconformalSolution sol{params,  q,       t_blowup, lambda, phase, ProfileExtender(*q.grid, real_values(q)),
                                0.0,     0.0};
    sol.mass_q = mass(q, params);
    sol.gamma_q = weighted_moment(q, params);
    return sol;
}

RadialField evaluate_pseudoconformal(const PseudoconformalSolution& sol, double t, GridPtr grid) {
    if (!(t >= 0.0) || t >= sol.t_blowup) {
        throw std::invalid_argument("evaluate_pseudoconformal: need 0 <= t < T");
    }
    const double tau = sol.t_blowup - t;
    const double kappa = sol.lambda / tau;
    const double global_phase = sol.phase + sol.lambda * sol.lambda / tau;
    RadialField out = RadialField::zeros(std::move(grid));
    for (int j = 0; j < out.size(); ++j) {
        const double r = out.grid->nodes[j];
        const double mag = kappa * sol.q_ext(kappa * r);
        const double arg = global_phase - r * r / (4.0 * tau);
        out.values[j] = std::polar(mag, arg);
    }
    return out;
}

bool pseudoconformal_resolved(const PseudoconformalSolution& sol, double t, const RadialGrid& grid) {
    const double tau = sol.t_blowup - t;
    const double kappa = sol.lambda / tau;
    double vmax = 0.0;
    std::vector<double> mags(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        mags[j] = kappa * sol.q_ext(kappa * grid.nodes[j]);
        vmax = std::max(vmax, mags[j]);
    }
    for (int j = 0; j + 1 < grid.n; ++j) {
        if (mags[j] < 1e-8 * vmax) continue;
        const double dr = grid.nodes[j + 1] - grid.nodes[j];
        const double dphase = dr * grid.nodes[j] / (2.0 * tau);
        if (dphase >= 0.25 * std::numbers::pi) return false;
    }
    return true;
}

MinimalMassDiagnostics minimal_mass_diagnostics(const PseudoconformalSolution& sol, double t,
                                                const ModelParams& params,
                                                const RieszOperator& op) {
    RadialField ut = evaluate_pseudoconformal(sol, t, op.grid);
    RadialField u0 = evaluate_pseudoconformal(sol, 0.0, op.grid);
    MinimalMassDiagnostics diag;
    diag.mass = mass(ut, params);
    diag.energy0 = energy(u0, params, op);
    diag.gamma_t = weighted_moment(ut, params);
    const double tau = sol.t_blowup - t;
    diag.gamma_law_residual =
        std::abs(diag.gamma_t - 8.0 * diag.energy0 * tau * tau) / diag.gamma_t;
    diag.hardy_growth = std::sqrt(hardy_seminorm_sq(ut, params)) * tau;
    return diag;
}

double mass_concentration_profile(const PseudoconformalSolution& sol, double t, double rho) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("mass_concentration_profile: radius must be positive");
    }
    if (!(t >= 0.0) || t >= sol.t_blowup) {
        throw std::invalid_argument("mass_concentration_profile: need 0 <= t < T");
    }
    // int_{B_rho} |u(t)|^2 dx = A int_0^{kappa rho} v_Q(y)^2 y dy
    const double kappa = sol.lambda / (sol.t_blowup - t);
    const double cut = kappa * rho;
    const RadialGrid& g = *sol.q_profile.grid;

    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        if (g.edges[j + 1] <= cut) {
            acc += g.w_2[j] * std::norm(sol.q_profile.values[j]);
        } else if (g.edges[j] < cut) {
            // partial cell, exact r-weight on [edge_j, cut]
            acc += 0.5 * (cut * cut - g.edges[j] * g.edges[j]) *
                   std::norm(sol.q_profile.values[j]);
        }
    }
    if (cut > g.r_max) {
        // fitted tail: v^2 y = c^2 e^{-2y}
        const double c = sol.q_ext.tail().c;
        acc += 0.5 * c * c * (std::exp(-2.0 * g.r_max) - std::exp(-2.0 * cut));
    }
    return sol.params.sphere_area * acc;
}

PhaseModulationResult phase_modulation_energy(const RadialField& v,
                                              const std::function<double(double)>& phi, double s,
                                              const ModelParams& params, const RieszOperator& op) {
    require_same_grid(v, *op.grid, "phase_modulation_energy");
    const RadialGrid& g = *v.grid;

    PhaseModulationResult out;
    out.base_energy = energy(v, params, op);

    std::vector<double> phi_nodes(g.n);
    for (int j = 0; j < g.n; ++j) phi_nodes[j] = phi(g.nodes[j]);

    double lin = 0.0, quad = 0.0;
    for (int j = 0; j + 1 < g.n; ++j) {
        const double edge = g.edges[j + 1];
        const double dr = g.nodes[j + 1] - g.nodes[j];
        const double dphi = phi_nodes[j + 1] - phi_nodes[j];
        const Complex cross = std::conj(v.values[j]) * v.values[j + 1];
        lin += edge * cross.imag() * dphi / dr;
        quad += edge * cross.real() * dphi * dphi / dr;
    }
    out.linear_term = params.sphere_area * lin;
    out.quadratic_term = params.sphere_area * quad;

    RadialField w = v;
    for (int j = 0; j < g.n; ++j) {
        w.values[j] *= std::polar(1.0, s * phi_nodes[j]);
    }
    out.lhs = energy(w, params, op);
    out.rhs = out.base_energy + s * out.linear_term + 0.5 * s * s * out.quadratic_term;

    out.cs_lhs = std::abs(out.linear_term);
    out.cs_rhs = std::sqrt(2.0 * std::max(out.base_energy, 0.0)) *
                 std::sqrt(std::max(out.quadratic_term, 0.0));
    return out;
}

RoundtripReport characterization_roundtrip(const RadialField& u0, const ModelParams& params,
                                           const GroundStateResult& gs, double t_est,
                                           const RieszOperator& op) {
    require_same_grid(u0, *op.grid, "characterization_roundtrip");
    if (!(t_est > 0.0)) {
        throw std::invalid_argument("characterization_roundtrip: blow-up time must be positive");
    }
    const double m = std::sqrt(mass(u0, params));
    if (std::abs(m - gs.m_gs) > 1e-3 * gs.m_gs) {
        throw std::invalid_argument("characterization_roundtrip: datum mass differs from M_gs");
    }
    const RadialGrid& g = *u0.grid;

    RadialField v0 = u0;
    for (int j = 0; j < g.n; ++j) {
        const double r = g.nodes[j];
        v0.values[j] *= std::polar(1.0, r * r / (4.0 * t_est));
    }

    RoundtripReport rep;
    rep.energy_v0 = energy(v0, params, op);

    // lambda_1 from moment matching: Gamma(lambda^{d/2}Q(lambda .)) = Gamma_Q/lambda^2
    const double gamma_q = weighted_moment(gs.q, params);
    const double gamma_v0 = weighted_moment(v0, params);
    const double lambda1 = std::sqrt(gamma_q / gamma_v0);

    // dilated profile in the transformed variable: lambda1 v_Q(lambda1 r)
    ProfileExtender ext(*gs.q.grid, real_values(gs.q));
    Complex overlap{0.0, 0.0};
    double misfit_sq = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double model = lambda1 * ext(lambda1 * g.nodes[j]);
        overlap += g.w_2[j] * model * v0.values[j];
        const double diff = std::abs(v0.values[j]) - model;
        misfit_sq += g.w_2[j] * diff * diff;
    }
    rep.profile_misfit = std::sqrt(params.sphere_area * misfit_sq) / gs.m_gs;

    const double sigma = std::arg(overlap);
    rep.fitted_lambda = lambda1 * t_est;
    rep.fitted_gamma = sigma - lambda1 * lambda1 * t_est;

    // zero energy after phase removal is the blow-up signature
    const double scale = 0.5 * hardy_seminorm_sq(v0, params);
    rep.degenerate = !(std::abs(rep.energy_v0) <= 1e-3 * scale);
    return rep;
}

} // namespace hcnls
