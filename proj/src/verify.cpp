#include "hcnls/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hcnls/analytic.hpp"
#include "hcnls/dynamics.hpp"
#include "hcnls/functionals.hpp"
#include "hcnls/groundstate.hpp"
#include "hcnls/io.hpp"
#include "hcnls/riesz.hpp"

namespace hcnls {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// random positive/signed Gaussian mixtures in the transformed variable
RadialField random_mixture(GridPtr grid, std::mt19937_64& rng, bool signed_components) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const int terms = 1 + static_cast<int>(U(rng) * 3);
    struct Term {
        double a, c, w;
    };
    std::vector<Term> ts(terms);
    for (auto& t : ts) {
        t.a = 0.2 + U(rng);
        if (signed_components && U(rng) < 0.35) t.a = -t.a;
        t.c = U(rng) * 0.25 * grid->r_max;
        t.w = 0.5 + 2.5 * U(rng);
    }
    return RadialField::from_v(grid, [&](double r) {
        double s = 0.0;
        for (const auto& t : ts) s += t.a * std::exp(-(r - t.c) * (r - t.c) / (t.w * t.w));
        return Complex{s, 0.0};
    });
}

GroundStateResult solve_gs(const ModelParams& params, GridPtr grid, const RieszOperator& op,
                           const RunConfig& cfg) {
    GroundStateOptions opts;
    opts.tol = cfg.solver.tol;
    opts.max_iter = cfg.solver.max_iter;
    opts.init_width = cfg.solver.init.width;
    opts.rescale.polish = cfg.solver.polish;
    return compute_ground_state(params, grid, op, opts);
}

std::vector<CheckRow> suite_riesz(const RunConfig& cfg, std::uint64_t seed) {
    std::vector<CheckRow> rows;

    // Newton-shell oracle at the canonical (d, alpha) = (3, 2) and reference
    // resolution; edges align with the shell radius
    {
        auto params = make_params(3, 2.0, 3.0);
        const int n = 2048;
        auto grid = make_grid(n, 8.0);
        auto op = build_riesz(params, grid);
        std::vector<double> f(grid->n);
        for (int j = 0; j < grid->n; ++j) f[j] = grid->nodes[j] < 1.0 ? 1.0 : 0.0;
        auto pot = apply_riesz(op, f);
        double max_rel = 0.0;
        for (int j = 0; j < grid->n; ++j) {
            const double r = grid->nodes[j];
            if (std::abs(r - 1.0) < 2.5 * (8.0 / n)) continue;
            const double exact = r <= 1.0 ? (3.0 - r * r) / 6.0 : 1.0 / (3.0 * r);
            max_rel = std::max(max_rel, std::abs(pot[j] - exact) / exact);
        }
        rows.push_back({"riesz.newton_ball_oracle(d=3,alpha=2)", max_rel <= 1e-4,
                        "max rel err " + fmt(max_rel)});
    }

    auto params = cfg.make_model_params();
    auto grid = cfg.make_model_grid();
    auto op = build_riesz(params, grid);

    // bilinear symmetry in L^2(r^{d-1} dr)
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> f(grid->n), g(grid->n);
            for (int j = 0; j < grid->n; ++j) {
                f[j] = U(rng);
                g[j] = U(rng);
            }
            auto kf = apply_riesz(op, f);
            auto kg = apply_riesz(op, g);
            double lhs = 0.0, rhs = 0.0, scale = 0.0;
            for (int j = 0; j < grid->n; ++j) {
                lhs += op.w_d[j] * kf[j] * g[j];
                rhs += op.w_d[j] * kg[j] * f[j];
                scale += op.w_d[j] * std::abs(kf[j] * g[j]);
            }
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(scale, 1e-30));
        }
        rows.push_back({"riesz.bilinear_symmetry", worst <= 1e-10, "max rel asym " + fmt(worst)});
    }

    // d = 3 closed form against direct angular quadrature
    if (params.d == 3 && std::abs(params.alpha - 1.0) > 1e-12) {
        std::mt19937_64 rng(seed + 1);
        std::uniform_real_distribution<double> U(0.05, 0.8 * grid->r_max);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double r = U(rng), s = U(rng);
            if (r == s) s += 0.01;
            const double closed = k_ang_closed3(r, s, params.alpha);
            worst = std::max(worst,
                             std::abs(k_ang_quadrature(3, params.alpha, r, s) - closed) / closed);
        }
        rows.push_back(
            {"riesz.closed_form_vs_quadrature", worst <= 1e-8, "max rel err " + fmt(worst)});
    }

    // positivity of kernel entries
    {
        double min_entry = 0.0;
        for (double k : op.kernel) min_entry = std::min(min_entry, k);
        rows.push_back({"riesz.kernel_nonnegative", min_entry >= 0.0, "min entry " + fmt(min_entry)});
    }
    return rows;
}

std::vector<CheckRow> suite_pohozaev(const RunConfig& cfg, std::uint64_t) {
    std::vector<CheckRow> rows;
    auto params = cfg.make_model_params();
    if (params.regime != Regime::GroundStateRange) {
        rows.push_back({"pohozaev.regime", false, "p outside the ground-state range"});
        return rows;
    }
    auto grid = cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    auto gs = solve_gs(params, grid, op, cfg);
    rows.push_back({"pohozaev.converged", gs.converged, fmt(gs.iterations) + " iterations"});
    rows.push_back({"pohozaev.residual_choquard", gs.pohozaev_residual_1 <= 1e-3,
                    fmt(gs.pohozaev_residual_1)});
    rows.push_back(
        {"pohozaev.residual_hardy", gs.pohozaev_residual_2 <= 1e-3, fmt(gs.pohozaev_residual_2)});
    rows.push_back({"pohozaev.el_residual", gs.el_residual <= 1e-6, fmt(gs.el_residual)});
    return rows;
}

std::vector<CheckRow> suite_hgn(const RunConfig& cfg, std::uint64_t seed) {
    std::vector<CheckRow> rows;
    auto params = cfg.make_model_params();
    if (params.regime != Regime::GroundStateRange) {
        rows.push_back({"hgn.regime", false, "p outside the ground-state range"});
        return rows;
    }
    auto grid = cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    auto gs = solve_gs(params, grid, op, cfg);
    rows.push_back({"hgn.minimizer_converged", gs.converged, "C = " + fmt(gs.sharp_c)});

    std::mt19937_64 rng(seed);
    int violations = 0;
    double min_w = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        auto f = random_mixture(grid, rng, true);
        double w;
        try {
            w = weinstein_quotient(f, params, op);
        } catch (const std::invalid_argument&) {
            continue;  // degenerate draw (vanishing Choquard term)
        }
        min_w = std::min(min_w, w);
        if (w < gs.sharp_c * (1.0 - 1e-3)) ++violations;
    }
    rows.push_back({"hgn.no_violation_in_1000_trials", violations == 0,
                    "min W = " + fmt(min_w) + ", C = " + fmt(gs.sharp_c)});

    // scale invariance under paired (amplitude, grid dilation) rescalings
    {
        std::mt19937_64 rng2(seed + 7);
        std::uniform_real_distribution<double> U(0.5, 2.0);
        auto f = random_mixture(grid, rng2, false);
        const double w0 = weinstein_quotient(f, params, op);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double a = U(rng2), b = U(rng2);
            auto grid_b = make_grid(grid->n, grid->r_max / b, grid->grading);
            auto op_b = build_riesz(params, grid_b);
            RadialField fb = RadialField::zeros(grid_b);
            for (int j = 0; j < grid->n; ++j) fb.values[j] = a * b * f.values[j];
            worst = std::max(worst, std::abs(weinstein_quotient(fb, params, op_b) - w0) / w0);
        }
        rows.push_back({"hgn.scaling_invariance_20_rescalings", worst <= 1e-6, "max rel " + fmt(worst)});
    }
    return rows;
}

std::vector<CheckRow> suite_virial(const RunConfig& cfg, std::uint64_t) {
    std::vector<CheckRow> rows;
    auto params = cfg.make_model_params();
    if (!params.dynamics_ok) {
        rows.push_back({"virial.regime", false, "dynamics preconditions violated"});
        return rows;
    }
    auto grid = cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    auto u0 = RadialField::from_v(
        grid, [](double r) { return Complex{0.9 * std::exp(-0.6 * r * r), 0.0}; });

    SimControls ctl;
    ctl.dt0 = cfg.dynamics.dt0;
    ctl.t_end = std::min(cfg.dynamics.t_end, 0.6);
    ctl.snapshot_interval = 0.01;
    auto traj = simulate(u0, params, op, ctl);
    rows.push_back({"virial.simulation_completed", traj.status == SimStatus::Completed,
                    to_string(traj.status)});
    if (traj.status != SimStatus::Completed || traj.states.size() < 5) return rows;

    const double h = ctl.snapshot_interval;
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < traj.states.size(); ++k) {
        const double fd = (traj.states[k + 1].diagnostics.gamma -
                           2.0 * traj.states[k].diagnostics.gamma +
                           traj.states[k - 1].diagnostics.gamma) /
                          (h * h);
        const double identity = traj.states[k].diagnostics.gamma_second;
        const double err = std::abs(fd - identity);
        const double bound = std::max(1e-3 * std::abs(identity), 10.0 * h * h);
        worst = std::max(worst, err / bound);
    }
    rows.push_back({"virial.gamma_second_matches_identity", worst <= 1.0,
                    "max err/bound = " + fmt(worst)});
    return rows;
}

std::vector<CheckRow> suite_blowup(const RunConfig& cfg, std::uint64_t, const std::string& out_dir) {
    std::vector<CheckRow> rows;
    auto params = cfg.make_model_params();
    if (!params.mass_critical || !(params.alpha > params.d - 2.0)) {
        rows.push_back({"blowup.regime", false,
                        "needs the mass-critical exponent with d-2 < alpha < d"});
        return rows;
    }
    auto grid = cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    auto gs = solve_gs(params, grid, op, cfg);
    rows.push_back({"blowup.ground_state_converged", gs.converged, "C = " + fmt(gs.sharp_c)});

    const double T = 1.0, lambda = 1.0;
    auto sol = make_pseudoconformal(params, gs.q, T, lambda, 0.0);

    std::vector<BlowupRow> table;
    double worst_res = 0.0;
    for (double t : {0.0, 0.25 * T, 0.5 * T, 0.75 * T}) {
        auto d = minimal_mass_diagnostics(sol, t, params, op);
        worst_res = std::max(worst_res, d.gamma_law_residual);
        table.push_back({t, d.mass, d.energy0, d.gamma_t, d.gamma_law_residual, d.hardy_growth});
    }
    rows.push_back({"blowup.gamma_law_residual", worst_res <= 1e-3, "max " + fmt(worst_res)});

    // detector: simulate the t = 0 datum; 1/||sqrt(L)u|| extrapolates to T
    auto u0 = evaluate_pseudoconformal(sol, 0.0, grid);
    SimControls ctl;
    ctl.dt0 = cfg.dynamics.dt0;
    ctl.t_end = 2.0 * T;
    ctl.blowup_factor = std::min(cfg.dynamics.blowup_factor, 25.0);
    ctl.snapshot_interval = 0.05;
    auto traj = simulate(u0, params, op, ctl);
    const bool fired = traj.status == SimStatus::BlowUpDetected && traj.blowup_time_estimate;
    double t_err = 1e300;
    if (fired) t_err = std::abs(*traj.blowup_time_estimate - T) / T;
    rows.push_back({"blowup.detector_fired", fired, to_string(traj.status)});
    rows.push_back({"blowup.t_estimate_within_5pct", fired && t_err <= 0.05,
                    fired ? "rel err " + fmt(t_err) : "no estimate"});

    if (!out_dir.empty()) {
        write_blowup_csv(out_dir + "/blowup_verify.csv", table);
    }
    return rows;
}

std::vector<CheckRow> suite_phase(const RunConfig& cfg, std::uint64_t seed) {
    std::vector<CheckRow> rows;
    auto params = cfg.make_model_params();
    if (params.regime != Regime::GroundStateRange) {
        rows.push_back({"phase.regime", false, "p outside the ground-state range"});
        return rows;
    }
    auto grid = cfg.make_model_grid();
    auto op = build_riesz(params, grid);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    int checked = 0;
    const double cutoff_w = 0.3 * grid->r_max;
    // resolution criterion: keep the per-cell phase increment of s*phi small,
    // so the edge discretization error (cubic in it) stays below the target
    double dphi_max = 0.0;
    for (int j = 0; j + 1 < grid->n; ++j) {
        const double r = grid->nodes[j];
        dphi_max = std::max(dphi_max, 2.0 * r * std::exp(-(r * r) / (cutoff_w * cutoff_w)) *
                                          (grid->nodes[j + 1] - grid->nodes[j]));
    }
    const double amp_cap = 2e-3 / std::max(dphi_max, 1e-12);
    for (int trial = 0; trial < 50; ++trial) {
        auto base = random_mixture(grid, rng, true);
        RadialField v = base;
        const double rot = U(rng);
        for (int j = 0; j < grid->n; ++j) {
            const double r = grid->nodes[j];
            v.values[j] *= std::polar(1.0, rot * std::sin(0.3 * r));
        }
        const double amp = amp_cap * (0.5 + 0.5 * std::abs(U(rng)));
        auto phi = [amp, cutoff_w](double r) {
            return amp * r * r * std::exp(-(r * r) / (cutoff_w * cutoff_w));
        };
        const double s = (U(rng) < 0 ? -1.0 : 1.0) * (std::abs(U(rng)) < 0.5 ? 0.1 : 1.0);
        auto res = phase_modulation_energy(v, phi, s, params, op);
        const double denom = std::abs(res.lhs) + std::abs(res.rhs);
        if (denom < 1e-12) continue;
        worst = std::max(worst, std::abs(res.lhs - res.rhs) / denom);
        ++checked;
    }
    rows.push_back({"phase.identity_50_triples", worst <= 1e-8 && checked >= 45,
                    "max rel residual " + fmt(worst)});

    // quadratic structure in s: cubic coefficient of a fitted parabola
    {
        auto v = random_mixture(grid, rng, true);
        for (int j = 0; j < grid->n; ++j) {
            v.values[j] *= std::polar(1.0, 0.4 * std::cos(0.2 * grid->nodes[j]));
        }
        const double amp = amp_cap / 3.0;
        auto phi = [amp, cutoff_w](double r) { return amp * r * r * std::exp(-(r * r) / (cutoff_w * cutoff_w)); };
        // E(s) at s in {-1.5,-0.5,0.5,1.5}: third difference kills quadratics
        double e[4];
        int k = 0;
        for (double s : {-1.5, -0.5, 0.5, 1.5}) {
            e[k++] = phase_modulation_energy(v, phi, s, params, op).lhs;
        }
        const double third = (e[3] - 3.0 * e[2] + 3.0 * e[1] - e[0]);
        const double scale = std::abs(e[3]) + std::abs(e[0]);
        rows.push_back({"phase.parabola_in_s", std::abs(third) <= 1e-8 * std::max(scale, 1.0),
                        "cubic coeff " + fmt(third)});
    }
    return rows;
}

} // namespace

std::optional<VerifySuite> parse_suite(const std::string& name) {
    if (name == "hgn") return VerifySuite::Hgn;
    if (name == "pohozaev") return VerifySuite::Pohozaev;
    if (name == "virial") return VerifySuite::Virial;
    if (name == "blowup") return VerifySuite::Blowup;
    if (name == "phase") return VerifySuite::Phase;
    if (name == "riesz") return VerifySuite::Riesz;
    return std::nullopt;
}

const char* to_string(VerifySuite s) {
    switch (s) {
        case VerifySuite::Hgn: return "hgn";
        case VerifySuite::Pohozaev: return "pohozaev";
        case VerifySuite::Virial: return "virial";
        case VerifySuite::Blowup: return "blowup";
        case VerifySuite::Phase: return "phase";
        case VerifySuite::Riesz: return "riesz";
    }
    return "?";
}

std::vector<CheckRow> run_verify_suite(VerifySuite suite, const RunConfig& cfg, std::uint64_t seed,
                                       const std::string& out_dir) {
    switch (suite) {
        case VerifySuite::Riesz: return suite_riesz(cfg, seed);
        case VerifySuite::Pohozaev: return suite_pohozaev(cfg, seed);
        case VerifySuite::Hgn: return suite_hgn(cfg, seed);
        case VerifySuite::Virial: return suite_virial(cfg, seed);
        case VerifySuite::Blowup: return suite_blowup(cfg, seed, out_dir);
        case VerifySuite::Phase: return suite_phase(cfg, seed);
    }
    return {};
}

} // namespace hcnls
