#include "hcnls/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "hcnls/functionals.hpp"
#include "hcnls/laplacian.hpp"
#include "hcnls/simd/kernels.hpp"

namespace hcnls {

namespace {

double w2_norm(const RadialGrid& g, const std::vector<Complex>& v) {
    return std::sqrt(simd::weighted_norm_sq(g.w_2.data(), v.data(), v.size()));
}

// 4 A int Im(bar v v') r^2 dr, edge-centered; the boundary edges drop out
// (zero radius at the origin, Dirichlet value at r_max).
double gamma_prime_of(const RadialField& f, const ModelParams& params) {
    const RadialGrid& g = *f.grid;
    double s = 0.0;
    for (int j = 0; j + 1 < g.n; ++j) {
        const double edge = g.edges[j + 1];
        s += edge * edge * std::imag(std::conj(f.values[j]) * f.values[j + 1]);
    }
    return 4.0 * params.sphere_area * s;
}

// Real Choquard multiplier rho = (I_alpha * |u|^p) |u|^{p-2} at the nodes.
std::vector<double> choquard_multiplier(const std::vector<Complex>& v, const RadialGrid& g,
                                        const ModelParams& params, const RieszOperator& op) {
    const int n = g.n;
    const double e = 0.5 * (params.d - 2.0);
    std::vector<double> absu(n), f(n);
    for (int j = 0; j < n; ++j) {
        absu[j] = std::abs(v[j]) * std::pow(g.nodes[j], -e);
        f[j] = std::pow(absu[j], params.p);
    }
    std::vector<double> conv(n);
    simd::matvec(op.kernel.data(), n, n, f.data(), conv.data());
    for (int j = 0; j < n; ++j) {
        conv[j] *= std::pow(absu[j], params.p - 2.0);
    }
    return conv;
}

} // namespace

Diagnostics compute_diagnostics(const RadialField& f, const ModelParams& params,
                                const RieszOperator& op) {
    Diagnostics d;
    d.mass = mass(f, params);
    d.hardy_sq = hardy_seminorm_sq(f, params);
    const double g_val = choquard_energy(f, params, op);
    d.energy = 0.5 * d.hardy_sq - g_val;
    d.gamma = weighted_moment(f, params);
    d.gamma_prime = gamma_prime_of(f, params);
    d.gamma_second =
        16.0 * d.energy + 8.0 * (params.d + params.alpha + 2.0 - params.d * params.p) * g_val;
    return d;
}

std::tuple<double, double, double> virial_diagnostics(const RadialField& f,
                                                      const ModelParams& params,
                                                      const RieszOperator& op) {
    Diagnostics d = compute_diagnostics(f, params, op);
    return {d.gamma, d.gamma_prime, d.gamma_second};
}

SimState step(const SimState& state, double dt, const RieszOperator& op, const ModelParams& params,
              const StepControls& controls, StepStats* stats) {
    if (!params.dynamics_ok) {
        throw std::invalid_argument("step: parameters outside the dynamics regime");
    }
    if (dt == 0.0) {
        throw std::invalid_argument("step: dt must be nonzero");
    }
    require_same_grid(state.field, *op.grid, "step");

    const RadialGrid& g = *op.grid;
    const int n = g.n;
    RadialLaplacian lap(g);
    const Complex half_dt{0.0, 0.5 * dt};

    const std::vector<Complex>& v = state.field.values;
    std::vector<Complex> lv(n);
    lap.apply(v, lv);
    std::vector<Complex> rhs_lin(n);
    for (int j = 0; j < n; ++j) rhs_lin[j] = v[j] - half_dt * lv[j];

    std::vector<Complex> v_new = v;
    std::vector<Complex> rhs(n), v_mid(n), diff(n);
    bool converged = !controls.nonlinear;

    if (!controls.nonlinear) {
        lap.solve_shifted(half_dt, rhs_lin, v_new);
        if (stats) stats->inner_iterations = 0;
    } else {
        for (int it = 0; it < controls.fp_max_iter; ++it) {
            for (int j = 0; j < n; ++j) v_mid[j] = 0.5 * (v[j] + v_new[j]);
            std::vector<double> rho = choquard_multiplier(v_mid, g, params, op);
            for (int j = 0; j < n; ++j) {
                rhs[j] = rhs_lin[j] + Complex{0.0, dt} * (rho[j] * v_mid[j]);
            }
            std::vector<Complex> v_next(n);
            lap.solve_shifted(half_dt, rhs, v_next);
            for (int j = 0; j < n; ++j) diff[j] = v_next[j] - v_new[j];
            const double change = w2_norm(g, diff);
            const double scale = std::max(w2_norm(g, v_next), 1e-300);
            v_new = std::move(v_next);
            if (stats) stats->inner_iterations = it + 1;
            if (change <= controls.fp_tol * scale) {
                converged = true;
                break;
            }
            if (!std::isfinite(change)) break;
        }
    }
    if (!converged) {
        throw StepFailureError("step: midpoint fixed point did not converge in " +
                               std::to_string(controls.fp_max_iter) + " iterations");
    }

    SimState out;
    out.t = state.t + dt;
    out.dt = dt;
    out.field.grid = state.field.grid;
    out.field.values = std::move(v_new);
    out.diagnostics = compute_diagnostics(out.field, params, op);
    return out;
}

const char* to_string(SimStatus s) {
    switch (s) {
        case SimStatus::Running: return "Running";
        case SimStatus::Completed: return "Completed";
        case SimStatus::BlowUpDetected: return "BlowUpDetected";
        case SimStatus::StepFailure: return "StepFailure";
    }
    return "?";
}

Trajectory simulate(const RadialField& u0, const ModelParams& params, const RieszOperator& op,
                    const SimControls& controls) {
    if (!params.dynamics_ok) {
        throw std::invalid_argument("simulate: parameters outside the dynamics regime");
    }
    require_same_grid(u0, *op.grid, "simulate");

    Trajectory traj;
    SimState cur;
    cur.t = 0.0;
    cur.dt = controls.dt0;
    cur.field = u0;
    cur.diagnostics = compute_diagnostics(u0, params, op);
    traj.states.push_back(cur);

    const double mass0 = cur.diagnostics.mass;
    const double energy0 = cur.diagnostics.energy;
    const double hardy0 = std::sqrt(cur.diagnostics.hardy_sq);
    const double cfl = controls.cfl > 0.0
                           ? controls.cfl
                           : controls.dt0 * std::max(cur.diagnostics.hardy_sq, 1.0);

    // trailing (t, 1/||sqrt(L)u||) pairs for the blow-up time extrapolation
    double prev_t = 0.0, prev_invh = 1.0 / hardy0;

    double next_snapshot = controls.snapshot_interval;
    traj.status = SimStatus::Running;

    auto note_snapshot = [&](const SimState& s) {
        traj.states.push_back(s);
        traj.mass_drift =
            std::max(traj.mass_drift, std::abs(s.diagnostics.mass - mass0) / std::abs(mass0));
        traj.energy_drift = std::max(traj.energy_drift, std::abs(s.diagnostics.energy - energy0) /
                                                            std::max(std::abs(energy0), 1e-14));
        if (tail_mass_fraction(s.field) > controls.boundary_threshold) {
            traj.boundary_contaminated = true;
        }
    };

    double hardy_sq_cur = cur.diagnostics.hardy_sq;
    // rejection control: a diverging midpoint iteration shrinks the working
    // step; smooth stretches let it relax back toward dt0
    double dt_work = controls.dt0;
    while (cur.t < controls.t_end) {
        double dt = std::min(dt_work, cfl / std::max(hardy_sq_cur, 1e-300));
        dt = std::max(dt, controls.dt_floor);
        dt = std::min(dt, controls.t_end - cur.t);
        dt = std::min(dt, next_snapshot - cur.t > 0 ? next_snapshot - cur.t : dt);

        SimState next;
        StepStats stats;
        try {
            next = step(cur, dt, op, params, controls.step, &stats);
        } catch (const StepFailureError&) {
            if (dt > 1.01 * controls.dt_floor) {
                dt_work = std::max(0.25 * dt, controls.dt_floor);
                continue;  // reject and retry
            }
            traj.status = SimStatus::StepFailure;
            note_snapshot(cur);
            return traj;
        }
        if (stats.inner_iterations > controls.step.fp_max_iter / 2) {
            dt_work = std::max(0.5 * dt, controls.dt_floor);
        } else if (stats.inner_iterations <= 6) {
            dt_work = std::min(1.25 * dt_work, controls.dt0);
        }
        ++traj.steps_taken;

        prev_t = cur.t;
        prev_invh = 1.0 / std::sqrt(cur.diagnostics.hardy_sq);
        cur = std::move(next);
        hardy_sq_cur = cur.diagnostics.hardy_sq;

        const double hardy_cur = std::sqrt(hardy_sq_cur);
        if (hardy_cur >= controls.blowup_factor * hardy0) {
            const double invh = 1.0 / hardy_cur;
            double t_est = cur.t;
            if (prev_invh > invh) {
                t_est = cur.t + invh * (cur.t - prev_t) / (prev_invh - invh);
            }
            traj.status = SimStatus::BlowUpDetected;
            traj.blowup_time_estimate = t_est;
            note_snapshot(cur);
            return traj;
        }

        if (cur.t >= next_snapshot - 1e-14) {
            note_snapshot(cur);
            while (next_snapshot <= cur.t + 1e-14) next_snapshot += controls.snapshot_interval;
        }
    }

    if (traj.states.back().t < cur.t) note_snapshot(cur);
    traj.status = SimStatus::Completed;
    return traj;
}

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::GlobalCaseA: return "GlobalCaseA";
        case VerdictKind::GlobalCaseB: return "GlobalCaseB";
        case VerdictKind::GlobalCaseC: return "GlobalCaseC";
        case VerdictKind::BlowUpNegativeEnergy: return "BlowUpNegativeEnergy";
        case VerdictKind::BlowUpAboveThreshold: return "BlowUpAboveThreshold";
        case VerdictKind::Undetermined: return "Undetermined";
    }
    return "?";
}

Verdict classify(const RadialField& u0, const ModelParams& params, const RieszOperator& op,
                 const GroundStateResult* gs) {
    if (!params.dynamics_ok) {
        throw std::invalid_argument("classify: parameters outside the dynamics regime");
    }
    Verdict v;
    const double d = params.d, alpha = params.alpha, p = params.p;
    const double p_crit = params.mass_critical_p();

    // case (a): pure parameter test
    const bool alpha_window = (alpha > d - 2.0) && (alpha < d);
    const bool p_below_crit = (p > 2.0) && (p < p_crit);
    v.witnesses.push_back({"alpha_window", alpha, d - 2.0, ">", alpha_window});
    v.witnesses.push_back({"p_vs_mass_critical", p, p_crit, "<", p_below_crit});
    if (alpha_window && p_below_crit) {
        v.kind = VerdictKind::GlobalCaseA;
        return v;
    }

    if (gs == nullptr) {
        throw std::invalid_argument(
            "classify: ground-state constants required outside the case (a) parameter range");
    }

    const double m = std::sqrt(mass(u0, params));
    const double h2 = hardy_seminorm_sq(u0, params);
    const double e = energy(u0, params, op);
    const double gamma0 = weighted_moment(u0, params);
    v.witnesses.push_back({"mass_u0", m, gs->m_gs, "<", m < gs->m_gs});
    v.witnesses.push_back({"gamma0_finite", gamma0, 0.0, ">=", std::isfinite(gamma0)});

    // case (b): mass-critical and subcritical mass
    if (params.mass_critical && m < gs->m_gs) {
        v.kind = VerdictKind::GlobalCaseB;
        return v;
    }

    // cases (c) and the threshold blow-up test need kappa
    const bool has_kappa = params.kappa.has_value();
    double e_lhs = 0.0, e_rhs = 0.0, h_lhs = 0.0, h_rhs = 0.0;
    bool energy_below = false, hardy_below = false, hardy_above = false;
    if (has_kappa) {
        const double kp = *params.kappa;
        e_lhs = e * std::pow(m, kp);
        e_rhs = gs->e_gs * std::pow(gs->m_gs, kp);
        h_lhs = h2 * std::pow(m, kp);
        h_rhs = gs->h_gs * gs->h_gs * std::pow(gs->m_gs, kp);
        energy_below = e_lhs < e_rhs;
        hardy_below = h_lhs < h_rhs;
        hardy_above = h_lhs > h_rhs;
        v.witnesses.push_back({"energy_threshold", e_lhs, e_rhs, "<", energy_below});
        v.witnesses.push_back({"hardy_threshold", h_lhs, h_rhs, "<", hardy_below});
    }

    if (has_kappa && p > std::max(2.0, p_crit) && p < params.p_high() && energy_below &&
        hardy_below) {
        v.kind = VerdictKind::GlobalCaseC;
        return v;
    }

    // blow-up branch: mass-critical or supercritical p, finite variance
    const bool p_blowup_range = (params.mass_critical || p > p_crit) && p < params.p_high();
    v.witnesses.push_back({"energy_u0", e, 0.0, "<", e < 0.0});
    if (p_blowup_range && std::isfinite(gamma0)) {
        if (e < 0.0) {
            v.kind = VerdictKind::BlowUpNegativeEnergy;
            return v;
        }
        if (has_kappa && energy_below && hardy_above) {
            v.kind = VerdictKind::BlowUpAboveThreshold;
            return v;
        }
    }

    v.kind = VerdictKind::Undetermined;
    return v;
}

double threshold_polynomial(double s, double sharp_c, const ModelParams& params) {
    const double pt = params.p * params.theta;
    return 0.5 * s - std::pow(s, pt) / (2.0 * params.p * std::pow(sharp_c, 2.0 * params.p));
}

double threshold_polynomial_smax(double sharp_c, const ModelParams& params) {
    const double pt = params.p * params.theta;
    if (!(pt > 1.0)) {
        throw std::invalid_argument("threshold_polynomial_smax: requires p theta > 1");
    }
    return std::pow(std::pow(sharp_c, 2.0 * params.p) / params.theta, 1.0 / (pt - 1.0));
}

ConservationReport conservation_report(const Trajectory& traj) {
    if (traj.states.size() < 2) {
        throw std::invalid_argument("conservation_report: need at least two snapshots");
    }
    const double mass0 = traj.states.front().diagnostics.mass;
    const double energy0 = traj.states.front().diagnostics.energy;
    ConservationReport rep{0.0, 0.0};
    for (const SimState& s : traj.states) {
        rep.mass_drift = std::max(rep.mass_drift, std::abs(s.diagnostics.mass - mass0) /
                                                      std::abs(mass0));
        rep.energy_drift =
            std::max(rep.energy_drift, std::abs(s.diagnostics.energy - energy0) /
                                           std::max(std::abs(energy0), 1e-14));
    }
    return rep;
}

} // namespace hcnls
