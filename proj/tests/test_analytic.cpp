#include <doctest.h>

#include <cmath>
#include <random>

#include "hcnls/analytic.hpp"
#include "hcnls/dynamics.hpp"
#include "hcnls/functionals.hpp"

using namespace hcnls;

namespace {

struct McLab {
    ModelParams params;
    GridPtr grid;
    RieszOperator op;
    GroundStateResult gs;
    PseudoconformalSolution sol;  // T = lambda = 1
};

const McLab& mc_lab() {
    static McLab lab = [] {
        auto params = make_params(3, 2.0, 7.0 / 3.0);
        auto grid = make_grid(512, 20.0, Grading{2.0});
        auto op = build_riesz(params, grid);
        auto gs = compute_ground_state(params, grid, op, {});
        auto sol = make_pseudoconformal(params, gs.q, 1.0, 1.0, 0.0);
        return McLab{params, grid, std::move(op), std::move(gs), std::move(sol)};
    }();
    return lab;
}

} // namespace

TEST_SUITE("analytic") {

TEST_CASE("construction guards") {
    const McLab& l = mc_lab();
    CHECK_THROWS_AS(make_pseudoconformal(make_params(3, 2.0, 3.0), l.gs.q, 1.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_pseudoconformal(l.params, l.gs.q, -1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_pseudoconformal(l.sol, 1.0, l.grid), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_pseudoconformal(l.sol, -0.1, l.grid), std::invalid_argument);
}

TEST_CASE("at t = 0 with lambda = T the modulus is Q itself") {
    const McLab& l = mc_lab();
    auto u0 = evaluate_pseudoconformal(l.sol, 0.0, l.grid);
    for (int j = 0; j < l.grid->n; ++j) {
        CHECK(std::abs(u0.values[j]) ==
              doctest::Approx(l.gs.q.values[j].real()).epsilon(1e-10));
    }
}

TEST_CASE("mass stays at M_gs^2 along the flow") {
    const McLab& l = mc_lab();
    const double m2 = l.gs.m_gs * l.gs.m_gs;
    for (double t : {0.0, 0.25, 0.5, 0.75}) {
        auto ut = evaluate_pseudoconformal(l.sol, t, l.grid);
        CHECK(mass(ut, l.params) == doctest::Approx(m2).epsilon(1e-6));
    }
}

TEST_CASE("kinetic expansion: ||sqrt(L)u||^2 = kappa^2 H_Q^2 + Gamma(t)/(4 tau^2)") {
    const McLab& l = mc_lab();
    for (double t : {0.0, 0.2, 0.4, 0.6, 0.75}) {
        const double tau = 1.0 - t;
        const double kappa = 1.0 / tau;
        auto ut = evaluate_pseudoconformal(l.sol, t, l.grid);
        const double direct = hardy_seminorm_sq(ut, l.params);
        const double gamma_t = weighted_moment(ut, l.params);
        const double expansion =
            kappa * kappa * l.gs.h_gs * l.gs.h_gs + gamma_t / (4.0 * tau * tau);
        CHECK(direct == doctest::Approx(expansion).epsilon(1e-3));
    }
}

TEST_CASE("variance law Gamma(t) = 8 E(u0) (T-t)^2") {
    const McLab& l = mc_lab();
    for (double t : {0.0, 0.25, 0.5, 0.75}) {
        auto d = minimal_mass_diagnostics(l.sol, t, l.params, l.op);
        CHECK(d.gamma_law_residual <= 1e-3);
        CHECK(d.mass == doctest::Approx(l.gs.m_gs * l.gs.m_gs).epsilon(1e-6));
    }
    // Gamma(t)/(T-t)^2 constant across [0, 0.9 T]
    const double base = minimal_mass_diagnostics(l.sol, 0.0, l.params, l.op).gamma_t;
    for (double t : {0.3, 0.6, 0.9}) {
        const double tau = 1.0 - t;
        auto d = minimal_mass_diagnostics(l.sol, t, l.params, l.op);
        CHECK(d.gamma_t / (tau * tau) == doctest::Approx(base).epsilon(1e-3));
    }
}

TEST_CASE("hardy_growth stabilizes toward lambda H_gs as t -> T") {
    // ||sqrt(L)u(t)|| tau = sqrt(lambda^2 H_Q^2 + tau^2 Gamma_Q/(4 lambda^2));
    // the quadratic-phase term Gamma(t)/(4 tau^2) = Gamma_Q/(4 lambda^2) is
    // constant, so the product converges to lambda H_gs
    const McLab& l = mc_lab();
    for (double t : {0.5, 0.9}) {
        const double tau = 1.0 - t;
        const double target =
            std::sqrt(l.gs.h_gs * l.gs.h_gs + tau * tau * l.sol.gamma_q / 4.0);
        auto d = minimal_mass_diagnostics(l.sol, t, l.params, l.op);
        CHECK(d.hardy_growth == doctest::Approx(target).epsilon(1e-3));
    }
    auto near = minimal_mass_diagnostics(l.sol, 0.98, l.params, l.op);
    CHECK(near.hardy_growth == doctest::Approx(l.gs.h_gs).epsilon(2e-3));
}

TEST_CASE("mass concentration in the unit ball") {
    const McLab& l = mc_lab();
    const double m2 = l.gs.m_gs * l.gs.m_gs;
    // full domain recovers the total mass
    CHECK(mass_concentration_profile(l.sol, 0.0, l.grid->r_max) ==
          doctest::Approx(m2).epsilon(1e-8));
    // near blow-up the unit ball captures (almost) everything
    CHECK(mass_concentration_profile(l.sol, 1.0 - 1e-3, 1.0) >= 0.99 * m2);
    // at t = 0 a small ball holds strictly less
    CHECK(mass_concentration_profile(l.sol, 0.0, 0.5) < 0.9 * m2);
    CHECK_THROWS_AS(mass_concentration_profile(l.sol, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("quadratic-phase resolution criterion") {
    const McLab& l = mc_lab();
    CHECK(pseudoconformal_resolved(l.sol, 0.5, *l.grid));
    auto coarse = make_grid(24, 20.0);
    CHECK_FALSE(pseudoconformal_resolved(l.sol, 1.0 - 2e-3, *coarse));
}

TEST_CASE("phase modulation energy expansion") {
    const McLab& l = mc_lab();
    auto phi = [](double r) { return 0.01 * r * r * std::exp(-r * r / 30.0); };

    // s = 0: both sides are E(v)
    auto v = RadialField::from_v(l.grid, [](double r) {
        return Complex{std::exp(-0.5 * r * r), 0.3 * r * std::exp(-r * r)};
    });
    auto r0 = phase_modulation_energy(v, phi, 0.0, l.params, l.op);
    CHECK(r0.lhs == r0.rhs);
    CHECK(r0.lhs == r0.base_energy);

    // real field: the linear term vanishes identically
    auto vr = RadialField::from_v(l.grid, [](double r) { return Complex{std::exp(-0.4 * r * r), 0.0}; });
    auto rr = phase_modulation_energy(vr, phi, 0.7, l.params, l.op);
    CHECK(rr.linear_term == 0.0);
    CHECK(rr.lhs - rr.base_energy ==
          doctest::Approx(0.5 * 0.49 * rr.quadratic_term).epsilon(1e-8));

    // complex field, both signs and magnitudes of s
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (double s : {-1.0, -0.1, 0.1, 1.0}) {
        auto vc = RadialField::from_v(l.grid, [&](double r) {
            return Complex{std::exp(-0.5 * r * r), 0.4 * U(rng) * std::exp(-0.3 * r * r)};
        });
        auto res = phase_modulation_energy(vc, phi, s, l.params, l.op);
        CHECK(std::abs(res.lhs - res.rhs) <= 1e-8 * (std::abs(res.lhs) + std::abs(res.rhs)));
    }
}

TEST_CASE("the imaginary-part bound holds on minimal-mass, nonnegative-energy fields") {
    const McLab& l = mc_lab();
    // zero-energy minimal-mass field: constant-phase dilate of Q
    RadialField v0 = l.gs.q;
    const Complex rot = std::polar(1.0, 0.9);
    for (auto& z : v0.values) z *= rot;
    auto phi = [](double r) { return 0.05 * r * r * std::exp(-r * r / 30.0); };
    auto res = phase_modulation_energy(v0, phi, 0.3, l.params, l.op);
    CHECK(res.cs_lhs <= res.cs_rhs + 1e-12);

    // positive-energy minimal-mass field: the pseudoconformal datum
    auto u0 = evaluate_pseudoconformal(l.sol, 0.0, l.grid);
    auto res2 = phase_modulation_energy(u0, phi, 0.3, l.params, l.op);
    CHECK(res2.base_energy > 0.0);
    CHECK(res2.cs_lhs <= res2.cs_rhs * (1.0 + 1e-10));
}

TEST_CASE("characterization roundtrip on constructed data") {
    const McLab& l = mc_lab();
    auto u0 = evaluate_pseudoconformal(l.sol, 0.0, l.grid);
    auto rep = characterization_roundtrip(u0, l.params, l.gs, 1.0, l.op);
    CHECK_FALSE(rep.degenerate);
    CHECK(std::abs(rep.energy_v0) <= 1e-4 * l.gs.h_gs * l.gs.h_gs);
    CHECK(rep.fitted_lambda == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(rep.profile_misfit < 1e-2);

    // Q itself carries no quadratic phase: zero-energy removal fails
    auto rep_q = characterization_roundtrip(l.gs.q, l.params, l.gs, 1.0, l.op);
    CHECK(rep_q.degenerate);

    // wrong mass is rejected
    RadialField off = u0;
    for (auto& z : off.values) z *= 1.01;
    CHECK_THROWS_AS(characterization_roundtrip(off, l.params, l.gs, 1.0, l.op),
                    std::invalid_argument);
}

TEST_CASE("scheme consistency on the exact solution") {
    const McLab& l = mc_lab();
    // evaluating at t+dt versus one step from t differs by O(dt^3) locally
    const double t = 0.3, dt = 2e-3;
    auto ut = evaluate_pseudoconformal(l.sol, t, l.grid);
    SimState s;
    s.t = t;
    s.field = ut;
    s.diagnostics = compute_diagnostics(ut, l.params, l.op);
    auto stepped = step(s, dt, l.op, l.params);
    auto exact = evaluate_pseudoconformal(l.sol, t + dt, l.grid);
    double err = 0.0, nrm = 0.0;
    for (int j = 0; j < l.grid->n; ++j) {
        err += l.grid->w_2[j] * std::norm(stepped.field.values[j] - exact.values[j]);
        nrm += l.grid->w_2[j] * std::norm(exact.values[j]);
    }
    // the one-step defect also carries the O(h^2) spatial defect of the profile
    CHECK(std::sqrt(err / nrm) < 5e-4);

    // pure time-discretization order: one step of dt against two of dt/2
    // cancels the spatial defect; the difference must fall ~8x per halving
    auto local_gap = [&](double step_dt) {
        auto one = step(s, step_dt, l.op, l.params);
        auto half = step(step(s, 0.5 * step_dt, l.op, l.params), 0.5 * step_dt, l.op, l.params);
        double e2 = 0.0;
        for (int j = 0; j < l.grid->n; ++j) {
            e2 += l.grid->w_2[j] * std::norm(one.field.values[j] - half.field.values[j]);
        }
        return std::sqrt(e2);
    };
    // probe above the stiff-mode round-off floor of the graded origin cells
    const double gap1 = local_gap(1.6e-2);
    const double gap2 = local_gap(8e-3);
    CHECK(gap1 / gap2 > 5.0);
    CHECK(gap1 / gap2 < 12.0);
}

} // TEST_SUITE
