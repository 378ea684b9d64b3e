#include <doctest.h>

#include <cmath>
#include <random>

#include "hcnls/functionals.hpp"
#include "hcnls/groundstate.hpp"
#include "hcnls/interp.hpp"

using namespace hcnls;

namespace {

// Frozen reference values, established by the independent damped-Newton route
// at N in {1024, 2048} on origin-graded grids before the variational solver
// was trusted (stable to ~5e-6 under N-doubling):
//   (3, 2, 3):    C = 1.8375252, ||Q|| = 2.3180044
//   (3, 2, 7/3):  C = 1.9231383, ||Q|| = 4.3152851
constexpr double kC3 = 1.8375252;
constexpr double kM3 = 2.3180044;
constexpr double kC73 = 1.9231383;
constexpr double kM73 = 4.3152851;

struct Lab {
    ModelParams params;
    GridPtr grid;
    RieszOperator op;
    GroundStateResult gs;
};

const Lab& lab3() {
    static Lab lab = [] {
        auto params = make_params(3, 2.0, 3.0);
        auto grid = make_grid(512, 30.0, Grading{2.0});
        auto op = build_riesz(params, grid);
        auto gs = compute_ground_state(params, grid, op, {});
        return Lab{params, grid, std::move(op), std::move(gs)};
    }();
    return lab;
}

const Lab& lab73() {
    static Lab lab = [] {
        auto params = make_params(3, 2.0, 7.0 / 3.0);
        auto grid = make_grid(512, 30.0, Grading{2.0});
        auto op = build_riesz(params, grid);
        auto gs = compute_ground_state(params, grid, op, {});
        return Lab{params, grid, std::move(op), std::move(gs)};
    }();
    return lab;
}

} // namespace

TEST_SUITE("groundstate") {

TEST_CASE("sharp constant at (3,2,3) matches the Newton-route reference") {
    const Lab& l = lab3();
    CHECK(l.gs.converged);
    CHECK(l.gs.sharp_c == doctest::Approx(kC3).epsilon(1e-3));
    CHECK(l.gs.m_gs == doctest::Approx(kM3).epsilon(2e-3));
}

TEST_CASE("Pohozaev pinning at (3,2,3): ratios 2 and 3") {
    const Lab& l = lab3();
    const double h_ratio = l.gs.h_gs * l.gs.h_gs / (l.gs.m_gs * l.gs.m_gs);
    const double n_ratio = l.gs.n_gs / (l.gs.m_gs * l.gs.m_gs);
    CHECK(h_ratio == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(n_ratio == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(l.gs.pohozaev_residual_1 < 1e-3);
    CHECK(l.gs.pohozaev_residual_2 < 1e-3);
    CHECK(l.gs.el_residual < 1e-8);
}

TEST_CASE("sharp constant from the Q-norm relation") {
    // C = theta^{theta/2} (1-theta)^{1/(2p)-theta/2} ||Q||^{(p-1)/p}
    const Lab& l = lab3();
    const double th = l.params.theta, p = l.params.p;
    const double c_rel = std::pow(th, 0.5 * th) * std::pow(1.0 - th, 0.5 / p - 0.5 * th) *
                         std::pow(l.gs.m_gs, (p - 1.0) / p);
    CHECK(c_rel == doctest::Approx(l.gs.sharp_c).epsilon(1e-3));
}

TEST_CASE("closed-form threshold quantities match the direct norms") {
    const Lab& l = lab3();
    auto t = threshold_quantities(l.gs.sharp_c, l.params);
    CHECK(t.m_gs == doctest::Approx(l.gs.m_gs).epsilon(1e-3));
    CHECK(t.h_gs == doctest::Approx(l.gs.h_gs).epsilon(1e-3));
    CHECK(t.n_gs == doctest::Approx(l.gs.n_gs).epsilon(1e-3));
    CHECK(t.e_gs == doctest::Approx(l.gs.e_gs).epsilon(1e-3));
    // H_gs/M_gs = sqrt((dp-d-alpha)/(d+alpha-(d-2)p)) = sqrt(2) here
    CHECK(t.h_gs / t.m_gs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // N_gs = M_gs^2/(1-theta), forced by the first Pohozaev identity
    CHECK(t.n_gs == doctest::Approx(t.m_gs * t.m_gs / (1.0 - l.params.theta)).epsilon(1e-12));
}

TEST_CASE("mass-critical case: E_gs vanishes, bp1 relation for the constant") {
    const Lab& l = lab73();
    CHECK(l.gs.converged);
    CHECK(l.gs.sharp_c == doctest::Approx(kC73).epsilon(1e-3));
    CHECK(l.gs.m_gs == doctest::Approx(kM73).epsilon(2e-3));

    // direct energy of Q is zero up to discretization
    CHECK(std::abs(l.gs.e_gs) < 1e-4 * l.gs.h_gs * l.gs.h_gs);
    // closed-form E_gs is zero to round-off (p*theta = 1 exactly)
    auto t = threshold_quantities(l.gs.sharp_c, l.params);
    CHECK(std::abs(t.e_gs) < 1e-12 * t.h_gs * t.h_gs);

    // C = (d/(d+2+alpha))^{d/(2(d+2+alpha))} M_gs^{(2+alpha)/(d+2+alpha)}
    const double d = 3.0, alpha = 2.0;
    const double c_bp1 = std::pow(d / (d + 2.0 + alpha), 0.5 * d / (d + 2.0 + alpha)) *
                         std::pow(l.gs.m_gs, (2.0 + alpha) / (d + 2.0 + alpha));
    CHECK(c_bp1 == doctest::Approx(l.gs.sharp_c).epsilon(1e-3));
}

TEST_CASE("Weinstein quotient is invariant under paired amplitude/dilation rescaling") {
    const Lab& l = lab3();
    auto f = gaussian_init(l.grid, 1.3, 0.8);
    const double w0 = weinstein_quotient(f, l.params, l.op);
    for (auto [a, b] : {std::pair{2.0, 1.7}, std::pair{0.3, 0.5}}) {
        auto grid_b = make_grid(l.grid->n, l.grid->r_max / b, l.grid->grading);
        auto op_b = build_riesz(l.params, grid_b);
        RadialField fb = RadialField::zeros(grid_b);
        for (int j = 0; j < l.grid->n; ++j) fb.values[j] = a * b * f.values[j];
        CHECK(weinstein_quotient(fb, l.params, op_b) == doctest::Approx(w0).epsilon(1e-10));
    }
}

TEST_CASE("ground state initializer is a stationary point") {
    const Lab& l = lab3();
    auto res = minimize_weinstein(l.params, l.grid, l.op, l.gs.q, 1e-5, 100);
    CHECK(res.converged);
    CHECK(res.iterations <= 2);
    CHECK(res.sharp_c == doctest::Approx(l.gs.sharp_c).epsilon(1e-6));
}

TEST_CASE("minimizer preconditions") {
    const Lab& l = lab3();
    CHECK_THROWS_AS(minimize_weinstein(l.params, l.grid, l.op, RadialField::zeros(l.grid), 1e-8, 10),
                    std::runtime_error);
    auto bad_params = make_params(3, 2.0, 5.5);
    CHECK_THROWS_AS(minimize_weinstein(bad_params, l.grid, l.op, gaussian_init(l.grid), 1e-8, 10),
                    std::invalid_argument);
}

TEST_CASE("non-convergence is reported through the flag, not an exception") {
    const Lab& l = lab3();
    auto res = minimize_weinstein(l.params, l.grid, l.op, gaussian_init(l.grid, 3.0), 1e-14, 3);
    CHECK_FALSE(res.converged);
    CHECK(res.iterations <= 3);
    CHECK(res.sharp_c > 0.0);
}

TEST_CASE("solver independence: Newton and gradient-flow agree on the pinned scalars") {
    const Lab& l = lab3();
    NewtonOptions nopts;
    nopts.tol = 1e-11;
    auto newton = newton_el_solve(l.params, l.grid, l.op, gaussian_init(l.grid, 1.6, 1.2), nopts);
    REQUIRE(newton.converged);
    const double m_n = std::sqrt(mass(newton.q, l.params));
    const double h_n = std::sqrt(hardy_seminorm_sq(newton.q, l.params));
    const double n_n = choquard_norm(newton.q, l.params, l.op);
    CHECK(m_n == doctest::Approx(l.gs.m_gs).epsilon(1e-3));
    CHECK(h_n == doctest::Approx(l.gs.h_gs).epsilon(1e-3));
    CHECK(n_n == doctest::Approx(l.gs.n_gs).epsilon(1e-3));
}

TEST_CASE("profile is nonnegative and the physical field is nonincreasing") {
    const Lab& l = lab3();
    const auto& g = *l.grid;
    double prev = 1e300;
    for (int j = 0; j < g.n; ++j) {
        const double v = l.gs.q.values[j].real();
        CHECK(v >= -1e-14);
        const double u = v / std::sqrt(g.nodes[j]);
        CHECK(u <= prev + 1e-6);
        prev = u;
    }
}

TEST_CASE("HGN inequality holds for random trial fields") {
    const Lab& l = lab3();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a1 = 0.2 + U(rng), c1 = 3.0 * U(rng), w1 = 0.5 + 2.0 * U(rng);
        const double a2 = (U(rng) < 0.4 ? -0.4 : 0.6) * U(rng);
        auto f = RadialField::from_v(l.grid, [&](double r) {
            return Complex{a1 * std::exp(-(r - c1) * (r - c1) / (w1 * w1)) +
                               a2 * std::exp(-0.3 * r * r),
                           0.0};
        });
        double w;
        try {
            w = weinstein_quotient(f, l.params, l.op);
        } catch (const std::invalid_argument&) {
            continue;
        }
        CHECK(w >= l.gs.sharp_c * (1.0 - 1e-3));
    }
}

TEST_CASE("existence classifier matches the regime") {
    CHECK(existence_classifier(make_params(3, 2.0, 3.0)) == Regime::GroundStateRange);
    CHECK(existence_classifier(make_params(3, 2.0, 5.0 / 3.0)) == Regime::ExcludedLow);
    CHECK(existence_classifier(make_params(3, 2.0, 5.0)) == Regime::ExcludedHigh);
}

TEST_CASE("asymptotics report: positive origin limit and settled exponential tail") {
    const Lab& l = lab3();
    auto rep = asymptotics_report(l.gs.q, l.params);
    CHECK(rep.ok);
    CHECK(rep.v0 > 0.0);
    CHECK(std::abs(rep.far_rate) <= 0.01);
    CHECK(rep.far_prefactor > 0.0);
    CHECK(rep.near_fit < 0.15);

    // linearity of the origin limit
    RadialField doubled = l.gs.q;
    for (auto& z : doubled.values) z *= 2.0;
    auto rep2 = asymptotics_report(doubled, l.params);
    CHECK(rep2.v0 == doctest::Approx(2.0 * rep.v0).epsilon(1e-12));

    CHECK_THROWS_AS(asymptotics_report(l.gs.q, make_params(3, 2.0, 1.9)), std::invalid_argument);
}

TEST_CASE("threshold quantities reject theta outside (0,1)") {
    CHECK_THROWS_AS(threshold_quantities(1.0, make_params(3, 2.0, 5.0)), std::invalid_argument);
}

TEST_CASE("far-field prefactor is stable under domain enlargement") {
    const Lab& l = lab3();
    auto rep_small = asymptotics_report(l.gs.q, l.params);

    // same resolution, half again as much domain: the fitted decay amplitude
    // must agree within 5%
    auto grid_big = make_grid(768, 45.0, Grading{2.0});
    auto op_big = build_riesz(l.params, grid_big);
    auto gs_big = compute_ground_state(l.params, grid_big, op_big, {});
    REQUIRE(gs_big.converged);
    auto rep_big = asymptotics_report(gs_big.q, l.params);
    CHECK(rep_big.far_prefactor ==
          doctest::Approx(rep_small.far_prefactor).epsilon(0.05));
}

} // TEST_SUITE
