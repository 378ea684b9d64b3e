#include <doctest.h>

#include <numbers>
#include <stdexcept>

#include "hcnls/params.hpp"

using namespace hcnls;

TEST_SUITE("params") {

TEST_CASE("mass-critical exponent: (3, 2, 7/3)") {
    auto m = make_params(3, 2.0, 7.0 / 3.0);
    CHECK(m.theta == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
    CHECK(m.p * m.theta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.mass_critical);
    CHECK(m.dynamics_ok);
}

TEST_CASE("(3, 2, 3) derived constants") {
    auto m = make_params(3, 2.0, 3.0);
    CHECK(m.mu0 == doctest::Approx(0.25).epsilon(1e-16));
    CHECK(m.theta == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    REQUIRE(m.kappa.has_value());
    CHECK(*m.kappa == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.regime == Regime::GroundStateRange);
    CHECK_FALSE(m.mass_critical);
}

TEST_CASE("d = 3, alpha = 2 normalization constants") {
    const double pi = std::numbers::pi;
    auto m = make_params(3, 2.0, 2.5);
    CHECK(m.riesz_const == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-14));
    CHECK(m.sphere_area == doctest::Approx(4.0 * pi).epsilon(1e-14));
}

TEST_CASE("regime boundaries") {
    CHECK(make_params(3, 2.0, 5.0).regime == Regime::ExcludedHigh);   // p = (d+alpha)/(d-2)
    CHECK(make_params(3, 2.0, 5.0 / 3.0).regime == Regime::ExcludedLow);  // p = (d+alpha)/d
    CHECK(make_params(3, 2.0, 6.0).regime == Regime::ExcludedHigh);
    CHECK(make_params(3, 2.0, 1.2).regime == Regime::ExcludedLow);
}

TEST_CASE("kappa defined exactly when dp-d-alpha-2 > 0") {
    CHECK_FALSE(make_params(3, 2.0, 7.0 / 3.0).kappa.has_value());  // denominator 0
    CHECK_FALSE(make_params(3, 2.0, 2.2).kappa.has_value());
    CHECK(make_params(3, 2.0, 2.5).kappa.has_value());
}

TEST_CASE("precondition diagnostics are distinct") {
    CHECK_THROWS_WITH_AS(make_params(2, 1.0, 2.0), doctest::Contains("dimension"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_params(3, 3.5, 2.0), doctest::Contains("alpha"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_params(3, -0.5, 2.0), doctest::Contains("alpha"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_params(3, 2.0, 1.0), doctest::Contains("exceed 1"),
                         std::invalid_argument);
}

TEST_CASE("theta lies in (0,1) across the ground-state range") {
    for (int d : {3, 4, 5}) {
        for (double alpha : {0.5, 1.0, 2.0, d - 0.5}) {
            auto lo = (d + alpha) / d, hi = (d + alpha) / (d - 2.0);
            for (double f : {0.05, 0.3, 0.7, 0.95}) {
                const double p = lo + f * (hi - lo);
                auto m = make_params(d, alpha, p);
                if (m.regime != Regime::GroundStateRange) continue;
                CHECK(m.theta > 0.0);
                CHECK(m.theta < 1.0);
            }
        }
    }
}

} // TEST_SUITE
