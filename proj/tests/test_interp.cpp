#include <doctest.h>

#include <cmath>

#include "hcnls/grid.hpp"
#include "hcnls/interp.hpp"

using namespace hcnls;

TEST_SUITE("interp") {

TEST_CASE("pchip reproduces smooth data to cubic accuracy and stays monotone") {
    auto g = make_grid(256, 10.0);
    std::vector<double> y(g->n);
    for (int j = 0; j < g->n; ++j) y[j] = std::exp(-g->nodes[j]);
    PchipInterpolant p(g->nodes, y);

    double max_err = 0.0;
    for (double r = 0.2; r < 9.5; r += 0.0173) {
        max_err = std::max(max_err, std::abs(p(r) - std::exp(-r)));
    }
    CHECK(max_err < 1e-5);

    // monotone data stays monotone between nodes
    double prev = p(0.05);
    for (double r = 0.06; r < 9.9; r += 0.003) {
        const double cur = p(r);
        CHECK(cur <= prev + 1e-14);
        prev = cur;
    }
}

TEST_CASE("exponential tail fit recovers (c, rate) of c r^{-1/2} e^{-r}") {
    auto g = make_grid(512, 30.0);
    const double c_true = 0.8421;
    std::vector<double> v(g->n);
    for (int j = 0; j < g->n; ++j) {
        v[j] = c_true * std::exp(-g->nodes[j]) / std::sqrt(g->nodes[j]);
    }
    auto fit = fit_exponential_tail(*g, v, 15.0, 22.5);
    REQUIRE(fit.ok);
    CHECK(std::abs(fit.slope) < 1e-12);
    CHECK(fit.c == doctest::Approx(c_true).epsilon(1e-10));

    ProfileExtender ext(*g, v);
    CHECK(ext(35.0) == doctest::Approx(c_true * std::exp(-35.0) / std::sqrt(35.0)).epsilon(1e-6));
    CHECK(ext(5.0) == doctest::Approx(v[0 * 0] * 0 + c_true * std::exp(-5.0) / std::sqrt(5.0))
                          .epsilon(1e-5));
}

TEST_CASE("tail fit reports failure on unusable data") {
    auto g = make_grid(64, 10.0);
    std::vector<double> v(g->n, 0.0);
    auto fit = fit_exponential_tail(*g, v, 5.0, 7.5);
    CHECK_FALSE(fit.ok);
}

} // TEST_SUITE
