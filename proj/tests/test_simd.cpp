#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "hcnls/simd/kernels.hpp"

using namespace hcnls;

namespace {

struct ScalarGuard {
    ScalarGuard() { simd::force_scalar(true); }
    ~ScalarGuard() { simd::force_scalar(false); }
};

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

} // namespace

TEST_SUITE("simd") {

TEST_CASE("dispatched kernels agree with the scalar reference") {
    std::mt19937_64 rng(12345);
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{5}, std::size_t{64},
                          std::size_t{1000}, std::size_t{4097}}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        auto w = random_vec(rng, n);
        std::vector<std::complex<double>> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = {a[i], b[i]};

        double dot_ref, wdot_ref, wns_ref;
        {
            ScalarGuard guard;
            dot_ref = simd::dot(a.data(), b.data(), n);
            wdot_ref = simd::weighted_dot(w.data(), a.data(), b.data(), n);
            wns_ref = simd::weighted_norm_sq(w.data(), v.data(), n);
        }
        const double tol = 1e-13 * (n + 1);
        CHECK(simd::dot(a.data(), b.data(), n) == doctest::Approx(dot_ref).epsilon(tol));
        CHECK(simd::weighted_dot(w.data(), a.data(), b.data(), n) ==
              doctest::Approx(wdot_ref).epsilon(tol));
        CHECK(simd::weighted_norm_sq(w.data(), v.data(), n) ==
              doctest::Approx(wns_ref).epsilon(tol));
    }
}

TEST_CASE("matvec agrees across backends") {
    std::mt19937_64 rng(777);
    const std::size_t rows = 37, cols = 53;
    auto k = random_vec(rng, rows * cols);
    auto x = random_vec(rng, cols);
    std::vector<double> y_ref(rows), y(rows);
    {
        ScalarGuard guard;
        simd::matvec(k.data(), rows, cols, x.data(), y_ref.data());
    }
    simd::matvec(k.data(), rows, cols, x.data(), y.data());
    for (std::size_t r = 0; r < rows; ++r) {
        CHECK(y[r] == doctest::Approx(y_ref[r]).epsilon(1e-12));
    }
}

TEST_CASE("backend reporting") {
    CHECK(simd::active_backend() != nullptr);
    simd::force_scalar(true);
    CHECK(std::string(simd::active_backend()) == "scalar");
    simd::force_scalar(false);
}

} // TEST_SUITE
