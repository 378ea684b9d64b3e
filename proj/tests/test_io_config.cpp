#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include <json.hpp>

#include "hcnls/config.hpp"
#include "hcnls/io.hpp"

using namespace hcnls;

namespace {

const char* kConfigText = R"({
  "model": {"d": 3, "alpha": 2.0, "p": 3.0},
  "grid": {"n": 256, "r_max": 25.0, "grading": 2.0},
  "solver": {"tol": 1e-10, "init": {"width": 1.2}},
  "dynamics": {"dt0": 0.002},
  "outputs": {"directory": "out", "format": "json-lines"},
  "seed": 99
})";

} // namespace

TEST_SUITE("io_config") {

TEST_CASE("field files round-trip to full precision") {
    auto params = make_params(3, 2.0, 3.0);
    auto grid = make_grid(128, 17.5, Grading{1.5});
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto f = RadialField::zeros(grid);
    for (auto& z : f.values) z = Complex{U(rng) * std::exp(U(rng)), U(rng) * 1e-12};

    const std::string path = "io_roundtrip_test.txt";
    write_field(path, f, params);
    auto back = read_field(path);
    std::remove(path.c_str());

    CHECK(back.params.d == 3);
    CHECK(back.params.alpha == 2.0);
    CHECK(*back.field.grid == *grid);
    for (int j = 0; j < grid->n; ++j) {
        CHECK(back.field.values[j].real() == f.values[j].real());  // bit-exact
        CHECK(back.field.values[j].imag() == f.values[j].imag());
    }
}

TEST_CASE("malformed datum files report the offending line") {
    const std::string path = "io_malformed_test.txt";
    {
        std::ofstream out(path);
        out << "# d=3 alpha=2 p=3 N=16 r_max=1 grading=1\n";
        out << "0.03125 1.0 0.0\n";
        out << "0.09375 not-a-number 0.0\n";
    }
    try {
        read_field(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "# d=3 alpha=2 N=16 r_max=1\n";  // p missing
    }
    CHECK_THROWS_WITH_AS(read_field(path), doctest::Contains("'p'"), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("config parses, serializes canonically and hashes deterministically") {
    auto cfg = parse_config(kConfigText);
    CHECK(cfg.model.d == 3);
    CHECK(cfg.grid.grading == 2.0);
    CHECK(cfg.solver.tol == 1e-10);
    CHECK(cfg.solver.init.width == 1.2);
    CHECK(cfg.solver.max_iter == 6000);  // default survives partial solver block
    CHECK(cfg.dynamics.dt0 == 0.002);
    CHECK(cfg.outputs.format == "json-lines");
    CHECK(cfg.seed == 99);

    auto cfg2 = parse_config(serialize_config(cfg));
    CHECK(serialize_config(cfg2) == serialize_config(cfg));
    CHECK(config_hash(cfg2) == config_hash(cfg));

    auto cfg3 = cfg;
    cfg3.seed = 100;
    CHECK(config_hash(cfg3) != config_hash(cfg));
}

TEST_CASE("config validation: unknown keys and missing blocks are named") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"model":{"d":3,"alpha":2,"p":3},"grid":{"n":64,"r_max":9},"turbo":1})"),
                         doctest::Contains("turbo"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"model":{"d":3,"alpha":2,"p":3}})"),
                         doctest::Contains("grid"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"model":{"d":3,"alpha":2},"grid":{"n":64,"r_max":9}})"),
                         doctest::Contains("'p'"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"model":{"d":3,"alpha":2,"p":3},"grid":{"n":64,"r_max":9,"warp":2}})"),
        doctest::Contains("warp"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(
            R"({"model":{"d":3,"alpha":2,"p":3},"grid":{"n":64,"r_max":9},"outputs":{"format":"xml"}})"),
        doctest::Contains("format"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("manifest carries hash, seed, version and backend") {
    auto cfg = parse_config(kConfigText);
    const std::string path = "manifest_test.json";
    write_manifest(path, cfg, "unit-test", 1234);
    std::ifstream in(path);
    nlohmann::json m = nlohmann::json::parse(in);
    std::remove(path.c_str());
    CHECK(m["config_hash"] == config_hash(cfg));
    CHECK(m["seed"] == 1234);
    CHECK(m["version"] == kVersion);
    CHECK(m.contains("simd_backend"));
    CHECK(m["config"]["grid"]["n"] == 256);
}

} // TEST_SUITE
