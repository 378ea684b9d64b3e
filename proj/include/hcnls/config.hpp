#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hcnls/grid.hpp"
#include "hcnls/params.hpp"

namespace hcnls {

inline constexpr const char* kVersion = "hcnls 0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InitDescriptor {
    std::string type = "gaussian";  // gaussian | pseudoconformal | scaled-ground-state
    double width = 1.5;
    double amplitude = 1.0;
};

struct RunConfig {
    struct Model {
        int d = 0;
        double alpha = 0.0;
        double p = 0.0;
    } model;  // required, no defaults

    struct Grid {
        int n = 0;
        double r_max = 0.0;
        double grading = 1.0;
    } grid;  // n and r_max required

    struct Solver {
        double tol = 1e-9;
        int max_iter = 6000;
        bool polish = true;
        InitDescriptor init;
    } solver;

    struct Dynamics {
        double dt0 = 1e-3;
        double t_end = 1.0;
        double blowup_factor = 1e3;
        double snapshot_interval = 0.05;
    } dynamics;

    struct Outputs {
        std::string directory = ".";
        std::string format = "csv";  // csv | json-lines
    } outputs;

    std::uint64_t seed = 0;

    ModelParams make_model_params() const;
    GridPtr make_model_grid() const;
};

// Strict parse: model and grid blocks are mandatory, unknown keys anywhere are
// errors, and every missing required key is named in the diagnostic. Solver
// and scheme knobs fall back to the defaults above (echoed by the manifest).
RunConfig parse_config(const std::string& json_text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

// Canonical serialized form; parse(serialize(cfg)) == cfg.
std::string serialize_config(const RunConfig& cfg);

// FNV-1a over the canonical form, as a hex string.
std::string config_hash(const RunConfig& cfg);

void write_manifest(const std::string& path, const RunConfig& cfg, const std::string& command,
                    std::uint64_t effective_seed);

} // namespace hcnls
