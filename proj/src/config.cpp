#include "hcnls/config.hpp"

#include <fstream>

#include <json.hpp>

#include "hcnls/simd/kernels.hpp"

namespace hcnls {

using nlohmann::json;

namespace {

// every key consumed must be declared; leftovers are reported
void check_unknown(const json& obj, std::initializer_list<const char*> known,
                   const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
        throw ConfigError(where + ": missing required key '" + std::string(key) + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + ": key '" + std::string(key) + "' has the wrong type");
    }
}

template <typename T>
T optional_of(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + ": key '" + std::string(key) + "' has the wrong type");
    }
}

} // namespace

ModelParams RunConfig::make_model_params() const { return make_params(model.d, model.alpha, model.p); }

GridPtr RunConfig::make_model_grid() const { return make_grid(grid.n, grid.r_max, Grading{grid.grading}); }

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
    check_unknown(root, {"model", "grid", "solver", "dynamics", "outputs", "seed"}, origin);

    RunConfig cfg;

    if (!root.contains("model")) throw ConfigError(origin + ": missing required block 'model'");
    {
        const json& m = root["model"];
        check_unknown(m, {"d", "alpha", "p"}, origin + ".model");
        cfg.model.d = require<int>(m, "d", origin + ".model");
        cfg.model.alpha = require<double>(m, "alpha", origin + ".model");
        cfg.model.p = require<double>(m, "p", origin + ".model");
    }

    if (!root.contains("grid")) throw ConfigError(origin + ": missing required block 'grid'");
    {
        const json& g = root["grid"];
        check_unknown(g, {"n", "r_max", "grading"}, origin + ".grid");
        cfg.grid.n = require<int>(g, "n", origin + ".grid");
        cfg.grid.r_max = require<double>(g, "r_max", origin + ".grid");
        cfg.grid.grading = optional_of<double>(g, "grading", 1.0, origin + ".grid");
    }

    if (root.contains("solver")) {
        const json& s = root["solver"];
        check_unknown(s, {"tol", "max_iter", "polish", "init"}, origin + ".solver");
        cfg.solver.tol = optional_of<double>(s, "tol", cfg.solver.tol, origin + ".solver");
        cfg.solver.max_iter = optional_of<int>(s, "max_iter", cfg.solver.max_iter, origin + ".solver");
        cfg.solver.polish = optional_of<bool>(s, "polish", cfg.solver.polish, origin + ".solver");
        if (s.contains("init")) {
            const json& i = s["init"];
            check_unknown(i, {"type", "width", "amplitude"}, origin + ".solver.init");
            cfg.solver.init.type =
                optional_of<std::string>(i, "type", cfg.solver.init.type, origin + ".solver.init");
            cfg.solver.init.width =
                optional_of<double>(i, "width", cfg.solver.init.width, origin + ".solver.init");
            cfg.solver.init.amplitude = optional_of<double>(i, "amplitude", cfg.solver.init.amplitude,
                                                            origin + ".solver.init");
        }
    }

    if (root.contains("dynamics")) {
        const json& d = root["dynamics"];
        check_unknown(d, {"dt0", "t_end", "blowup_factor", "snapshot_interval"}, origin + ".dynamics");
        cfg.dynamics.dt0 = optional_of<double>(d, "dt0", cfg.dynamics.dt0, origin + ".dynamics");
        cfg.dynamics.t_end = optional_of<double>(d, "t_end", cfg.dynamics.t_end, origin + ".dynamics");
        cfg.dynamics.blowup_factor = optional_of<double>(d, "blowup_factor", cfg.dynamics.blowup_factor,
                                                         origin + ".dynamics");
        cfg.dynamics.snapshot_interval = optional_of<double>(
            d, "snapshot_interval", cfg.dynamics.snapshot_interval, origin + ".dynamics");
    }

    if (root.contains("outputs")) {
        const json& o = root["outputs"];
        check_unknown(o, {"directory", "format"}, origin + ".outputs");
        cfg.outputs.directory =
            optional_of<std::string>(o, "directory", cfg.outputs.directory, origin + ".outputs");
        cfg.outputs.format =
            optional_of<std::string>(o, "format", cfg.outputs.format, origin + ".outputs");
        if (cfg.outputs.format != "csv" && cfg.outputs.format != "json-lines") {
            throw ConfigError(origin + ".outputs: format must be 'csv' or 'json-lines'");
        }
    }

    cfg.seed = optional_of<std::uint64_t>(root, "seed", 0, origin);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text, path);
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    root["model"] = {{"d", cfg.model.d}, {"alpha", cfg.model.alpha}, {"p", cfg.model.p}};
    root["grid"] = {{"n", cfg.grid.n}, {"r_max", cfg.grid.r_max}, {"grading", cfg.grid.grading}};
    root["solver"] = {{"tol", cfg.solver.tol},
                      {"max_iter", cfg.solver.max_iter},
                      {"polish", cfg.solver.polish},
                      {"init",
                       {{"type", cfg.solver.init.type},
                        {"width", cfg.solver.init.width},
                        {"amplitude", cfg.solver.init.amplitude}}}};
    root["dynamics"] = {{"dt0", cfg.dynamics.dt0},
                        {"t_end", cfg.dynamics.t_end},
                        {"blowup_factor", cfg.dynamics.blowup_factor},
                        {"snapshot_interval", cfg.dynamics.snapshot_interval}};
    root["outputs"] = {{"directory", cfg.outputs.directory}, {"format", cfg.outputs.format}};
    root["seed"] = cfg.seed;
    return root.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& path, const RunConfig& cfg, const std::string& command,
                    std::uint64_t effective_seed) {
    json m;
    m["version"] = kVersion;
    m["command"] = command;
    m["config_hash"] = config_hash(cfg);
    m["seed"] = effective_seed;
    m["simd_backend"] = simd::active_backend();
    m["config"] = json::parse(serialize_config(cfg));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << m.dump(2) << "\n";
}

} // namespace hcnls
