// Command-line front end: reproducible ground-state computation, radial
// simulation, classification, and the verification suites.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hcnls/analytic.hpp"
#include "hcnls/config.hpp"
#include "hcnls/dynamics.hpp"
#include "hcnls/functionals.hpp"
#include "hcnls/groundstate.hpp"
#include "hcnls/io.hpp"
#include "hcnls/verify.hpp"

namespace fs = std::filesystem;
using namespace hcnls;

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file (JSON)")->required();
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--out", args.out_dir, "override the output directory");
    cmd->add_option("--format", args.format, "output format: csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
}

struct Run {
    RunConfig cfg;
    std::uint64_t seed;
    std::string out_dir;
};

Run prepare(const CommonArgs& args, const std::string& command) {
    Run run;
    run.cfg = load_config(args.config_path);
    if (args.seed) run.cfg.seed = *args.seed;
    if (args.out_dir) run.cfg.outputs.directory = *args.out_dir;
    if (args.format) run.cfg.outputs.format = *args.format;
    run.seed = run.cfg.seed;
    run.out_dir = run.cfg.outputs.directory;
    fs::create_directories(run.out_dir);
    write_manifest(run.out_dir + "/manifest.json", run.cfg, command, run.seed);
    return run;
}

GroundStateResult solve_ground_state(const Run& run, const ModelParams& params, GridPtr grid,
                                     const RieszOperator& op) {
    GroundStateOptions opts;
    opts.tol = run.cfg.solver.tol;
    opts.max_iter = run.cfg.solver.max_iter;
    opts.init_width = run.cfg.solver.init.width;
    opts.rescale.polish = run.cfg.solver.polish;
    return compute_ground_state(params, grid, op, opts);
}

void write_trajectory_jsonl(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (const SimState& s : traj.states) {
        const Diagnostics& d = s.diagnostics;
        out << "{\"t\":" << format_double(s.t) << ",\"mass\":" << format_double(d.mass)
            << ",\"energy\":" << format_double(d.energy)
            << ",\"hardy_norm\":" << format_double(std::sqrt(d.hardy_sq))
            << ",\"gamma\":" << format_double(d.gamma)
            << ",\"gamma_prime\":" << format_double(d.gamma_prime)
            << ",\"gamma_second\":" << format_double(d.gamma_second)
            << ",\"dt\":" << format_double(s.dt) << "}\n";
    }
}

int cmd_ground_state(const CommonArgs& args) {
    Run run = prepare(args, "ground-state");
    auto params = run.cfg.make_model_params();
    if (params.regime != Regime::GroundStateRange) {
        std::cerr << "ground state excluded by Pohozaev identities: p = " << params.p
                  << " lies outside ((d+alpha)/d, (d+alpha)/(d-2)) = (" << params.p_low() << ", "
                  << params.p_high() << ")\n";
        return 1;
    }
    auto grid = run.cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    auto gs = solve_ground_state(run, params, grid, op);

    const std::string profile_path = run.out_dir + "/ground_state_profile.txt";
    write_field(profile_path, gs.q, params);
    write_ground_state_doc(run.out_dir + "/ground_state.txt", gs, params, profile_path);

    std::cout << "sharp_c = " << format_double(gs.sharp_c) << "\n"
              << "m_gs = " << format_double(gs.m_gs) << "\n"
              << "e_gs = " << format_double(gs.e_gs) << "\n"
              << "pohozaev_residuals = " << format_double(gs.pohozaev_residual_1) << ", "
              << format_double(gs.pohozaev_residual_2) << "\n"
              << "converged = " << (gs.converged ? "true" : "false") << "\n";
    return gs.converged ? 0 : 1;
}

RadialField make_datum(const Run& run, const ModelParams& params, GridPtr grid,
                       const RieszOperator& op, const std::string& datum_file,
                       const std::string& generator) {
    if (!datum_file.empty()) {
        FieldFile f = read_field(datum_file);
        if (f.params.d != params.d || f.params.alpha != params.alpha || f.params.p != params.p) {
            throw ConfigError("datum file parameters do not match the config model block");
        }
        if (!(*f.field.grid == *grid)) {
            throw ConfigError("datum file grid does not match the config grid block");
        }
        return f.field;
    }
    const InitDescriptor& init = run.cfg.solver.init;
    if (generator == "gaussian") {
        return gaussian_init(grid, init.width, init.amplitude);
    }
    if (generator == "pseudoconformal") {
        auto gs = solve_ground_state(run, params, grid, op);
        auto sol = make_pseudoconformal(params, gs.q, 1.0, 1.0, 0.0);
        return evaluate_pseudoconformal(sol, 0.0, grid);
    }
    if (generator == "scaled-ground-state") {
        auto gs = solve_ground_state(run, params, grid, op);
        RadialField f = gs.q;
        for (auto& z : f.values) z *= init.amplitude;
        return f;
    }
    throw ConfigError("unknown generator '" + generator +
                      "' (expected gaussian, pseudoconformal or scaled-ground-state)");
}

int cmd_simulate(const CommonArgs& args, const std::string& datum_file,
                 const std::string& generator) {
    Run run = prepare(args, "simulate");
    auto params = run.cfg.make_model_params();
    auto grid = run.cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    RadialField u0 = make_datum(run, params, grid, op, datum_file, generator);

    SimControls ctl;
    ctl.dt0 = run.cfg.dynamics.dt0;
    ctl.t_end = run.cfg.dynamics.t_end;
    ctl.blowup_factor = run.cfg.dynamics.blowup_factor;
    ctl.snapshot_interval = run.cfg.dynamics.snapshot_interval;
    auto traj = simulate(u0, params, op, ctl);

    if (run.cfg.outputs.format == "json-lines") {
        write_trajectory_jsonl(run.out_dir + "/trajectory.jsonl", traj);
    } else {
        write_trajectory_csv(run.out_dir + "/trajectory.csv", traj);
    }

    // final verdict comparison: criteria-based classification next to the
    // observed outcome
    std::optional<Verdict> verdict;
    try {
        const GroundStateResult* gs_ptr = nullptr;
        GroundStateResult gs;
        if (params.regime == Regime::GroundStateRange &&
            !(params.alpha > params.d - 2.0 && params.p > 2.0 &&
              params.p < params.mass_critical_p())) {
            gs = solve_ground_state(run, params, grid, op);
            gs_ptr = &gs;
        }
        verdict = classify(u0, params, op, gs_ptr);
    } catch (const std::exception& e) {
        std::cerr << "classification skipped: " << e.what() << "\n";
    }

    std::ofstream rep(run.out_dir + "/simulation.txt");
    rep << "status = " << to_string(traj.status) << "\n";
    rep << "steps = " << traj.steps_taken << "\n";
    rep << "mass_drift = " << format_double(traj.mass_drift) << "\n";
    rep << "energy_drift = " << format_double(traj.energy_drift) << "\n";
    rep << "boundary_contaminated = " << (traj.boundary_contaminated ? "true" : "false") << "\n";
    if (traj.blowup_time_estimate) {
        rep << "blowup_time_estimate = " << format_double(*traj.blowup_time_estimate) << "\n";
    }
    if (verdict) rep << format_verdict(*verdict);

    std::cout << "status = " << to_string(traj.status) << " (t = "
              << format_double(traj.states.back().t) << ", steps = " << traj.steps_taken << ")\n";
    if (traj.blowup_time_estimate) {
        std::cout << "blowup_time_estimate = " << format_double(*traj.blowup_time_estimate) << "\n";
    }
    return traj.status == SimStatus::StepFailure ? 1 : 0;
}

int cmd_classify(const CommonArgs& args, const std::string& datum_file,
                 const std::string& generator) {
    Run run = prepare(args, "classify");
    auto params = run.cfg.make_model_params();
    auto grid = run.cfg.make_model_grid();
    auto op = build_riesz(params, grid);
    RadialField u0 = make_datum(run, params, grid, op, datum_file, generator);

    const GroundStateResult* gs_ptr = nullptr;
    GroundStateResult gs;
    if (params.regime == Regime::GroundStateRange) {
        gs = solve_ground_state(run, params, grid, op);
        gs_ptr = &gs;
    }
    Verdict verdict = classify(u0, params, op, gs_ptr);
    std::cout << format_verdict(verdict);
    write_verdict_doc(run.out_dir + "/verdict.txt", verdict);
    return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& suite_name) {
    Run run = prepare(args, "verify " + suite_name);
    auto suite = parse_suite(suite_name);
    if (!suite) {
        throw ConfigError("unknown verify suite '" + suite_name +
                          "' (expected hgn, pohozaev, virial, blowup, phase or riesz)");
    }
    auto rows = run_verify_suite(*suite, run.cfg, run.seed, run.out_dir);
    bool all_pass = true;
    for (const CheckRow& r : rows) {
        std::printf("%-4s %-45s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial NLS laboratory: critical inverse-square potential with a Choquard "
                 "nonlinearity"};
    app.require_subcommand(1);

    CommonArgs gs_args, sim_args, cls_args, ver_args;
    std::string sim_datum, sim_generator = "gaussian";
    std::string cls_datum, cls_generator = "gaussian";
    std::string suite;

    auto* gs_cmd = app.add_subcommand("ground-state", "compute the ground state and its constants");
    add_common(gs_cmd, gs_args);

    auto* sim_cmd = app.add_subcommand("simulate", "integrate the radial Cauchy problem");
    add_common(sim_cmd, sim_args);
    sim_cmd->add_option("--datum", sim_datum, "initial datum file (columnar field format)");
    sim_cmd->add_option("--generator", sim_generator,
                        "datum generator: gaussian, pseudoconformal, scaled-ground-state");

    auto* cls_cmd = app.add_subcommand("classify", "global-existence / blow-up classification");
    add_common(cls_cmd, cls_args);
    cls_cmd->add_option("--datum", cls_datum, "initial datum file");
    cls_cmd->add_option("--generator", cls_generator, "datum generator");

    auto* ver_cmd = app.add_subcommand("verify", "run a named property suite");
    add_common(ver_cmd, ver_args);
    ver_cmd->add_option("--suite", suite, "hgn, pohozaev, virial, blowup, phase or riesz")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gs_cmd->parsed()) return cmd_ground_state(gs_args);
        if (sim_cmd->parsed()) return cmd_simulate(sim_args, sim_datum, sim_generator);
        if (cls_cmd->parsed()) return cmd_classify(cls_args, cls_datum, cls_generator);
        if (ver_cmd->parsed()) return cmd_verify(ver_args, suite);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
