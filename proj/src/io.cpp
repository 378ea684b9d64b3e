#include "hcnls/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace hcnls {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_field(const std::string& path, const RadialField& f, const ModelParams& params) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field: cannot open " + path);
    const RadialGrid& g = *f.grid;
    out << "# d=" << params.d << " alpha=" << format_double(params.alpha)
        << " p=" << format_double(params.p) << " N=" << g.n
        << " r_max=" << format_double(g.r_max) << " grading=" << format_double(g.grading.power)
        << "\n";
    for (int j = 0; j < g.n; ++j) {
        out << format_double(g.nodes[j]) << ' ' << format_double(f.values[j].real()) << ' '
            << format_double(f.values[j].imag()) << "\n";
    }
}

FieldFile read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("read_field: cannot open " + path);

    std::string line;
    int lineno = 0;

    // header
    if (!std::getline(in, line)) throw ParseError(path + ":1: empty file");
    ++lineno;
    if (line.empty() || line[0] != '#') {
        throw ParseError(path + ":1: missing '# d=... alpha=...' header");
    }
    std::map<std::string, std::string> kv;
    {
        std::istringstream hs(line.substr(1));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) {
                throw ParseError(path + ":1: malformed header token '" + tok + "'");
            }
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    for (const char* key : {"d", "alpha", "p", "N", "r_max"}) {
        if (!kv.count(key)) {
            throw ParseError(path + ":1: header lacks key '" + std::string(key) + "'");
        }
    }

    FieldFile out{make_params(std::stoi(kv["d"]), std::stod(kv["alpha"]), std::stod(kv["p"])),
                  RadialField{}};
    Grading grading;
    if (kv.count("grading")) grading.power = std::stod(kv["grading"]);
    auto grid = make_grid(std::stoi(kv["N"]), std::stod(kv["r_max"]), grading);
    out.field = RadialField::zeros(grid);

    for (int j = 0; j < grid->n; ++j) {
        if (!std::getline(in, line)) {
            throw ParseError(path + ":" + std::to_string(lineno + 1) + ": expected " +
                             std::to_string(grid->n) + " rows, file ends after " +
                             std::to_string(j));
        }
        ++lineno;
        std::istringstream ls(line);
        double r, re, im;
        if (!(ls >> r >> re >> im)) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed row '" + line + "'");
        }
        if (std::abs(r - grid->nodes[j]) > 1e-12 * std::max(1.0, grid->nodes[j])) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": node does not match the declared grid");
        }
        out.field.values[j] = Complex{re, im};
    }
    return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    out << "t,mass,energy,hardy_norm,gamma,gamma_prime,gamma_second,dt\n";
    for (const SimState& s : traj.states) {
        const Diagnostics& d = s.diagnostics;
        out << format_double(s.t) << ',' << format_double(d.mass) << ',' << format_double(d.energy)
            << ',' << format_double(std::sqrt(d.hardy_sq)) << ',' << format_double(d.gamma) << ','
            << format_double(d.gamma_prime) << ',' << format_double(d.gamma_second) << ','
            << format_double(s.dt) << "\n";
    }
}

void write_blowup_csv(const std::string& path, const std::vector<BlowupRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_blowup_csv: cannot open " + path);
    out << "t,mass,energy,gamma,gamma_law_residual,hardy_growth\n";
    for (const BlowupRow& r : rows) {
        out << format_double(r.t) << ',' << format_double(r.mass) << ',' << format_double(r.energy)
            << ',' << format_double(r.gamma) << ',' << format_double(r.gamma_law_residual) << ','
            << format_double(r.hardy_growth) << "\n";
    }
}

void write_ground_state_doc(const std::string& path, const GroundStateResult& gs,
                            const ModelParams& params, const std::string& profile_path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ground_state_doc: cannot open " + path);
    const RadialGrid& g = *gs.q.grid;
    out << "d = " << params.d << "\n"
        << "alpha = " << format_double(params.alpha) << "\n"
        << "p = " << format_double(params.p) << "\n"
        << "theta = " << format_double(params.theta) << "\n"
        << "n = " << g.n << "\n"
        << "r_max = " << format_double(g.r_max) << "\n"
        << "grading = " << format_double(g.grading.power) << "\n"
        << "sharp_c = " << format_double(gs.sharp_c) << "\n"
        << "m_gs = " << format_double(gs.m_gs) << "\n"
        << "h_gs = " << format_double(gs.h_gs) << "\n"
        << "n_gs = " << format_double(gs.n_gs) << "\n"
        << "e_gs = " << format_double(gs.e_gs) << "\n"
        << "pohozaev_residual_1 = " << format_double(gs.pohozaev_residual_1) << "\n"
        << "pohozaev_residual_2 = " << format_double(gs.pohozaev_residual_2) << "\n"
        << "pohozaev_ratio_hardy = " << format_double(gs.h_gs * gs.h_gs / (gs.m_gs * gs.m_gs))
        << "\n"
        << "pohozaev_ratio_choquard = " << format_double(gs.n_gs / (gs.m_gs * gs.m_gs)) << "\n"
        << "el_residual = " << format_double(gs.el_residual) << "\n"
        << "iterations = " << gs.iterations << "\n"
        << "converged = " << (gs.converged ? "true" : "false") << "\n"
        << "tail_extended = " << (gs.tail_extended ? "true" : "false") << "\n"
        << "profile = " << profile_path << "\n";
}

std::string format_verdict(const Verdict& verdict) {
    std::ostringstream out;
    out << "verdict = " << to_string(verdict.kind) << "\n";
    for (const Witness& w : verdict.witnesses) {
        out << "witness " << w.name << ": " << format_double(w.lhs) << ' ' << w.relation << ' '
            << format_double(w.rhs) << " -> " << (w.holds ? "holds" : "fails") << "\n";
    }
    return out.str();
}

void write_verdict_doc(const std::string& path, const Verdict& verdict) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_verdict_doc: cannot open " + path);
    out << format_verdict(verdict);
}

} // namespace hcnls
