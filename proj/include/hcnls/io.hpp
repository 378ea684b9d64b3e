#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hcnls/analytic.hpp"
#include "hcnls/dynamics.hpp"
#include "hcnls/field.hpp"
#include "hcnls/groundstate.hpp"
#include "hcnls/params.hpp"

namespace hcnls {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldFile {
    ModelParams params;
    RadialField field;
};

// Columnar text format: one header line
//   # d=.. alpha=.. p=.. N=.. r_max=.. grading=..
// then rows "r Re(v) Im(v)". All reals carry 17 significant digits, so a
// write/read round trip reproduces the samples bit-exactly.
void write_field(const std::string& path, const RadialField& f, const ModelParams& params);
FieldFile read_field(const std::string& path);

// Trajectory diagnostics stream: t,mass,energy,hardy_norm,gamma,gamma_prime,
// gamma_second,dt
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Minimal-mass verification table: t,mass,energy,gamma,gamma_law_residual,
// hardy_growth
struct BlowupRow {
    double t, mass, energy, gamma, gamma_law_residual, hardy_growth;
};
void write_blowup_csv(const std::string& path, const std::vector<BlowupRow>& rows);

void write_ground_state_doc(const std::string& path, const GroundStateResult& gs,
                            const ModelParams& params, const std::string& profile_path);

void write_verdict_doc(const std::string& path, const Verdict& verdict);
std::string format_verdict(const Verdict& verdict);

std::string format_double(double x);  // %.17g

} // namespace hcnls
