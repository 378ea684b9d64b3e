#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hcnls/field.hpp"
#include "hcnls/groundstate.hpp"
#include "hcnls/params.hpp"
#include "hcnls/riesz.hpp"

namespace hcnls {

struct Diagnostics {
    double mass = 0.0;
    double energy = 0.0;
    double hardy_sq = 0.0;
    double gamma = 0.0;
    double gamma_prime = 0.0;
    double gamma_second = 0.0;
};

Diagnostics compute_diagnostics(const RadialField& f, const ModelParams& params,
                                const RieszOperator& op);

struct SimState {
    double t = 0.0;
    RadialField field;
    double dt = 0.0;
    Diagnostics diagnostics;
};

struct StepFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepControls {
    double fp_tol = 1e-10;  // fixed-point tolerance on the midpoint nonlinearity
    int fp_max_iter = 25;
    bool nonlinear = true;  // false: free propagation (test hook)
};

struct StepStats {
    int inner_iterations = 0;
};

// One Crank-Nicolson step of i v_t = L v - (I_alpha*|u|^p)|u|^{p-2} v on the
// transformed field; the nonlinearity enters at the midpoint through a fixed
// point, so the step conserves mass exactly up to the fixed-point tolerance
// and is time-reversible (dt < 0 steps backwards). Throws StepFailureError
// when the inner iteration diverges; simulate() reacts by rejecting the step
// and retrying at a smaller dt.
SimState step(const SimState& state, double dt, const RieszOperator& op, const ModelParams& params,
              const StepControls& controls = {}, StepStats* stats = nullptr);

enum class SimStatus { Running, Completed, BlowUpDetected, StepFailure };

const char* to_string(SimStatus s);

struct Trajectory {
    std::vector<SimState> states;  // snapshots, strictly increasing times
    SimStatus status = SimStatus::Running;
    std::optional<double> blowup_time_estimate;
    double mass_drift = 0.0;    // max relative deviation from t = 0
    double energy_drift = 0.0;
    bool boundary_contaminated = false;  // outer-shell mass exceeded threshold
    long long steps_taken = 0;
};

struct SimControls {
    double dt0 = 1e-3;
    double t_end = 1.0;
    double blowup_factor = 1e3;       // fire when ||sqrt(L)u|| grows by this factor
    double snapshot_interval = 0.05;
    double cfl = 0.0;                 // dt = min(dt0, cfl/||sqrt(L)u||^2); 0 = auto
    double dt_floor = 1e-12;
    double boundary_threshold = 1e-8; // tail_mass_fraction trigger
    StepControls step;
};

// Adaptive Crank-Nicolson integration with conservation monitoring and
// blow-up detection. The blow-up time estimate extrapolates 1/||sqrt(L)u||
// linearly to zero from the last recorded slopes.
Trajectory simulate(const RadialField& u0, const ModelParams& params, const RieszOperator& op,
                    const SimControls& controls);

// (Gamma, Gamma', Gamma'') of the moment Gamma = ||x u||^2:
//   Gamma'  = 4 Im int bar u (x . grad u) dx = 4 A int Im(bar v v') r^2 dr
//   Gamma'' = 16 E(u) + 8 (d+alpha+2-dp) G(u)   (virial identity)
std::tuple<double, double, double> virial_diagnostics(const RadialField& f,
                                                      const ModelParams& params,
                                                      const RieszOperator& op);

enum class VerdictKind {
    GlobalCaseA,
    GlobalCaseB,
    GlobalCaseC,
    BlowUpNegativeEnergy,
    BlowUpAboveThreshold,
    Undetermined,
};

const char* to_string(VerdictKind k);

struct Witness {
    std::string name;
    double lhs;
    double rhs;
    std::string relation;  // "<", ">", "<=", ...
    bool holds;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Undetermined;
    std::vector<Witness> witnesses;
};

// Global-existence / blow-up classification. The ground-state constants are
// required for every branch except the pure parameter test (a); passing
// nullptr there throws.
Verdict classify(const RadialField& u0, const ModelParams& params, const RieszOperator& op,
                 const GroundStateResult* gs);

// Threshold polynomial P(s) = s/2 - s^{p theta}/(2p C^{2p}); its maximizer
// s* = (C^{2p}/theta)^{1/(p theta - 1)} coincides with H_gs^2 M_gs^kappa.
double threshold_polynomial(double s, double sharp_c, const ModelParams& params);
double threshold_polynomial_smax(double sharp_c, const ModelParams& params);

struct ConservationReport {
    double mass_drift;
    double energy_drift;
};

// Requires at least two snapshots.
ConservationReport conservation_report(const Trajectory& traj);

} // namespace hcnls
