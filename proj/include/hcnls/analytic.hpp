#pragma once

#include <functional>

#include "hcnls/field.hpp"
#include "hcnls/groundstate.hpp"
#include "hcnls/interp.hpp"
#include "hcnls/params.hpp"
#include "hcnls/riesz.hpp"

namespace hcnls {

// Exact minimal-mass blow-up solution at the mass-critical exponent:
//   u(t,x) = e^{i gamma} e^{i lambda^2/(T-t)} e^{-i |x|^2/(4(T-t))}
//            (lambda/(T-t))^{d/2} Q(lambda x / (T-t)).
// In the transformed variable the dilated modulus is kappa v_Q(kappa r) with
// kappa = lambda/(T-t), independent of d.
struct PseudoconformalSolution {
    ModelParams params;
    RadialField q_profile;  // real positive ground state on its own grid
    double t_blowup = 0.0;  // T
    double lambda = 0.0;
    double phase = 0.0;     // gamma

    ProfileExtender q_ext;  // v_Q with fitted exponential tail
    double mass_q = 0.0;    // ||Q||^2
    double gamma_q = 0.0;   // int |y|^2 Q^2 dy
};

// Requires the mass-critical exponent with d-2 < alpha < d, T > 0, lambda > 0.
PseudoconformalSolution make_pseudoconformal(const ModelParams& params, const RadialField& q,
                                             double t_blowup, double lambda, double phase);

// Samples u(t) on `grid`; rejects t outside [0, T).
RadialField evaluate_pseudoconformal(const PseudoconformalSolution& sol, double t, GridPtr grid);

// Quadratic-phase resolution criterion: the phase change per grid cell stays
// below pi/4 wherever the profile carries mass.
bool pseudoconformal_resolved(const PseudoconformalSolution& sol, double t, const RadialGrid& grid);

struct MinimalMassDiagnostics {
    double mass = 0.0;                // ||u(t)||^2
    double energy0 = 0.0;             // E(u(0)), directly evaluated
    double gamma_t = 0.0;             // Gamma(t)
    double gamma_law_residual = 0.0;  // |Gamma(t) - 8 E(u0) (T-t)^2| / Gamma(t)
    double hardy_growth = 0.0;        // ||sqrt(L) u(t)|| (T-t)
};

MinimalMassDiagnostics minimal_mass_diagnostics(const PseudoconformalSolution& sol, double t,
                                                const ModelParams& params,
                                                const RieszOperator& op);

// int_{B_rho} |u(t)|^2 dx, evaluated on the Q grid after the change of
// variables (plus the analytic tail integral beyond the stored profile), so
// arbitrarily concentrated times remain well defined.
double mass_concentration_profile(const PseudoconformalSolution& sol, double t, double rho);

struct PhaseModulationResult {
    double lhs = 0.0;             // E(v e^{is phi}) by direct evaluation
    double rhs = 0.0;             // E(v) + s B + s^2/2 C
    double base_energy = 0.0;     // E(v)
    double linear_term = 0.0;     // B = int grad phi . Im(bar v grad v) dx
    double quadratic_term = 0.0;  // C = int |grad phi|^2 |v|^2 dx
    double cs_lhs = 0.0;          // |B|
    double cs_rhs = 0.0;          // sqrt(2 max(E,0)) sqrt(C)
};

// Energy expansion under phase modulation. The linear and quadratic terms are
// discretized on the same edges as the kinetic form, so the expansion matches
// the direct evaluation up to O((s dphi_per_cell)^3).
PhaseModulationResult phase_modulation_energy(const RadialField& v,
                                              const std::function<double(double)>& phi, double s,
                                              const ModelParams& params, const RieszOperator& op);

struct RoundtripReport {
    double energy_v0 = 0.0;      // E(u0 e^{i|x|^2/(4 T_est)})
    double fitted_lambda = 0.0;  // lambda of the reconstructed profile
    double fitted_gamma = 0.0;
    double profile_misfit = 0.0;  // L^2 distance of |v0| to the fitted dilate of Q
    bool degenerate = false;      // quadratic-phase removal failed (no blow-up structure)
};

// Diagnostic reconstruction of minimal-mass blow-up data: removes the
// quadratic phase at the estimated blow-up time, checks that the remainder is
// a zero-energy dilate of Q, and reports the fitted modulation parameters.
// Rejects data whose mass differs from M_gs by more than 1e-3 relative.
RoundtripReport characterization_roundtrip(const RadialField& u0, const ModelParams& params,
                                           const GroundStateResult& gs, double t_est,
                                           const RieszOperator& op);

} // namespace hcnls
