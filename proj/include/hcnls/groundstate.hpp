#pragma once

#include <utility>

#include "hcnls/field.hpp"
#include "hcnls/grid.hpp"
#include "hcnls/params.hpp"
#include "hcnls/riesz.hpp"

namespace hcnls {

// W(u) = ||sqrt(L) u||^theta ||u||^{1-theta} / ||(I_alpha*|u|^p)|u|^p||^{1/2p};
// scale- and dilation-invariant, with infimum the sharp interpolation constant.
double weinstein_quotient(const RadialField& f, const ModelParams& params, const RieszOperator& op);

struct WeinsteinResult {
    RadialField u;     // positive descent limit, normalized to unit mass
    double sharp_c;    // W at the limit
    int iterations;
    bool converged;
    double grad_norm;  // dual norm of the log-quotient gradient at the limit
};

// Projected Sobolev-gradient descent on log W: Barzilai-Borwein steps with
// Armijo backtracking, positivity clamp and per-step renormalization to unit
// mass (the remaining dilation gauge is fixed in rescale_to_ground_state).
// Non-convergence is reported through converged=false on the best iterate.
WeinsteinResult minimize_weinstein(const ModelParams& params, GridPtr grid, const RieszOperator& op,
                                   const RadialField& init, double tol = 1e-8, int max_iter = 4000);

// Relative residual of the ground-state equation L v + v = N(v) in the
// transformed variable, measured in the w2-weighted norm.
double el_residual_norm(const RadialField& q, const ModelParams& params, const RieszOperator& op);

struct NewtonOptions {
    double tol = 1e-11;
    int max_iter = 40;
};

struct NewtonResult {
    RadialField q;
    double residual;
    int iterations;
    bool converged;
};

// Damped Newton iteration on the discrete ground-state equation (dense
// Jacobian, partial-pivot LU). Independent of the variational route.
NewtonResult newton_el_solve(const ModelParams& params, GridPtr grid, const RieszOperator& op,
                             const RadialField& init, const NewtonOptions& opts = {});

struct GroundStateResult {
    RadialField q;         // real positive ground-state profile (transformed)
    double sharp_c = 0.0;
    double m_gs = 0.0;     // ||Q||_{L^2}
    double h_gs = 0.0;     // ||sqrt(L) Q||_{L^2}
    double n_gs = 0.0;     // ||(I_alpha*Q^p) Q^p||_{L^1}
    double e_gs = 0.0;     // E(Q)
    double pohozaev_residual_1 = 0.0;
    double pohozaev_residual_2 = 0.0;
    double el_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool tail_extended = false;  // resampling reached past r_max
};

struct RescaleOptions {
    bool polish = true;       // short Newton correction after resampling
    double polish_tol = 1e-10;
    int polish_max_iter = 8;
};

// Maps the normalized minimizer to the ground state Q = nu1^{-1} u(./nu2)
// with nu1 = theta^{-alpha/(4(p-1))} (1-theta)^{(alpha+2)/(4(p-1))} C^{-p/(p-1)}
// and nu2 = sqrt((1-theta)/theta), resampling on the same grid (monotone cubic
// plus fitted exponential tail when the dilation leaves the grid).
GroundStateResult rescale_to_ground_state(const WeinsteinResult& min_result,
                                          const ModelParams& params, const RieszOperator& op,
                                          const RescaleOptions& opts = {});

// Relative residuals of
//   ||(I*|Q|^p)|Q|^p||_{L1} = 2p/(d+alpha-(d-2)p) ||Q||^2
//   ||sqrt(L) Q||^2        = (dp-d-alpha)/(d+alpha-(d-2)p) ||Q||^2
std::pair<double, double> pohozaev_check(const RadialField& q, const ModelParams& params,
                                         const RieszOperator& op);

Regime existence_classifier(const ModelParams& params);

struct AsymptoticsReport {
    double v0 = 0.0;             // extrapolated r^{(d-2)/2} Q at the origin
    double near_fit = 0.0;       // sup over the first node decade of |v - v0|/v0
    double far_rate = 0.0;       // residual log-slope of r^{(d-1)/2} e^r Q
    double far_prefactor = 0.0;  // fitted decay amplitude
    bool ok = false;
};

AsymptoticsReport asymptotics_report(const RadialField& q, const ModelParams& params);

struct ThresholdQuantities {
    double m_gs, h_gs, n_gs, e_gs;
};

// Closed forms pinned by the Pohozaev identities:
//   M_gs = theta^{-a} (1-theta)^{b}     C^{p/(p-1)}
//   H_gs = theta^{1/2-a} (1-theta)^{b-1/2} C^{p/(p-1)}
//   N_gs = M_gs^2 / (1-theta)
//   E_gs = H_gs^2/2 - N_gs/(2p)
// with a = (dp-d-alpha)/(4(p-1)), b = (dp-d-alpha-2)/(4(p-1)).
ThresholdQuantities threshold_quantities(double sharp_c, const ModelParams& params);

// Default initializer: v(r) = amplitude * exp(-(r/width)^2).
RadialField gaussian_init(GridPtr grid, double width = 1.5, double amplitude = 1.0);

struct GroundStateOptions {
    double tol = 1e-9;
    int max_iter = 6000;
    double init_width = 1.5;
    RescaleOptions rescale;
};

GroundStateResult compute_ground_state(const ModelParams& params, GridPtr grid,
                                       const RieszOperator& op,
                                       const GroundStateOptions& opts = {});

} // namespace hcnls
