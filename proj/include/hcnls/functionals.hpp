#pragma once

#include "hcnls/field.hpp"
#include "hcnls/params.hpp"

namespace hcnls {

struct RieszOperator;

// ||u||_{L^2}^2 = sphere_area * sum_j w2_j |v_j|^2
double mass(const RadialField& f, const ModelParams& params);

// ||sqrt(L_mu0) u||_{L^2}^2 = sphere_area * int |v'(r)|^2 r dr, evaluated as
// the (manifestly nonnegative) stiffness form of RadialLaplacian.
double hardy_seminorm_sq(const RadialField& f, const ModelParams& params);

// Gamma = int |x|^2 |u|^2 dx = sphere_area * sum_j w2_j r_j^2 |v_j|^2
double weighted_moment(const RadialField& f, const ModelParams& params);

// E(u) = 1/2 ||sqrt(L) u||^2 - G(u); requires a regime where the Choquard
// term is admissible (ground-state range or dynamics_ok). Defined in riesz.cpp.
double energy(const RadialField& f, const ModelParams& params, const RieszOperator& op);

// Fraction of the mass sitting in the outer shell [frac*r_max, r_max];
// the truncation / boundary-contamination proxy.
double tail_mass_fraction(const RadialField& f, double frac = 0.9);

} // namespace hcnls
