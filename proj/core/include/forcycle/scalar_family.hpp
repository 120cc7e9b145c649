#pragma once

#include "forcycle/tolerances.hpp"

namespace forcycle {

/// Golden ratio (1 + sqrt 5)/2: the delta threshold separating the
/// weakly attracting regime (delta < phi, bell-shaped level function)
/// from the strongly attracting one (delta > phi, monotone).
double golden_phi();

/// Guarded power base^expo computed as exp(expo * log(base)).
/// Bases below the tau floor (default 1e-12) are rejected: negative
/// exponents would overflow there and the reduction is only meaningful
/// on (0, 1] anyway.
double pow_pos(double base, double expo, double tau_floor = default_tolerances().tau_floor);

/// p(delta) = -delta^2 + delta + 1; vanishes exactly at the golden ratio.
double p_delta(double delta);

/// F_delta(tau) = tau^{p(delta)} - tau^{delta} on (0, 1]:
/// the level function whose graph against gamma(1 + k sin s) carves the
/// bifurcation diagram. Positive on (0,1), zero at tau = 1.
double F_delta(double delta, double tau);

/// d/dtau of F_delta.
double F_delta_prime(double delta, double tau);

/// Argmax of F_delta for 1 < delta < phi:
/// tau_m = (p(delta)/delta)^{1/(delta^2 - 1)}.
double tau_m(double delta);

/// Global maximum of F_delta for 1 < delta < phi:
/// M_F = (p/delta)^{p/(delta^2-1)} - (p/delta)^{delta/(delta^2-1)}.
double M_F(double delta);

/// Auxiliary function h_delta(y) = (y^{p(delta)} - delta^2 y^{delta}) /
/// (delta^2 - delta) on (0, 1]; h_delta(1) = -(1+delta)/delta and the
/// unique interior zero sits at y = delta^{2/(1-delta^2)}.
double h_delta(double delta, double y);

/// Closed form of the unique zero of h_delta: delta^{2/(1-delta^2)}.
double h_delta_zero(double delta);

} // namespace forcycle
