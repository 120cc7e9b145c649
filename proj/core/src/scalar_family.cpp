#include "forcycle/scalar_family.hpp"

#include "forcycle/errors.hpp"

#include <cmath>
#include <string>

namespace forcycle {

double golden_phi() {
    static const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    return phi;
}

double pow_pos(double base, double expo, double tau_floor) {
    if (!(base >= tau_floor))
        throw DomainError("pow_pos: base " + std::to_string(base) +
                          " below the floor " + std::to_string(tau_floor));
    if (expo == 0.0)
        return 1.0;
    return std::exp(expo * std::log(base));
}

double p_delta(double delta) {
    if (!(delta > 0.0))
        throw DomainError("p_delta: delta must be positive");
    return -delta * delta + delta + 1.0;
}

namespace {

void require_unit_interval(double tau, const char* fn) {
    if (!(tau > 0.0) || tau > 1.0)
        throw DomainError(std::string(fn) + ": argument " + std::to_string(tau) +
                          " outside (0, 1]");
}

void require_delta_gt1(double delta, const char* fn) {
    if (!(delta > 1.0))
        throw DomainError(std::string(fn) + ": delta must exceed 1");
}

void require_delta_below_phi(double delta, const char* fn) {
    require_delta_gt1(delta, fn);
    if (!(delta < golden_phi()))
        throw DomainError(std::string(fn) +
                          ": defined only for delta below the golden ratio "
                          "(the level function has no interior maximum otherwise)");
}

} // namespace

double F_delta(double delta, double tau) {
    require_delta_gt1(delta, "F_delta");
    require_unit_interval(tau, "F_delta");
    return pow_pos(tau, p_delta(delta)) - pow_pos(tau, delta);
}

double F_delta_prime(double delta, double tau) {
    require_delta_gt1(delta, "F_delta_prime");
    require_unit_interval(tau, "F_delta_prime");
    const double p = p_delta(delta);
    return p * pow_pos(tau, p - 1.0) - delta * pow_pos(tau, delta - 1.0);
}

double tau_m(double delta) {
    require_delta_below_phi(delta, "tau_m");
    const double p = p_delta(delta);
    return pow_pos(p / delta, 1.0 / (delta * delta - 1.0));
}

double M_F(double delta) {
    require_delta_below_phi(delta, "M_F");
    const double p = p_delta(delta);
    const double q = p / delta;
    const double d2m1 = delta * delta - 1.0;
    return pow_pos(q, p / d2m1) - pow_pos(q, delta / d2m1);
}

double h_delta(double delta, double y) {
    require_delta_gt1(delta, "h_delta");
    require_unit_interval(y, "h_delta");
    const double p = p_delta(delta);
    return (pow_pos(y, p) - delta * delta * pow_pos(y, delta)) /
           (delta * delta - delta);
}

double h_delta_zero(double delta) {
    require_delta_gt1(delta, "h_delta_zero");
    return pow_pos(delta, 2.0 / (1.0 - delta * delta));
}

} // namespace forcycle
