#pragma once

#include "forcycle/errors.hpp"

#include <cmath>
#include <string>

namespace forcycle {

/// Parameters of the reduced cylinder map and of the associated family
/// of circle maps: saddle value delta, forcing amplitude gamma,
/// forcing-shape constant k, and the phase-drift constant K.
///
/// k is always a free input; it is never derived from the physical
/// (alpha, beta, omega) parameters.
struct MapParams {
    double delta = 2.0;
    double gamma = 0.0;
    double k = 0.0;
    double K = 1.0;

    MapParams() = default;
    MapParams(double delta_, double gamma_, double k_, double K_)
        : delta(delta_), gamma(gamma_), k(k_), K(K_) {
        validate();
    }

    void validate() const {
        if (!(delta > 1.0))
            throw DomainError("MapParams: delta must exceed 1 (got " + std::to_string(delta) + ")");
        if (!(gamma >= 0.0))
            throw DomainError("MapParams: gamma must be nonnegative");
        if (!(k >= 0.0))
            throw DomainError("MapParams: k must be nonnegative");
        if (!(K > 0.0))
            throw DomainError("MapParams: K must be positive");
    }
};

/// Physical parameters of the forced vector field. The forcing term is
/// gamma * (1 - x) * sin(2 * omega * t); the forcing period is pi/omega.
struct ModelParams {
    double alpha = 2.0;
    double beta = -0.5;
    double gamma = 0.0;
    double omega = 1.0;

    ModelParams() = default;
    ModelParams(double alpha_, double beta_, double gamma_, double omega_)
        : alpha(alpha_), beta(beta_), gamma(gamma_), omega(omega_) {
        validate();
    }

    void validate() const {
        if (!(alpha > 0.0))
            throw DomainError("ModelParams: alpha must be positive");
        if (!(beta < 0.0))
            throw DomainError("ModelParams: beta must be negative");
        if (!(std::abs(beta) < alpha))
            throw DomainError("ModelParams: |beta| must be smaller than alpha");
        if (!((alpha - beta) * (alpha - beta) < 4.0 * alpha))
            throw DomainError("ModelParams: (alpha - beta)^2 < 4*alpha required "
                              "for the return-map reduction");
        if (beta == alpha - 2.0)
            throw DomainError("ModelParams: beta == alpha - 2 is excluded "
                              "(degenerate radial eigenvalue)");
        if (!(gamma >= 0.0))
            throw DomainError("ModelParams: gamma must be nonnegative");
        if (!(omega > 0.0))
            throw DomainError("ModelParams: omega must be positive");
    }

    /// Saddle value delta = (alpha - beta)/(alpha + beta) > 1.
    double delta() const { return (alpha - beta) / (alpha + beta); }

    /// Phase-drift constant K = (alpha + beta)^2 / (2 alpha) > 0.
    double K() const { return (alpha + beta) * (alpha + beta) / (2.0 * alpha); }

    /// Forcing period pi/omega.
    double forcing_period() const { return M_PI / omega; }
};

/// Reduced-map parameters induced by physical parameters, with the
/// forcing-shape constant k supplied independently.
inline MapParams map_params_from(const ModelParams& mp, double k) {
    return MapParams(mp.delta(), mp.gamma, k, mp.K());
}

} // namespace forcycle
