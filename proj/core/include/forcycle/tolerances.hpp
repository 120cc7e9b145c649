#pragma once

namespace forcycle {

/// Central numeric configuration. Every solver in the library reads its
/// tolerances from one of these records; the defaults below are used
/// whenever a caller does not pass an explicit configuration.
struct ToleranceConfig {
    /// Scalar root solves (fold locations, level crossings).
    double root = 1e-12;
    /// Margin used when comparing eigenvalue moduli against 1.
    double eigen = 1e-10;
    /// Step for finite-difference derivative checks and FD Jacobians.
    double fd_step = 1e-6;
    /// Newton convergence threshold (2D map solves, inverse map).
    double newton = 1e-12;
    /// Residual threshold for "this point is on the zero set /
    /// is a periodic orbit" acceptance tests.
    double residual = 1e-8;
    /// Relative tolerance for region-boundary detection in parameter
    /// space (gamma thresholds, golden-ratio wall).
    double boundary_rel = 1e-9;
    /// Smallest radial coordinate ever fed to a power evaluation.
    double tau_floor = 1e-12;
};

/// Shared default instance.
inline const ToleranceConfig& default_tolerances() {
    static const ToleranceConfig cfg{};
    return cfg;
}

} // namespace forcycle
