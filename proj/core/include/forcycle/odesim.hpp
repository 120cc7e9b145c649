#pragma once

#include "forcycle/params.hpp"
#include "forcycle/tolerances.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace forcycle {

/// A phase-space point of the forced flow, carrying its time (the
/// forcing phase is s = 2 omega t).
struct State3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;
};

/// The right-hand side of the forced system: the forcing
/// gamma (1 - x) sin(2 omega t) enters the x-component only.
std::array<double, 3> vector_field(const ModelParams& mp, const State3& st);

/// Central-difference Jacobian of the vector field in the space
/// variables at fixed time.
std::array<std::array<double, 3>, 3>
fd_jacobian(const ModelParams& mp, const State3& st, double h = 1e-6);

struct Trajectory {
    std::vector<State3> samples; ///< the start state, requested times, final state
};

/// Adaptive 5(4) embedded Runge-Kutta integration from st0.t to t_end
/// with absolute/relative local error control at tol (tol must lie in
/// [1e-12, 1e-6]). Samples are emitted exactly at the requested times
/// (which must be nondecreasing and inside [st0.t, t_end]); the start
/// and final states are always included. Deterministic: identical
/// inputs give bitwise-identical output. Step-size underflow raises
/// ConvergenceError carrying the failing time.
Trajectory integrate(const ModelParams& mp, const State3& st0, double t_end,
                     double tol, const std::vector<double>& sample_times = {});

/// Flow st0 forward exactly n forcing periods n pi / omega.
State3 stroboscopic_map(const ModelParams& mp, const State3& st0, int n,
                        double tol = 1e-10);

/// A frequency-locked 1:n periodic orbit represented by its
/// stroboscopic samples. The period is exactly n pi / omega by
/// construction. `spectrum` holds the three multipliers of the n-step
/// stroboscopic map; `multipliers` are the two of largest modulus (the
/// transversal pair relevant for stability on the invariant sphere).
struct StroboOrbit {
    std::vector<State3> samples; ///< states at t = j pi/omega, j = 0..n
    int n = 1;
    std::array<std::complex<double>, 2> multipliers{};
    std::array<std::complex<double>, 3> spectrum{};
    double residual = 0.0;

    bool attracting() const;
};

/// Newton iteration (forward-difference Jacobian, step 1e-7) on the
/// n-step stroboscopic map from the time origin t = 0. Converged when
/// the return residual drops below 1e-8; ConvergenceError after 30
/// steps or when an iterate leaves |r - 1| < 0.5.
StroboOrbit find_locked_orbit(const ModelParams& mp, const State3& seed, int n,
                              double integ_tol = 1e-10);

} // namespace forcycle
