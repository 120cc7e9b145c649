#pragma once

#include "forcycle/cylinder_map.hpp"
#include "forcycle/diagram.hpp"
#include "forcycle/params.hpp"
#include "forcycle/tolerances.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace forcycle {

// ---------------------------------------------------------------------------
// Fixed-point classification
// ---------------------------------------------------------------------------

enum class StabilityClass { attracting, saddle, repelling, nonhyperbolic };

std::string to_string(StabilityClass c);

/// A fixed point of G_tau (a diagram point), with its spectrum.
struct FixedPointInfo {
    double tau = 0.0;
    double s = 0.0;
    std::complex<double> lambda1; // |lambda1| <= |lambda2|
    std::complex<double> lambda2;
    StabilityClass cls = StabilityClass::nonhyperbolic;
    double det = 0.0;
    double trace = 0.0;
};

/// Classify the diagram point (tau, s) through the eigenvalues of the
/// Jacobian. Throws NotFixedPointError when |g(tau, s)| exceeds the
/// residual tolerance.
FixedPointInfo classify_fixed_point(const MapParams& mp, double tau, double s,
                                    const ToleranceConfig& tol = default_tolerances());

/// Stability classes of the two branches emerging from a fold, sampled
/// at radial displacement `window` on the side where the branches exist.
struct FoldBranchStability {
    StabilityClass branch_larger_s = StabilityClass::nonhyperbolic;
    StabilityClass branch_smaller_s = StabilityClass::nonhyperbolic;
    FixedPointInfo larger;
    FixedPointInfo smaller;
};

FoldBranchStability fold_branch_stability(const MapParams& mp, const FoldPoint& fold,
                                          double window = 1e-3,
                                          const ToleranceConfig& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Codimension-two points (double eigenvalue 1)
// ---------------------------------------------------------------------------

/// A fold point carrying 1 as a double eigenvalue of the Jacobian,
/// with a lower-triangular, non-identity matrix: the organizing center
/// for the nearby fold/Hopf/tangency structure.
struct BTPoint {
    double tau = 0.0;   // = tau_m(delta)
    double s_star = 0.0;
    int eps = +1;
    double gamma = 0.0; // = M_F(delta)/(1 + eps k)
    double delta = 0.0;
    double k = 0.0;
    double residual = 0.0; // |lambda_2 - 1|
};

/// The admissible double-eigenvalue points at (delta, k): the eps=+1
/// point always, the eps=-1 point exactly when 0 < k < 1. K enters only
/// the certification of the Jacobian shape (its off-diagonal entry
/// -1/(K tau) must be nonzero for every K > 0).
std::vector<BTPoint> find_bt_points(double delta, double k, double K = 1.0,
                                    const ToleranceConfig& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Hopf (Neimark-Sacker) locus
// ---------------------------------------------------------------------------

enum class HopfSide { super, sub, undetermined };

std::string to_string(HopfSide side);

struct HopfPoint {
    double tau = 0.0;
    double s = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double k = 0.0;
    double theta = 0.0; // eigenvalue angle in (0, pi)
    HopfSide side = HopfSide::undetermined;
    double det = 0.0;
    double trace = 0.0;
};

struct HopfFailure {
    double tau = 0.0;
    int eps = 0;
    std::string reason;
};

struct HopfLocus {
    std::vector<HopfPoint> points;
    std::vector<HopfFailure> failures;
};

struct HopfOptions {
    /// Estimate the bifurcation side by invariant-circle detection
    /// (costly; flip off for bulk identity checks).
    bool compute_side = true;
    /// Iteration budget for the circle detector; "undetermined" is
    /// reported when no circle is resolved within it.
    std::size_t max_circle_iters = 100000;
    /// Solutions are kept only when |trace| < 2 - trace_margin.
    double trace_margin = 1e-9;
    ToleranceConfig tol = default_tolerances();
};

/// For each tau in the grid, solve {g = 0, det DG_tau = 1} for (s, gamma)
/// by damped Newton seeded beside each admissible fold phase on the
/// cos s > 0 side. Non-convergent entries are reported per point.
HopfLocus solve_hopf_locus(double delta, double k, double K,
                           const std::vector<double>& tau_grid,
                           const HopfOptions& opts = HopfOptions{});

// ---------------------------------------------------------------------------
// Inverse map and invariant manifolds
// ---------------------------------------------------------------------------

/// Solve G_tau(q) = target by damped 2D Newton with the analytic
/// Jacobian (tolerance tol.newton, at most 50 iterations).
CylinderPoint inverse_G_tau(const MapParams& mp, double tau, const CylinderPoint& target,
                            const CylinderPoint& guess,
                            const ToleranceConfig& tol = default_tolerances());

enum class ManifoldBranch { unstable_plus, unstable_minus, stable_plus, stable_minus };

std::string to_string(ManifoldBranch b);

struct ManifoldTrace {
    FixedPointInfo saddle;
    ManifoldBranch branch = ManifoldBranch::unstable_plus;
    std::vector<CylinderPoint> points;
    /// Signed-distance proxy between this trace and the opposite-type
    /// traces (unstable vs stable); a sign change along the trace marks
    /// a detected transverse crossing.
    double min_crossing_gap = 0.0;
    bool sign_change = false;
    /// Set when the branch stopped early (left y in (1e-9, 1], radial
    /// image failure, or inverse-map divergence).
    bool truncated = false;
};

struct ManifoldOptions {
    double seed_distance = 1e-6;
    /// Sub-seeds per fundamental segment along the eigenvector.
    std::size_t points_per_segment = 16;
    double y_min = 1e-9;
    /// Chart radius around the saddle excluded from the crossing indicator:
    /// all four branches meet at the saddle, so gaps measured inside this
    /// ball are trivially small and carry no homoclinic information. With a
    /// straight-line local picture the reported gap scales like this radius
    /// times the angle between the eigenvectors; genuinely close passes and
    /// sign changes beat that reference scale.
    double crossing_exclusion = 1e-5;
    ToleranceConfig tol = default_tolerances();
};

/// Trace the four invariant-manifold branches of a saddle fixed point of
/// G_tau: forward iteration for the unstable pair, inverse-map Newton
/// for the stable pair. Throws NotSaddleError unless saddle.cls is
/// saddle.
std::vector<ManifoldTrace>
trace_invariant_manifolds(const MapParams& mp, double tau, const FixedPointInfo& saddle,
                          std::size_t steps,
                          const ManifoldOptions& opts = ManifoldOptions{});

} // namespace forcycle
