#pragma once

#include "forcycle/cylinder_map.hpp"
#include "forcycle/params.hpp"
#include "forcycle/tolerances.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace forcycle {

// ---------------------------------------------------------------------------
// Fold points
// ---------------------------------------------------------------------------

enum class Criticality { supercritical, subcritical };

std::string to_string(Criticality c);

/// A fold of the diagram: a zero of g where dg/ds also vanishes. Folds
/// sit at phases s* with sin s* = eps (= +-1) and radial coordinates
/// solving F_delta(tau) = level with level = gamma (1 + eps k).
struct FoldPoint {
    double tau = 0.0;
    double s_star = 0.0; // pi/2 for eps=+1, 3*pi/2 for eps=-1
    int eps = +1;
    Criticality criticality = Criticality::supercritical;
    double level = 0.0; // gamma (1 + eps k)
};

// ---------------------------------------------------------------------------
// Curves and region labels
// ---------------------------------------------------------------------------

struct CurvePoint {
    double tau = 0.0;
    double s = 0.0;
};

/// A traced point index that coincides with a fold, with the index of
/// the fold in the owning Diagram's fold list.
struct CurveFoldRef {
    std::size_t point_index = 0;
    std::size_t fold_index = 0;
};

/// One connected component of the zero set of g, ordered along the
/// curve. winding counts net phase turns per traversal (0 or 1).
struct DiagramCurve {
    std::vector<CurvePoint> points;
    bool closed = false;
    int winding = 0;
    std::vector<CurveFoldRef> folds;
    bool touches_tau0 = false;
    bool touches_tau1 = false;
};

/// Open-region and transition tags of the (delta, gamma, k) parameter
/// space. Tags A/B/C apply for k > 1, W/X/Y/Z for 0 < k < 1, a/b/c for
/// k = 1, and the K0_* tags for the unforced-shape limit k = 0;
/// Gamma0_Circle is the unforced amplitude limit gamma = 0. Boundary
/// tags are returned only within the boundary tolerance of a threshold.
enum class RegionTag {
    A,
    B,
    C,
    W,
    X,
    Y,
    Z,
    K1_a,
    K1_b,
    K1_c,
    K0_NoZeros,
    K0_TwoCircles,
    K0_OneCircle,
    Gamma0_Circle,
    Boundary_AB,
    Boundary_WX,
    Boundary_XY,
    Boundary_ab,
    Boundary_K0,
    Boundary_DeltaPhi,
    // At the W|X threshold the nascent diagram is a single point; the
    // locus and the point-diagram carry the same tag.
    Boundary_XW_point = Boundary_WX,
};

std::string to_string(RegionTag tag);

struct RegionLabel {
    RegionTag tag = RegionTag::W;
    double delta = 0.0;
    double gamma = 0.0;
    double k = 0.0;
};

/// The traced zero set of g for one parameter triple.
struct Diagram {
    std::vector<DiagramCurve> curves;
    std::vector<FoldPoint> folds;
    RegionLabel region;
};

/// gamma thresholds of the region decomposition at fixed (delta, k):
/// gamma_plus = M_F/(1+k) always, gamma_minus = M_F/(1-k) for k < 1,
/// plus the golden-ratio wall.
struct TransitionThresholds {
    double gamma_plus = 0.0;
    std::optional<double> gamma_minus;
    double delta_phi = 0.0;
};

// ---------------------------------------------------------------------------
// Component intervals (shared by the tracer and the locking module)
// ---------------------------------------------------------------------------

/// A maximal tau-interval on which the diagram has points (i.e. where
/// gamma(1-k) <= F_delta(tau) <= gamma(1+k)). Endpoints are either fold
/// radii or the domain boundaries: lo == 0 marks a component running to
/// the tau -> 0 boundary, hi == 1 one reaching tau = 1.
struct ComponentInterval {
    double lo = 0.0;
    double hi = 1.0;
    std::optional<std::size_t> lo_fold; // index into the fold list
    std::optional<std::size_t> hi_fold;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Label a parameter triple with its open region or transition tag.
RegionLabel classify_region(double delta, double gamma, double k,
                            const ToleranceConfig& tol = default_tolerances());

/// All folds of the diagram: solves F_delta(tau) = gamma(1+k) (eps=+1)
/// and, for k < 1, F_delta(tau) = gamma(1-k) (eps=-1); for k = 1 the
/// zero-level fold at (tau, s) = (1, 3*pi/2) is appended analytically.
/// Requires gamma > 0 and k > 0. An unattained level contributes no
/// folds; a level attained only below the tau floor raises DomainError.
std::vector<FoldPoint> find_folds(const MapParams& mp,
                                  const ToleranceConfig& tol = default_tolerances());

/// Maximal tau-intervals carrying diagram points, with their generating
/// folds. Exact (solver-based), independent of any tracing grid.
/// Requires gamma > 0 and k > 0 (the generic tracer cases).
std::vector<ComponentInterval>
component_intervals(const MapParams& mp,
                    const ToleranceConfig& tol = default_tolerances());

/// Options for trace_diagram.
struct TraceOptions {
    /// Lower end of the geometric tau grid (clipped further down if a
    /// fold lies below it).
    double tau_min = 1e-6;
    /// Phase samples used for the horizontal-circle cases (k = 0 and
    /// gamma = 0).
    std::size_t n_phase = 256;
    ToleranceConfig tol = default_tolerances();
};

/// Trace the full zero set of g on a geometric tau grid of n_tau points,
/// assembling ordered curves with fold points inserted analytically.
/// The curve/fold counts are checked against the region taxonomy; an
/// unresolvable structure raises GridError.
Diagram trace_diagram(const MapParams& mp, std::size_t n_tau = 4096,
                      const TraceOptions& opts = TraceOptions{});

/// The gamma thresholds at fixed (delta, k); defined for delta below the
/// golden ratio (DomainError otherwise).
TransitionThresholds transition_thresholds(double delta, double k);

} // namespace forcycle
