#pragma once

#include "forcycle/diagram.hpp"
#include "forcycle/params.hpp"
#include "forcycle/stability.hpp"
#include "forcycle/tolerances.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forcycle {

enum class WindowSource { fold_interval, full_axis };
enum class StabilityNote { one_attracting_near_fold, unknown };

std::string to_string(WindowSource s);
std::string to_string(StabilityNote n);

/// A 1:n frequency-locking interval in the forcing frequency omega: for
/// omega inside the window the map has a fixed (period-n) point, i.e.
/// the flow has a periodic solution of period n pi / omega.
///
/// omega_lo is the infimum of the window; the sentinel value 0 marks a
/// window whose tau-extent reaches the tau -> 0 boundary (the infimum is
/// open and not itself attained). omega_hi is +infinity for windows
/// whose tau-extent reaches tau = 1.
struct OmegaWindow {
    int n = 1;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    WindowSource source = WindowSource::fold_interval;
    StabilityNote stability_note = StabilityNote::unknown;
};

/// The frequency at which a 1:n locked solution sits at radial
/// coordinate tau: omega = -n K pi / ln tau. Strictly increasing in tau
/// on (0, 1); DomainError outside (0, 1).
double tau_to_omega(double K, double tau, int n);

/// Inverse of tau_to_omega at fixed n: tau = exp(-n K pi / omega).
double omega_to_tau(double K, double omega, int n);

/// The 1:n locking windows for n = 1 .. n_max, obtained by mapping the
/// tau-extents of the diagram components through tau_to_omega. The
/// ratio-n window equals n times the ratio-1 window exactly. Empty for
/// region W, and likewise for gamma = 0 and for k = 0 (where locking
/// degenerates to isolated omega values, not intervals).
std::vector<OmegaWindow> lock_windows(const MapParams& mp, int n_max,
                                      const ToleranceConfig& tol = default_tolerances());

/// A gamma range with an attached plain-text meaning. lo == hi marks a
/// one-sided "close to the threshold" neighbourhood whose width the
/// theory does not quantify.
struct GammaRange {
    double lo = 0.0;
    double hi = 0.0;
    std::string description;
};

/// Qualitative predictions at fixed (delta, k) with delta below the
/// golden ratio: where invariant tori (from the map's invariant circle)
/// and homoclinic-tangency strips (suspended horseshoes) are expected,
/// anchored at the computed thresholds and double-eigenvalue points.
struct TorusChaosReport {
    double delta = 0.0;
    double k = 0.0;
    double gamma_plus = 0.0;
    std::optional<double> gamma_minus;
    std::vector<BTPoint> bt_points;
    std::vector<GammaRange> torus_candidates;
    std::vector<GammaRange> tangency_strips;
    std::vector<std::string> notes;

    std::string to_text() const;
};

/// Assemble the report; DomainError for delta outside (1, phi) or k <= 0.
TorusChaosReport torus_and_chaos_report(double delta, double k,
                                        const ToleranceConfig& tol = default_tolerances());

} // namespace forcycle
