#include "forcycle/locking.hpp"

#include "forcycle/cylinder_map.hpp"
#include "forcycle/errors.hpp"
#include "forcycle/scalar_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace forcycle {

std::string to_string(WindowSource s) {
    return s == WindowSource::fold_interval ? "fold_interval" : "full_axis";
}

std::string to_string(StabilityNote n) {
    return n == StabilityNote::one_attracting_near_fold ? "one_attracting_near_fold"
                                                        : "unknown";
}

double tau_to_omega(double K, double tau, int n) {
    if (!(K > 0.0))
        throw DomainError("tau_to_omega: K must be positive");
    if (n < 1)
        throw DomainError("tau_to_omega: n must be a positive integer");
    if (!(tau > 0.0) || !(tau < 1.0))
        throw DomainError("tau_to_omega: tau must lie in (0, 1)");
    return -static_cast<double>(n) * K * M_PI / std::log(tau);
}

double omega_to_tau(double K, double omega, int n) {
    if (!(K > 0.0))
        throw DomainError("omega_to_tau: K must be positive");
    if (n < 1)
        throw DomainError("omega_to_tau: n must be a positive integer");
    if (!(omega > 0.0))
        throw DomainError("omega_to_tau: omega must be positive");
    return std::exp(-static_cast<double>(n) * K * M_PI / omega);
}

namespace {

/// True when the fold carries an attracting branch alongside the saddle
/// branch, i.e. when its non-unit eigenvalue lies inside the unit circle.
bool attracting_branch_at(const MapParams& mp, const FoldPoint& fold,
                          const ToleranceConfig& tol) {
    const double l2 = lambda2_at_fold(mp, fold.tau, fold.eps, tol);
    return l2 < 1.0 - tol.eigen;
}

} // namespace

std::vector<OmegaWindow> lock_windows(const MapParams& mp, int n_max,
                                      const ToleranceConfig& tol) {
    mp.validate();
    if (n_max < 1)
        throw DomainError("lock_windows: n_max must be a positive integer");

    std::vector<OmegaWindow> out;
    // gamma = 0 pins solutions to tau = 1 (omega -> infinity); k = 0 pins
    // them to whole circles at isolated radii, i.e. isolated omega values.
    // Neither yields an interval of frequencies.
    if (mp.gamma == 0.0 || mp.k == 0.0)
        return out;

    const std::vector<FoldPoint> folds = find_folds(mp, tol);
    const std::vector<ComponentInterval> intervals = component_intervals(mp, tol);

    struct BaseWindow {
        double lo, hi;
        WindowSource source;
        StabilityNote note;
    };
    std::vector<BaseWindow> base;
    for (const ComponentInterval& ci : intervals) {
        BaseWindow w;
        w.lo = ci.lo > 0.0 ? tau_to_omega(mp.K, ci.lo, 1) : 0.0;
        w.hi = ci.hi < 1.0 ? tau_to_omega(mp.K, ci.hi, 1)
                           : std::numeric_limits<double>::infinity();
        w.source = (ci.lo == 0.0 && ci.hi == 1.0) ? WindowSource::full_axis
                                                  : WindowSource::fold_interval;
        w.note = StabilityNote::unknown;
        for (const auto& fi : {ci.lo_fold, ci.hi_fold})
            if (fi && attracting_branch_at(mp, folds[*fi], tol))
                w.note = StabilityNote::one_attracting_near_fold;
        base.push_back(w);
    }
    std::sort(base.begin(), base.end(),
              [](const BaseWindow& a, const BaseWindow& b) { return a.lo < b.lo; });

    for (int n = 1; n <= n_max; ++n) {
        for (const BaseWindow& w : base) {
            OmegaWindow ow;
            ow.n = n;
            ow.omega_lo = static_cast<double>(n) * w.lo;
            ow.omega_hi = static_cast<double>(n) * w.hi;
            ow.source = w.source;
            ow.stability_note = w.note;
            out.push_back(ow);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Torus / chaos report
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

TorusChaosReport torus_and_chaos_report(double delta, double k,
                                        const ToleranceConfig& tol) {
    if (!(k > 0.0))
        throw DomainError("torus_and_chaos_report: k must be positive");
    const double mf = M_F(delta); // rejects delta outside (1, phi)

    TorusChaosReport rep;
    rep.delta = delta;
    rep.k = k;
    rep.gamma_plus = mf / (1.0 + k);
    if (k < 1.0)
        rep.gamma_minus = mf / (1.0 - k);
    rep.bt_points = find_bt_points(delta, k, 1.0, tol);

    if (k < 1.0) {
        rep.torus_candidates.push_back(
            {rep.gamma_plus, rep.gamma_plus,
             "gamma close to gamma_plus = " + fmt(rep.gamma_plus) +
                 " (X|Y threshold, both sides): invariant torus suspended from "
                 "the map's invariant circle"});
        rep.torus_candidates.push_back(
            {*rep.gamma_minus, *rep.gamma_minus,
             "gamma close to gamma_minus = " + fmt(*rep.gamma_minus) +
                 " (W|X threshold, region X side): invariant torus suspended "
                 "from the map's invariant circle"});
        rep.tangency_strips.push_back(
            {rep.gamma_plus, rep.gamma_plus,
             "strip near gamma_plus: homoclinic tangencies of the fold-branch "
             "saddle (suspended horseshoe)"});
        rep.tangency_strips.push_back(
            {*rep.gamma_minus, *rep.gamma_minus,
             "strip near gamma_minus: homoclinic tangencies of the fold-branch "
             "saddle (suspended horseshoe)"});
    } else if (k == 1.0) {
        rep.torus_candidates.push_back(
            {rep.gamma_plus, rep.gamma_plus,
             "gamma close to gamma_plus = " + fmt(rep.gamma_plus) +
                 " (a|b threshold): invariant torus suspended from the map's "
                 "invariant circle"});
        rep.tangency_strips.push_back(
            {rep.gamma_plus, rep.gamma_plus,
             "strip near gamma_plus: homoclinic tangencies of the fold-branch "
             "saddle (suspended horseshoe)"});
    } else {
        rep.torus_candidates.push_back(
            {0.0, rep.gamma_plus,
             "0 < gamma < gamma_plus = " + fmt(rep.gamma_plus) +
                 ": invariant torus suspended from the map's invariant circle"});
        rep.tangency_strips.push_back(
            {rep.gamma_plus, rep.gamma_plus,
             "strip near gamma_plus: homoclinic tangencies of the fold-branch "
             "saddle (suspended horseshoe)"});
    }

    rep.notes.push_back("The widths of the 'close to threshold' neighbourhoods are "
                        "not quantified by the theory; the anchors are exact.");
    rep.notes.push_back("Away from the listed ranges further bifurcations may exist "
                        "that this report does not detect.");
    rep.notes.push_back("The double-eigenvalue anchors are computed at K = 1; their "
                        "(gamma, tau) coordinates do not depend on K.");
    return rep;
}

std::string TorusChaosReport::to_text() const {
    std::ostringstream os;
    os << "Torus / chaos report for delta = " << fmt(delta) << ", k = " << fmt(k)
       << "\n";
    os << "  gamma_plus  = " << fmt(gamma_plus) << "\n";
    if (gamma_minus)
        os << "  gamma_minus = " << fmt(*gamma_minus) << "\n";
    os << "  double-eigenvalue anchors:\n";
    for (const BTPoint& bt : bt_points)
        os << "    eps = " << (bt.eps > 0 ? "+1" : "-1") << "  tau = " << fmt(bt.tau)
           << "  gamma = " << fmt(bt.gamma) << "  residual = " << fmt(bt.residual)
           << "\n";
    os << "  invariant-torus candidates:\n";
    for (const GammaRange& r : torus_candidates)
        os << "    [" << fmt(r.lo) << ", " << fmt(r.hi) << "]  " << r.description
           << "\n";
    os << "  tangency strips:\n";
    for (const GammaRange& r : tangency_strips)
        os << "    [" << fmt(r.lo) << ", " << fmt(r.hi) << "]  " << r.description
           << "\n";
    os << "  notes:\n";
    for (const std::string& n : notes)
        os << "    - " << n << "\n";
    return os.str();
}

} // namespace forcycle
