#include "forcycle/diagram.hpp"

#include "forcycle/errors.hpp"
#include "forcycle/roots.hpp"
#include "forcycle/scalar_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace forcycle {

std::string to_string(Criticality c) {
    return c == Criticality::supercritical ? "supercritical" : "subcritical";
}

std::string to_string(RegionTag tag) {
    switch (tag) {
        case RegionTag::A: return "A";
        case RegionTag::B: return "B";
        case RegionTag::C: return "C";
        case RegionTag::W: return "W";
        case RegionTag::X: return "X";
        case RegionTag::Y: return "Y";
        case RegionTag::Z: return "Z";
        case RegionTag::K1_a: return "a";
        case RegionTag::K1_b: return "b";
        case RegionTag::K1_c: return "c";
        case RegionTag::K0_NoZeros: return "K0_NoZeros";
        case RegionTag::K0_TwoCircles: return "K0_TwoCircles";
        case RegionTag::K0_OneCircle: return "K0_OneCircle";
        case RegionTag::Gamma0_Circle: return "Gamma0_Circle";
        case RegionTag::Boundary_AB: return "Boundary_AB";
        case RegionTag::Boundary_WX: return "Boundary_WX";
        case RegionTag::Boundary_XY: return "Boundary_XY";
        case RegionTag::Boundary_ab: return "Boundary_ab";
        case RegionTag::Boundary_K0: return "Boundary_K0";
        case RegionTag::Boundary_DeltaPhi: return "Boundary_DeltaPhi";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Region classification
// ---------------------------------------------------------------------------

namespace {

bool near_rel(double value, double threshold, double rel) {
    return std::abs(value - threshold) <= rel * std::abs(threshold);
}

} // namespace

RegionLabel classify_region(double delta, double gamma, double k,
                            const ToleranceConfig& tol) {
    if (!(delta > 1.0))
        throw DomainError("classify_region: delta must exceed 1");
    if (!(gamma >= 0.0) || !(k >= 0.0))
        throw DomainError("classify_region: gamma and k must be nonnegative");

    RegionLabel lbl;
    lbl.delta = delta;
    lbl.gamma = gamma;
    lbl.k = k;

    const double phi = golden_phi();
    if (std::abs(delta - phi) < tol.boundary_rel) {
        lbl.tag = RegionTag::Boundary_DeltaPhi;
        return lbl;
    }
    if (gamma == 0.0) {
        lbl.tag = RegionTag::Gamma0_Circle;
        return lbl;
    }
    const bool below_phi = delta < phi;

    if (k == 0.0) {
        if (!below_phi) {
            lbl.tag = RegionTag::K0_OneCircle;
        } else {
            const double mf = M_F(delta);
            if (near_rel(gamma, mf, tol.boundary_rel))
                lbl.tag = RegionTag::Boundary_K0;
            else
                lbl.tag = gamma < mf ? RegionTag::K0_TwoCircles : RegionTag::K0_NoZeros;
        }
        return lbl;
    }

    if (k == 1.0) {
        if (!below_phi) {
            lbl.tag = RegionTag::K1_c;
        } else {
            const double thr = M_F(delta) / 2.0;
            if (near_rel(gamma, thr, tol.boundary_rel))
                lbl.tag = RegionTag::Boundary_ab;
            else
                lbl.tag = gamma > thr ? RegionTag::K1_a : RegionTag::K1_b;
        }
        return lbl;
    }

    if (k > 1.0) {
        if (!below_phi) {
            lbl.tag = RegionTag::C;
        } else {
            const double gp = M_F(delta) / (1.0 + k);
            if (near_rel(gamma, gp, tol.boundary_rel))
                lbl.tag = RegionTag::Boundary_AB;
            else
                lbl.tag = gamma > gp ? RegionTag::A : RegionTag::B;
        }
        return lbl;
    }

    // 0 < k < 1
    if (!below_phi) {
        lbl.tag = RegionTag::Z;
    } else {
        const double mf = M_F(delta);
        const double gp = mf / (1.0 + k);
        const double gm = mf / (1.0 - k);
        if (near_rel(gamma, gm, tol.boundary_rel))
            lbl.tag = RegionTag::Boundary_WX;
        else if (near_rel(gamma, gp, tol.boundary_rel))
            lbl.tag = RegionTag::Boundary_XY;
        else if (gamma > gm)
            lbl.tag = RegionTag::W;
        else if (gamma > gp)
            lbl.tag = RegionTag::X;
        else
            lbl.tag = RegionTag::Y;
    }
    return lbl;
}

// ---------------------------------------------------------------------------
// Fold finding
// ---------------------------------------------------------------------------

namespace {

Criticality criticality_of(double delta, double tau, int eps) {
    const double fp = F_delta_prime(delta, tau);
    const bool sub = (eps == +1 && fp > 0.0) || (eps == -1 && fp < 0.0);
    return sub ? Criticality::subcritical : Criticality::supercritical;
}

/// Roots of F_delta(tau) = level on (tau_floor, 1], exploiting the
/// monotonicity structure of F_delta.
std::vector<double> level_roots(double delta, double level,
                                const ToleranceConfig& tol) {
    std::vector<double> roots;
    if (!(level > 0.0))
        return roots; // F_delta > 0 on (0,1); nonpositive levels are unattained

    const double floor_tau = tol.tau_floor;
    auto f = [&](double t) { return F_delta(delta, t) - level; };
    auto df = [&](double t) { return F_delta_prime(delta, t); };

    if (delta < golden_phi()) {
        const double tm = tau_m(delta);
        const double mf = M_F(delta);
        if (level > mf)
            return roots; // level above the global maximum: not attained
        const double f_floor = F_delta(delta, floor_tau) - level;
        // Ascending half (floor, tau_m].
        if (std::abs(level - mf) <= tol.root * std::max(1.0, mf)) {
            roots.push_back(tm); // tangent level: double root collapses to tau_m
            return roots;
        }
        if (f_floor > 0.0)
            throw DomainError("level_roots: the level " + std::to_string(level) +
                              " is attained only below the tau floor " +
                              std::to_string(floor_tau));
        roots.push_back(newton_bisect(f, df, floor_tau, tm, 1e-16));
        // Descending half [tau_m, 1]; F(1) = 0 < level <= M_F.
        roots.push_back(newton_bisect(f, df, tm, 1.0, 1e-16));
    } else {
        // Monotone decreasing from F(floor) to 0.
        const double f_floor = F_delta(delta, floor_tau) - level;
        if (f_floor < 0.0)
            throw DomainError("level_roots: the level " + std::to_string(level) +
                              " is attained only below the tau floor " +
                              std::to_string(floor_tau));
        roots.push_back(newton_bisect(f, df, floor_tau, 1.0, 1e-16));
    }
    return roots;
}

} // namespace

std::vector<FoldPoint> find_folds(const MapParams& mp, const ToleranceConfig& tol) {
    if (!(mp.gamma > 0.0))
        throw DomainError("find_folds: gamma must be positive");
    if (!(mp.k > 0.0))
        throw DomainError("find_folds: k must be positive");

    std::vector<FoldPoint> folds;
    auto add_level = [&](double level, int eps) {
        for (double r : level_roots(mp.delta, level, tol)) {
            FoldPoint f;
            f.tau = r;
            f.eps = eps;
            f.s_star = eps == +1 ? M_PI / 2.0 : 3.0 * M_PI / 2.0;
            f.criticality = criticality_of(mp.delta, r, eps);
            f.level = level;
            folds.push_back(f);
        }
    };

    add_level(mp.gamma * (1.0 + mp.k), +1);
    if (mp.k < 1.0)
        add_level(mp.gamma * (1.0 - mp.k), -1);
    if (mp.k == 1.0) {
        // The lower level gamma(1-k) degenerates to 0, attained exactly at
        // tau = 1 where the two phase branches merge at s = 3*pi/2.
        FoldPoint f;
        f.tau = 1.0;
        f.eps = -1;
        f.s_star = 3.0 * M_PI / 2.0;
        f.criticality = criticality_of(mp.delta, 1.0, -1); // F' (1) < 0: subcritical
        f.level = 0.0;
        folds.push_back(f);
    }

    std::sort(folds.begin(), folds.end(),
              [](const FoldPoint& a, const FoldPoint& b) { return a.tau < b.tau; });
    return folds;
}

// ---------------------------------------------------------------------------
// Component intervals
// ---------------------------------------------------------------------------

namespace {

bool interval_member(const MapParams& mp, double tau) {
    const double F = F_delta(mp.delta, tau);
    return F >= mp.gamma * (1.0 - mp.k) && F <= mp.gamma * (1.0 + mp.k);
}

std::vector<ComponentInterval>
intervals_from_folds(const MapParams& mp, const std::vector<FoldPoint>& folds,
                     const ToleranceConfig& tol) {
    // Breakpoints: fold radii strictly inside (0, 1), plus the two domain
    // boundaries. Between consecutive breakpoints membership is constant.
    std::vector<double> edges;
    edges.push_back(0.0);
    for (const FoldPoint& f : folds)
        if (f.tau < 1.0)
            edges.push_back(f.tau);
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());

    auto fold_index_at = [&](double tau) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < folds.size(); ++i)
            if (std::abs(folds[i].tau - tau) <= 4.0 * tol.root * std::max(1.0, tau))
                return i;
        return std::nullopt;
    };

    std::vector<ComponentInterval> out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        if (hi - lo <= 16.0 * tol.root)
            continue; // degenerate gap between coincident breakpoints
        const double mid = std::max(tol.tau_floor * 2.0, 0.5 * (lo + hi));
        if (!interval_member(mp, mid))
            continue;
        ComponentInterval ci;
        ci.lo = lo;
        ci.hi = hi;
        if (lo > 0.0) ci.lo_fold = fold_index_at(lo);
        ci.hi_fold = fold_index_at(hi); // catches the k = 1 fold at tau = 1 too
        out.push_back(ci);
    }
    return out;
}

} // namespace

std::vector<ComponentInterval> component_intervals(const MapParams& mp,
                                                   const ToleranceConfig& tol) {
    const std::vector<FoldPoint> folds = find_folds(mp, tol);
    return intervals_from_folds(mp, folds, tol);
}

// ---------------------------------------------------------------------------
// Tracing
// ---------------------------------------------------------------------------

namespace {

double clamp_unit(double u) { return std::clamp(u, -1.0, 1.0); }

double u_of(const MapParams& mp, double tau) {
    return (F_delta(mp.delta, tau) / mp.gamma - 1.0) / mp.k;
}

double s_upper(double u) { return wrap_2pi(M_PI - std::asin(clamp_unit(u))); }
double s_lower(double u) { return wrap_2pi(std::asin(clamp_unit(u))); }

/// One guarded Newton step in s to sharpen a slice solution.
double polish_in_s(const MapParams& mp, double tau, double s,
                   const ToleranceConfig& tol) {
    const Jet2 j = eval_g(mp, tau, s, tol);
    if (std::abs(j.d_ds) > 1e-8) {
        const double step = j.value / j.d_ds;
        if (std::abs(step) < 1e-3)
            return wrap_2pi(s - step);
    }
    return s;
}

int winding_of(const std::vector<CurvePoint>& pts, bool closed) {
    if (!closed || pts.size() < 2)
        return 0; // only closed curves have a well-defined turn count
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += circ_diff(pts[i + 1].s, pts[i].s);
    if (closed)
        total += circ_diff(pts.front().s, pts.back().s);
    return static_cast<int>(std::abs(std::lround(total / (2.0 * M_PI))));
}

/// Horizontal circle tau = c (the k = 0 and gamma = 0 limit shapes).
DiagramCurve horizontal_circle(double c, std::size_t n_phase) {
    DiagramCurve curve;
    curve.points.reserve(n_phase);
    for (std::size_t j = 0; j < n_phase; ++j)
        curve.points.push_back({c, 2.0 * M_PI * static_cast<double>(j) /
                                       static_cast<double>(n_phase)});
    curve.closed = true;
    curve.winding = 1;
    curve.touches_tau1 = (c == 1.0);
    return curve;
}

struct ExpectedRow {
    std::size_t n_curves;
    std::size_t n_folds;
    std::vector<std::pair<bool, int>> shapes; // (closed, winding) multiset
};

std::optional<ExpectedRow> expected_row(RegionTag tag) {
    using P = std::pair<bool, int>;
    switch (tag) {
        case RegionTag::A: return ExpectedRow{2, 0, {P{false, 0}, P{false, 0}}};
        case RegionTag::B: return ExpectedRow{2, 2, {P{false, 0}, P{false, 0}}};
        case RegionTag::C: return ExpectedRow{1, 1, {P{false, 0}}};
        case RegionTag::W: return ExpectedRow{0, 0, {}};
        case RegionTag::X: return ExpectedRow{1, 2, {P{true, 0}}};
        case RegionTag::Y: return ExpectedRow{2, 4, {P{true, 1}, P{true, 1}}};
        case RegionTag::Z: return ExpectedRow{1, 2, {P{true, 1}}};
        case RegionTag::K1_a: return ExpectedRow{1, 1, {P{false, 0}}};
        case RegionTag::K1_b: return ExpectedRow{2, 3, {P{false, 0}, P{true, 1}}};
        case RegionTag::K1_c: return ExpectedRow{1, 2, {P{true, 1}}};
        case RegionTag::K0_NoZeros: return ExpectedRow{0, 0, {}};
        case RegionTag::K0_TwoCircles:
            return ExpectedRow{2, 0, {P{true, 1}, P{true, 1}}};
        case RegionTag::K0_OneCircle: return ExpectedRow{1, 0, {P{true, 1}}};
        case RegionTag::Gamma0_Circle: return ExpectedRow{1, 0, {P{true, 1}}};
        default: return std::nullopt; // boundary tags carry no taxonomy row
    }
}

void verify_against_row(const Diagram& dia) {
    const auto row = expected_row(dia.region.tag);
    if (!row)
        return;
    std::ostringstream oss;
    bool ok = dia.curves.size() == row->n_curves && dia.folds.size() == row->n_folds;
    if (ok) {
        std::vector<std::pair<bool, int>> got;
        for (const DiagramCurve& c : dia.curves)
            got.push_back({c.closed, c.winding});
        std::vector<std::pair<bool, int>> want = row->shapes;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        ok = got == want;
    }
    if (!ok) {
        oss << "trace_diagram: traced structure (" << dia.curves.size()
            << " curves, " << dia.folds.size() << " folds) does not match the "
            << "taxonomy row for region " << to_string(dia.region.tag)
            << "; the tau grid is too coarse to resolve the diagram";
        throw GridError(oss.str());
    }
}

} // namespace

Diagram trace_diagram(const MapParams& mp, std::size_t n_tau, const TraceOptions& opts) {
    if (n_tau < 100)
        throw DomainError("trace_diagram: n_tau must be at least 100");
    mp.validate();
    const ToleranceConfig& tol = opts.tol;

    Diagram dia;
    dia.region = classify_region(mp.delta, mp.gamma, mp.k, tol);

    // --- Degenerate amplitude: the single circle tau = 1. -----------------
    if (mp.gamma == 0.0) {
        dia.curves.push_back(horizontal_circle(1.0, opts.n_phase));
        verify_against_row(dia);
        return dia;
    }

    // --- Unmodulated forcing shape k = 0: horizontal circles. -------------
    if (mp.k == 0.0) {
        for (double r : level_roots(mp.delta, mp.gamma, tol))
            dia.curves.push_back(horizontal_circle(r, opts.n_phase));
        verify_against_row(dia);
        return dia;
    }

    // --- Generic k > 0. ----------------------------------------------------
    dia.folds = find_folds(mp, tol);
    const std::vector<ComponentInterval> intervals =
        intervals_from_folds(mp, dia.folds, tol);

    double tau_lo = opts.tau_min;
    for (const FoldPoint& f : dia.folds)
        tau_lo = std::min(tau_lo, 0.5 * f.tau);
    tau_lo = std::max(tau_lo, tol.tau_floor * 10.0);

    // Geometric grid on [tau_lo, 1].
    std::vector<double> grid(n_tau);
    const double log_lo = std::log(tau_lo);
    for (std::size_t j = 0; j < n_tau; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n_tau - 1);
        grid[j] = std::exp(log_lo * (1.0 - t));
    }
    grid.back() = 1.0;

    for (const ComponentInterval& ci : intervals) {
        const double lo_e = ci.lo == 0.0 ? tau_lo : ci.lo;
        const double hi_e = ci.hi;

        std::vector<double> interior;
        for (double t : grid)
            if (t > lo_e * (1.0 + 1e-13) && t < hi_e * (1.0 - 1e-13))
                interior.push_back(t);
        if (interior.size() < 3)
            throw GridError("trace_diagram: fewer than 3 grid slices inside the "
                            "component [" + std::to_string(ci.lo) + ", " +
                            std::to_string(ci.hi) + "]; increase n_tau");

        auto upper_at = [&](double t) {
            return CurvePoint{t, polish_in_s(mp, t, s_upper(u_of(mp, t)), tol)};
        };
        auto lower_at = [&](double t) {
            return CurvePoint{t, polish_in_s(mp, t, s_lower(u_of(mp, t)), tol)};
        };

        const bool lo_is_fold = ci.lo_fold.has_value();
        const bool hi_is_fold = ci.hi_fold.has_value();

        if (!lo_is_fold && !hi_is_fold) {
            // Both ends on domain boundaries: the two phase branches never
            // merge and form two separate open curves.
            for (int which = 0; which < 2; ++which) {
                DiagramCurve curve;
                curve.points.push_back(which == 0 ? upper_at(lo_e) : lower_at(lo_e));
                for (double t : interior)
                    curve.points.push_back(which == 0 ? upper_at(t) : lower_at(t));
                curve.points.push_back(which == 0 ? upper_at(hi_e) : lower_at(hi_e));
                curve.closed = false;
                curve.winding = winding_of(curve.points, false);
                curve.touches_tau0 = (ci.lo == 0.0);
                curve.touches_tau1 = (ci.hi == 1.0);
                dia.curves.push_back(std::move(curve));
            }
            continue;
        }

        DiagramCurve curve;
        auto push_fold = [&](std::size_t fold_index) {
            const FoldPoint& f = dia.folds[fold_index];
            curve.folds.push_back({curve.points.size(), fold_index});
            curve.points.push_back({f.tau, f.s_star});
        };

        if (lo_is_fold && hi_is_fold) {
            // Closed loop: fold -> upper branch -> fold -> lower branch back.
            push_fold(*ci.lo_fold);
            for (double t : interior) curve.points.push_back(upper_at(t));
            push_fold(*ci.hi_fold);
            for (auto it = interior.rbegin(); it != interior.rend(); ++it)
                curve.points.push_back(lower_at(*it));
            curve.closed = true;
        } else if (lo_is_fold) {
            // Open curve turning at the left fold, both ends at tau = hi.
            curve.points.push_back(upper_at(hi_e));
            for (auto it = interior.rbegin(); it != interior.rend(); ++it)
                curve.points.push_back(upper_at(*it));
            push_fold(*ci.lo_fold);
            for (double t : interior) curve.points.push_back(lower_at(t));
            curve.points.push_back(lower_at(hi_e));
            curve.closed = false;
        } else {
            // Open curve turning at the right fold, both ends at tau = lo.
            curve.points.push_back(upper_at(lo_e));
            for (double t : interior) curve.points.push_back(upper_at(t));
            push_fold(*ci.hi_fold);
            for (auto it = interior.rbegin(); it != interior.rend(); ++it)
                curve.points.push_back(lower_at(*it));
            curve.points.push_back(lower_at(lo_e));
            curve.closed = false;
        }
        curve.winding = winding_of(curve.points, curve.closed);
        curve.touches_tau0 = (ci.lo == 0.0);
        curve.touches_tau1 = (ci.hi == 1.0);
        dia.curves.push_back(std::move(curve));
    }

    verify_against_row(dia);
    return dia;
}

// ---------------------------------------------------------------------------
// Thresholds
// ---------------------------------------------------------------------------

TransitionThresholds transition_thresholds(double delta, double k) {
    if (!(k >= 0.0))
        throw DomainError("transition_thresholds: k must be nonnegative");
    TransitionThresholds out;
    out.delta_phi = golden_phi();
    // M_F throws for delta outside (1, phi), which is exactly the domain
    // on which the gamma thresholds are defined.
    const double mf = M_F(delta);
    out.gamma_plus = mf / (1.0 + k);
    if (k < 1.0)
        out.gamma_minus = mf / (1.0 - k);
    return out;
}

} // namespace forcycle
