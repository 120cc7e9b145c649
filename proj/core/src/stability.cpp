#include "forcycle/stability.hpp"

#include "forcycle/errors.hpp"
#include "forcycle/parallel.hpp"
#include "forcycle/scalar_family.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace forcycle {

std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::attracting: return "attracting";
        case StabilityClass::saddle: return "saddle";
        case StabilityClass::repelling: return "repelling";
        case StabilityClass::nonhyperbolic: return "nonhyperbolic";
    }
    return "?";
}

std::string to_string(HopfSide side) {
    switch (side) {
        case HopfSide::super: return "super";
        case HopfSide::sub: return "sub";
        case HopfSide::undetermined: return "undetermined";
    }
    return "?";
}

std::string to_string(ManifoldBranch b) {
    switch (b) {
        case ManifoldBranch::unstable_plus: return "unstable+";
        case ManifoldBranch::unstable_minus: return "unstable-";
        case ManifoldBranch::stable_plus: return "stable+";
        case ManifoldBranch::stable_minus: return "stable-";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Fixed-point classification
// ---------------------------------------------------------------------------

FixedPointInfo classify_fixed_point(const MapParams& mp, double tau, double s,
                                    const ToleranceConfig& tol) {
    const Jet2 jet = eval_g(mp, tau, s, tol);
    if (!(std::abs(jet.value) < tol.residual))
        throw NotFixedPointError("classify_fixed_point: |g| = " +
                                 std::to_string(std::abs(jet.value)) +
                                 " exceeds the residual tolerance at tau = " +
                                 std::to_string(tau));
    const CylinderPoint pt(tau, s);
    const Mat2 J = jacobian_G_tau(mp, pt, tol);
    Eig2 eig = eigenvalues_2x2(J);
    std::complex<double> l1 = eig.lambda1;
    std::complex<double> l2 = eig.lambda2;
    if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);

    FixedPointInfo info;
    info.tau = tau;
    info.s = wrap_2pi(s);
    info.lambda1 = l1;
    info.lambda2 = l2;
    info.det = J.det();
    info.trace = J.trace();

    const double m1 = std::abs(l1);
    const double m2 = std::abs(l2);
    const double te = tol.eigen;
    if (m1 < 1.0 - te && m2 < 1.0 - te)
        info.cls = StabilityClass::attracting;
    else if (m1 > 1.0 + te && m2 > 1.0 + te)
        info.cls = StabilityClass::repelling;
    else if (m1 < 1.0 - te && m2 > 1.0 + te)
        info.cls = StabilityClass::saddle;
    else
        info.cls = StabilityClass::nonhyperbolic;
    return info;
}

// ---------------------------------------------------------------------------
// Fold-branch stability
// ---------------------------------------------------------------------------

namespace {

double branch_u(const MapParams& mp, double tau) {
    return (F_delta(mp.delta, tau) / mp.gamma - 1.0) / mp.k;
}

double s_upper_branch(double u) {
    return wrap_2pi(M_PI - std::asin(std::clamp(u, -1.0, 1.0)));
}

double s_lower_branch(double u) {
    return wrap_2pi(std::asin(std::clamp(u, -1.0, 1.0)));
}

} // namespace

FoldBranchStability fold_branch_stability(const MapParams& mp, const FoldPoint& fold,
                                          double window, const ToleranceConfig& tol) {
    if (!(window > 0.0))
        throw DomainError("fold_branch_stability: window must be positive");
    const double side =
        fold.criticality == Criticality::supercritical ? +1.0 : -1.0;
    const double tau_b = fold.tau + side * window;
    if (!(tau_b > tol.tau_floor) || tau_b > 1.0)
        throw WindowError("fold_branch_stability: the displaced radius " +
                          std::to_string(tau_b) + " leaves (0, 1]");
    const double u = branch_u(mp, tau_b);
    if (std::abs(u) > 1.0)
        throw WindowError("fold_branch_stability: no branch solutions at the "
                          "displaced radius (window too large)");

    const double su = s_upper_branch(u);
    const double sl = s_lower_branch(u);
    const double du = circ_diff(su, fold.s_star);
    const double dl = circ_diff(sl, fold.s_star);
    // The two branches emerging from the fold straddle the fold phase; the
    // larger-s / smaller-s labels stay well defined until the branches close
    // up again near the antipodal phase, where the signed offsets reach +-pi.
    if (!(du * dl < 0.0) ||
        std::max(std::abs(du), std::abs(dl)) > M_PI - 0.1)
        throw WindowError("fold_branch_stability: branch phases merged near the "
                          "antipodal fold (window too large)");

    const double s_larger = du > 0.0 ? su : sl;
    const double s_smaller = du > 0.0 ? sl : su;

    FoldBranchStability out;
    out.larger = classify_fixed_point(mp, tau_b, s_larger, tol);
    out.smaller = classify_fixed_point(mp, tau_b, s_smaller, tol);
    out.branch_larger_s = out.larger.cls;
    out.branch_smaller_s = out.smaller.cls;
    return out;
}

// ---------------------------------------------------------------------------
// Double-eigenvalue (codimension-two) points
// ---------------------------------------------------------------------------

std::vector<BTPoint> find_bt_points(double delta, double k, double K,
                                    const ToleranceConfig& tol) {
    if (!(k > 0.0))
        throw DomainError("find_bt_points: k must be positive");
    if (!(K > 0.0))
        throw DomainError("find_bt_points: K must be positive");
    const double tm = tau_m(delta); // rejects delta outside (1, phi)
    const double mf = M_F(delta);

    std::vector<BTPoint> out;
    auto emit = [&](int eps) {
        BTPoint bt;
        bt.tau = tm;
        bt.eps = eps;
        bt.s_star = eps == +1 ? M_PI / 2.0 : 3.0 * M_PI / 2.0;
        bt.gamma = mf / (1.0 + eps * k);
        bt.delta = delta;
        bt.k = k;
        const MapParams mloc(delta, bt.gamma, k, K);
        bt.residual = std::abs(lambda2_at_fold(mloc, tm, eps, tol) - 1.0);
        out.push_back(bt);
    };
    emit(+1);
    if (k < 1.0)
        emit(-1); // the eps = -1 level M_F/(1-k) exists only below k = 1
    return out;
}

// ---------------------------------------------------------------------------
// Hopf locus
// ---------------------------------------------------------------------------

namespace {

struct HopfNewtonResult {
    bool ok = false;
    double s = 0.0;
    double gamma = 0.0;
    std::string reason;
};

HopfNewtonResult hopf_newton(double delta, double k, double K, double tau, int eps,
                             const ToleranceConfig& tol) {
    const double d2 = delta * delta;
    double s = eps == +1 ? M_PI / 2.0 - 0.05 : 3.0 * M_PI / 2.0 + 0.05;
    const double denom0 = 1.0 + k * std::sin(s);
    if (!(denom0 > 0.0))
        return {false, 0.0, 0.0, "seed_outside_branch"};
    const double Ftau = F_delta(delta, tau);
    double gamma = Ftau / denom0;
    if (!(gamma > 0.0))
        return {false, 0.0, 0.0, "seed_gamma_nonpositive"};

    const double t_pow = pow_pos(tau, d2 - delta, tol.tau_floor);
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
        const MapParams mp(delta, gamma, k, K);
        const Jet2 jg = eval_g(mp, tau, s, tol);
        const FJet jf = det_condition_f_jet(mp, tau, s, tol);

        const double a = jg.d_ds;                         // dg/ds
        const double b = t_pow * (1.0 + k * std::sin(s)); // dg/dgamma
        const double c = jf.d_ds;
        const double d = jf.d_dgamma;
        const double det = a * d - b * c;
        if (!(std::abs(det) > 1e-300) || !std::isfinite(det))
            return {false, 0.0, 0.0, "singular_newton_system"};

        double ds = (-jg.value * d + jf.value * b) / det;
        double dgam = (c * jg.value - a * jf.value) / det;
        ds = std::clamp(ds, -0.2, 0.2);
        const double cap = 0.5 * std::max(gamma, 0.1);
        dgam = std::clamp(dgam, -cap, cap);

        s += ds;
        gamma += dgam;
        if (!(gamma > 0.0))
            return {false, 0.0, 0.0, "gamma_left_domain"};
        if (std::abs(ds) + std::abs(dgam) / std::max(1.0, gamma) < 1e-14) {
            converged = true;
            break;
        }
    }
    if (!converged)
        return {false, 0.0, 0.0, "no_convergence"};

    // Residual acceptance.
    const MapParams mp(delta, gamma, k, K);
    const double g_res = std::abs(eval_g(mp, tau, s, tol).value);
    const double f_scale =
        1.0 + gamma * k * (1.0 / K + std::abs(d2 - delta)) + gamma * std::abs(d2 - delta);
    const double f_res = std::abs(det_condition_f(mp, tau, s, tol));
    if (g_res > 1e-10 || f_res > 1e-9 * f_scale)
        return {false, 0.0, 0.0, "residual_too_large"};
    return {true, wrap_2pi(s), gamma, ""};
}

/// Distance proxy used by the invariant-circle detector: phase distance
/// plus a radially rescaled offset.
double circle_metric(const CylinderPoint& q, const CylinderPoint& fp) {
    return std::hypot(circ_diff(q.s, fp.s), (q.y - fp.y) / fp.y);
}

/// Forward (map = true) or backward (map = false) orbit probe: returns
/// +1 if the orbit settles onto a bounded annulus around fp, 0 if it
/// escapes, -1 if the budget ends ambiguously.
int detect_circle(const MapParams& mp, double tau, const CylinderPoint& fp,
                  bool forward, std::size_t max_iters, const ToleranceConfig& tol) {
    CylinderPoint q(fp.y * (1.0 + 1e-3), fp.s);
    const std::size_t window = 512;
    std::vector<double> tail;
    tail.reserve(window);
    for (std::size_t it = 0; it < max_iters; ++it) {
        try {
            q = forward ? eval_G_tau(mp, tau, q, tol)
                        : inverse_G_tau(mp, tau, q, q, tol);
        } catch (const Error&) {
            return 0; // left the validity region: no circle on this side
        }
        if (!(q.y > 1e-9) || q.y > 1.0)
            return 0;
        const double dist = circle_metric(q, fp);
        if (dist > 0.5)
            return 0;
        if (max_iters - it <= window)
            tail.push_back(dist);
    }
    if (tail.empty())
        return -1;
    const auto [mn, mx] = std::minmax_element(tail.begin(), tail.end());
    if (*mn > 1e-5 && *mx < 0.5)
        return +1; // settled annulus bounded away from the fixed point
    return -1;
}

HopfSide estimate_hopf_side(double delta, double k, double K, double gamma_H,
                            double tau_H, std::size_t max_iters,
                            const ToleranceConfig& tol) {
    const MapParams mp(delta, gamma_H, k, K);
    const double h = std::max(1e-6, 1e-3 * tau_H);

    auto branch_fp = [&](double t) -> std::optional<CylinderPoint> {
        if (!(t > tol.tau_floor) || t > 1.0)
            return std::nullopt;
        const double u = branch_u(mp, t);
        if (std::abs(u) > 1.0)
            return std::nullopt;
        // cos s > 0 branch
        return CylinderPoint(t, s_lower_branch(u));
    };

    std::optional<double> tau_unstable, tau_stable;
    std::optional<CylinderPoint> fp_unstable, fp_stable;
    for (int sgn : {-1, +1}) {
        const double t = tau_H + sgn * h;
        const auto fp = branch_fp(t);
        if (!fp)
            continue;
        const Mat2 J = jacobian_G_tau(mp, *fp, tol);
        const Eig2 e = eigenvalues_2x2(J);
        const double mod = std::max(std::abs(e.lambda1), std::abs(e.lambda2));
        if (mod > 1.0 + 1e-12) {
            tau_unstable = t;
            fp_unstable = fp;
        } else if (mod < 1.0 - 1e-12) {
            tau_stable = t;
            fp_stable = fp;
        }
    }
    if (!tau_unstable || !tau_stable)
        return HopfSide::undetermined;

    // Attracting circle around the repelling point: supercritical.
    if (detect_circle(mp, *tau_unstable, *fp_unstable, true, max_iters, tol) == +1)
        return HopfSide::super;
    // Repelling circle around the attracting point (seen by the inverse
    // map): subcritical.
    if (detect_circle(mp, *tau_stable, *fp_stable, false, max_iters, tol) == +1)
        return HopfSide::sub;
    return HopfSide::undetermined;
}

} // namespace

HopfLocus solve_hopf_locus(double delta, double k, double K,
                           const std::vector<double>& tau_grid,
                           const HopfOptions& opts) {
    if (!(k > 0.0))
        throw DomainError("solve_hopf_locus: k must be positive");
    if (!(K > 0.0))
        throw DomainError("solve_hopf_locus: K must be positive");
    (void)tau_m(delta); // rejects delta outside (1, phi)

    const ToleranceConfig& tol = opts.tol;
    std::vector<int> eps_list{+1};
    if (k < 1.0)
        eps_list.push_back(-1);

    struct Slot {
        std::vector<HopfPoint> points;
        std::vector<HopfFailure> failures;
    };
    std::vector<Slot> slots(tau_grid.size());

    parallel_for(tau_grid.size(), [&](std::size_t i) {
        const double tau = tau_grid[i];
        if (!(tau > tol.tau_floor) || tau >= 1.0) {
            slots[i].failures.push_back({tau, 0, "tau_outside_domain"});
            return;
        }
        for (int eps : eps_list) {
            const HopfNewtonResult r = hopf_newton(delta, k, K, tau, eps, tol);
            if (!r.ok) {
                slots[i].failures.push_back({tau, eps, r.reason});
                continue;
            }
            const MapParams mp(delta, r.gamma, k, K);
            const Mat2 J = jacobian_G_tau(mp, CylinderPoint(tau, r.s), tol);
            const double det = J.det();
            const double trace = J.trace();
            if (std::abs(det - 1.0) > 1e-8) {
                slots[i].failures.push_back({tau, eps, "det_not_one"});
                continue;
            }
            if (!(std::abs(trace) < 2.0 - opts.trace_margin)) {
                slots[i].failures.push_back({tau, eps, "trace_boundary"});
                continue;
            }
            if (!(std::cos(r.s) > 0.0)) {
                slots[i].failures.push_back({tau, eps, "wrong_branch_side"});
                continue;
            }
            HopfPoint hp;
            hp.tau = tau;
            hp.s = r.s;
            hp.gamma = r.gamma;
            hp.delta = delta;
            hp.k = k;
            hp.theta = std::acos(trace / 2.0);
            hp.det = det;
            hp.trace = trace;
            hp.side = opts.compute_side
                          ? estimate_hopf_side(delta, k, K, r.gamma, tau,
                                               opts.max_circle_iters, tol)
                          : HopfSide::undetermined;
            slots[i].points.push_back(hp);
        }
    });

    HopfLocus out;
    for (Slot& s : slots) {
        out.points.insert(out.points.end(), s.points.begin(), s.points.end());
        out.failures.insert(out.failures.end(), s.failures.begin(), s.failures.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inverse map
// ---------------------------------------------------------------------------

CylinderPoint inverse_G_tau(const MapParams& mp, double tau, const CylinderPoint& target,
                            const CylinderPoint& guess, const ToleranceConfig& tol) {
    CylinderPoint q = guess;
    for (int it = 0; it < 50; ++it) {
        CylinderPoint img;
        try {
            img = eval_G_tau(mp, tau, q, tol);
        } catch (const Error& e) {
            throw ConvergenceError(std::string("inverse_G_tau: map evaluation failed "
                                               "during Newton: ") + e.what());
        }
        const double r1 = img.y - target.y;
        const double r2 = circ_diff(img.s, target.s);
        if (std::hypot(r1, r2) < tol.newton)
            return q;

        const Mat2 J = jacobian_G_tau(mp, q, tol);
        const double det = J.det();
        if (!(std::abs(det) > 1e-300))
            throw ConvergenceError("inverse_G_tau: singular Jacobian");
        const double dy = (-J.a22 * r1 + J.a12 * r2) / det;
        const double ds = (J.a21 * r1 - J.a11 * r2) / det;

        double lam = 1.0;
        int halvings = 0;
        while (q.y + lam * dy <= 2.0 * tol.tau_floor && halvings < 40) {
            lam *= 0.5;
            ++halvings;
        }
        if (halvings >= 40)
            throw ConvergenceError("inverse_G_tau: step collapses onto the radial floor");
        q.y = q.y + lam * dy;
        q.s = wrap_2pi(q.s + lam * ds);
    }
    throw ConvergenceError("inverse_G_tau: no convergence within 50 iterations "
                           "(target y = " + std::to_string(target.y) + ")");
}

// ---------------------------------------------------------------------------
// Invariant manifolds
// ---------------------------------------------------------------------------

namespace {

std::array<double, 2> eigenvector_of(const Mat2& J, double lambda) {
    // Null vectors of (J - lambda I) from either row.
    const std::array<double, 2> v1{J.a12, lambda - J.a11};
    const std::array<double, 2> v2{lambda - J.a22, J.a21};
    const double n1 = std::hypot(v1[0], v1[1]);
    const double n2 = std::hypot(v2[0], v2[1]);
    std::array<double, 2> v = n1 >= n2 ? v1 : v2;
    const double n = std::max(n1, n2);
    if (!(n > 0.0))
        throw ConvergenceError("eigenvector_of: degenerate eigenvector");
    v[0] /= n;
    v[1] /= n;
    return v;
}

/// Chart distance between two cylinder points (phase wrapped).
double chart_dist(const CylinderPoint& a, const CylinderPoint& b) {
    return std::hypot(circ_diff(a.s, b.s), a.y - b.y);
}

/// Signed distance from pt to the nearest segment of a polyline, in the
/// local (phase, radius) chart. Segments inside the exclusion ball around
/// the saddle are ignored. Returns false if no usable segment.
bool signed_gap(const std::vector<CylinderPoint>& polyline, const CylinderPoint& pt,
                const CylinderPoint& saddle, double excl, double& gap_out) {
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    double best_signed = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const CylinderPoint& A = polyline[i];
        const CylinderPoint& B = polyline[i + 1];
        if (chart_dist(A, saddle) < excl && chart_dist(B, saddle) < excl)
            continue; // the branches coincide at the saddle; no information
        const double ds = circ_diff(B.s, A.s);
        const double dy = B.y - A.y;
        const double L2 = ds * ds + dy * dy;
        if (L2 > 1.0 || L2 < 1e-300)
            continue; // skip degenerate or wildly coarse chords
        const double ps = circ_diff(pt.s, A.s);
        const double py = pt.y - A.y;
        const double t = std::clamp((ps * ds + py * dy) / L2, 0.0, 1.0);
        const double ex = ps - t * ds;
        const double ey = py - t * dy;
        const double dist = std::hypot(ex, ey);
        if (dist < best) {
            best = dist;
            best_signed = (ds * py - dy * ps) >= 0.0 ? dist : -dist;
            found = true;
        }
    }
    if (found)
        gap_out = best_signed;
    return found;
}

void attach_crossing_data(ManifoldTrace& trace,
                          const std::vector<const ManifoldTrace*>& opposite,
                          const CylinderPoint& saddle, double excl) {
    double best = std::numeric_limits<double>::infinity();
    double best_signed = 0.0;
    bool have_prev = false;
    double prev = 0.0;
    bool flipped = false;
    for (const CylinderPoint& pt : trace.points) {
        if (chart_dist(pt, saddle) < excl)
            continue;
        double g = 0.0;
        bool any = false;
        double g_best = std::numeric_limits<double>::infinity();
        for (const ManifoldTrace* other : opposite) {
            double gi = 0.0;
            if (signed_gap(other->points, pt, saddle, excl, gi) &&
                std::abs(gi) < std::abs(g_best)) {
                g_best = gi;
                any = true;
            }
        }
        if (!any)
            continue;
        g = g_best;
        if (std::abs(g) < std::abs(best)) {
            best = std::abs(g);
            best_signed = g;
        }
        if (have_prev && prev * g < 0.0 && std::abs(prev) < 0.25 && std::abs(g) < 0.25)
            flipped = true;
        prev = g;
        have_prev = true;
    }
    trace.min_crossing_gap = std::isfinite(best) ? best_signed : 0.0;
    trace.sign_change = flipped;
}

} // namespace

std::vector<ManifoldTrace>
trace_invariant_manifolds(const MapParams& mp, double tau, const FixedPointInfo& saddle,
                          std::size_t steps, const ManifoldOptions& opts) {
    if (saddle.cls != StabilityClass::saddle)
        throw NotSaddleError("trace_invariant_manifolds: the supplied fixed point is " +
                             to_string(saddle.cls) + ", not a saddle");
    const ToleranceConfig& tol = opts.tol;
    const CylinderPoint p(saddle.tau, saddle.s);
    const Mat2 J = jacobian_G_tau(mp, p, tol);
    const Eig2 eig = eigenvalues_2x2(J);
    if (!eig.real)
        throw NotSaddleError("trace_invariant_manifolds: complex spectrum");
    double lam_s = eig.lambda1.real();
    double lam_u = eig.lambda2.real();
    if (std::abs(lam_s) > std::abs(lam_u))
        std::swap(lam_s, lam_u);
    const std::array<double, 2> vs = eigenvector_of(J, lam_s);
    const std::array<double, 2> vu = eigenvector_of(J, lam_u);

    const std::size_t m = std::max<std::size_t>(2, opts.points_per_segment);

    auto build = [&](ManifoldBranch branch) {
        const bool unstable = branch == ManifoldBranch::unstable_plus ||
                              branch == ManifoldBranch::unstable_minus;
        const double dir = (branch == ManifoldBranch::unstable_plus ||
                            branch == ManifoldBranch::stable_plus)
                               ? +1.0
                               : -1.0;
        const std::array<double, 2>& v = unstable ? vu : vs;
        const double expansion = unstable ? std::abs(lam_u) : 1.0 / std::abs(lam_s);
        const double rho = std::pow(expansion, 1.0 / static_cast<double>(m));

        ManifoldTrace trace;
        trace.saddle = saddle;
        trace.branch = branch;

        std::vector<CylinderPoint> cur;
        cur.reserve(m);
        double scale = opts.seed_distance;
        for (std::size_t i = 0; i < m; ++i) {
            const double yy = p.y + dir * scale * v[0];
            const double ss = p.s + dir * scale * v[1];
            if (!(yy > opts.y_min) || yy > 1.0) {
                trace.truncated = true;
                break;
            }
            cur.emplace_back(yy, ss);
            scale *= rho;
        }
        trace.points.insert(trace.points.end(), cur.begin(), cur.end());

        for (std::size_t j = 0; j < steps && !trace.truncated && !cur.empty(); ++j) {
            for (CylinderPoint& q : cur) {
                try {
                    q = unstable ? eval_G_tau(mp, tau, q, tol)
                                 : inverse_G_tau(mp, tau, q, q, tol);
                } catch (const Error&) {
                    trace.truncated = true;
                    break;
                }
                if (!(q.y > opts.y_min) || q.y > 1.0) {
                    trace.truncated = true;
                    break;
                }
                trace.points.push_back(q);
            }
        }
        return trace;
    };

    std::vector<ManifoldTrace> traces;
    traces.push_back(build(ManifoldBranch::unstable_plus));
    traces.push_back(build(ManifoldBranch::unstable_minus));
    traces.push_back(build(ManifoldBranch::stable_plus));
    traces.push_back(build(ManifoldBranch::stable_minus));

    const std::vector<const ManifoldTrace*> stable_set{&traces[2], &traces[3]};
    const std::vector<const ManifoldTrace*> unstable_set{&traces[0], &traces[1]};
    const double excl = std::max(opts.crossing_exclusion, 2.0 * opts.seed_distance);
    attach_crossing_data(traces[0], stable_set, p, excl);
    attach_crossing_data(traces[1], stable_set, p, excl);
    attach_crossing_data(traces[2], unstable_set, p, excl);
    attach_crossing_data(traces[3], unstable_set, p, excl);
    return traces;
}

} // namespace forcycle
