#pragma once

// Independent numerical oracles for the test suites. Everything here
// deliberately avoids the library's own solvers: plain bisection,
// brute-force grid scans, and finite differences only.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

/// Plain bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if (flo * fhi > 0.0)
        throw std::runtime_error("bisect: no sign change on the bracket");
    for (int i = 0; i < max_iter && hi - lo > tol * (1.0 + std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

/// Real root in (0, 1] of tau^3 + c*tau - 1 = 0. For delta = 2 the level
/// equation tau^{-1} - tau^2 = c clears to exactly this cubic, so its
/// root is the fold radius at level c.
inline double cubic_fold_root(double c) {
    return bisect([c](double t) { return t * t * t + c * t - 1.0; }, 1e-9, 1.0);
}

/// Argmax of f on [lo, hi] by dense scan plus a parabolic polish of the
/// best three-point stencil.
struct GridMax {
    double arg = 0.0;
    double value = 0.0;
};

inline GridMax grid_max(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t n = 200001) {
    GridMax best;
    best.value = -1e308;
    const double h = (hi - lo) / static_cast<double>(n - 1);
    std::size_t ibest = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + h * static_cast<double>(i);
        const double v = f(x);
        if (v > best.value) {
            best.value = v;
            best.arg = x;
            ibest = i;
        }
    }
    if (ibest > 0 && ibest + 1 < n) {
        const double fm = f(best.arg - h);
        const double fp = f(best.arg + h);
        const double denom = fm - 2.0 * best.value + fp;
        if (denom < 0.0) {
            const double shift = 0.5 * (fm - fp) / denom;
            best.arg += shift * h;
            best.value = f(best.arg);
        }
    }
    return best;
}

/// Brute-force column scan of the zero set of
///   gamma (1 + k sin s) - (tau^{p(delta)} - tau^{delta}) = 0
/// over an n x n grid (geometric in tau, uniform in s): counts the roots
/// per tau column from cyclic sign changes and records the columns where
/// the count changes. Those transitions bracket the fold radii to within
/// one grid cell.
struct GridFoldScan {
    std::vector<double> fold_taus;   ///< midpoints of the transition cells
    std::vector<double> resolutions; ///< local cell width at each transition
};

inline GridFoldScan grid_fold_scan(double delta, double gamma, double k,
                                   double tau_lo = 1e-6, double tau_hi = 1.0,
                                   std::size_t n = 2000) {
    const double p = -delta * delta + delta + 1.0;
    const double ratio = std::pow(tau_hi / tau_lo, 1.0 / static_cast<double>(n - 1));
    std::vector<double> sins(n);
    for (std::size_t j = 0; j < n; ++j)
        sins[j] = std::sin(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));

    GridFoldScan out;
    int prev_count = -1;
    double prev_tau = tau_lo;
    double tau = tau_lo;
    for (std::size_t i = 0; i < n; ++i, tau *= ratio) {
        const double F = std::pow(tau, p) - std::pow(tau, delta);
        int count = 0;
        const double g0 = gamma * (1.0 + k * sins[0]) - F;
        double gp = g0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double g = j == n ? g0 : gamma * (1.0 + k * sins[j]) - F;
            if ((gp < 0.0) != (g < 0.0))
                ++count;
            gp = g;
        }
        if (prev_count >= 0 && count != prev_count) {
            out.fold_taus.push_back(0.5 * (prev_tau + tau));
            out.resolutions.push_back(tau - prev_tau);
        }
        prev_count = count;
        prev_tau = tau;
    }
    return out;
}

} // namespace oracles
