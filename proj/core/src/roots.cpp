#include "forcycle/roots.hpp"

#include "forcycle/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace forcycle {

namespace {

void require_bracket(double fa, double fb, const char* fn) {
    if (fa * fb > 0.0)
        throw DomainError(std::string(fn) + ": endpoints do not bracket a root");
}

} // namespace

double bisect(const std::function<double(double)>& f, double a, double b,
              double tol_x, int max_iter) {
    double fa = f(a);
    if (fa == 0.0) return a;
    double fb = f(b);
    if (fb == 0.0) return b;
    require_bracket(fa, fb, "bisect");
    for (int i = 0; i < max_iter && (b - a) > tol_x; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double a, double b,
                     double tol_x, int max_iter) {
    double fa = f(a);
    if (fa == 0.0) return a;
    double fb = f(b);
    if (fb == 0.0) return b;
    require_bracket(fa, fb, "newton_bisect");
    // Orient so that f(lo) < 0 < f(hi).
    double lo = a, hi = b;
    if (fa > 0.0) std::swap(lo, hi);

    double x = 0.5 * (a + b);
    double fx = f(x);
    for (int i = 0; i < max_iter; ++i) {
        if (fx == 0.0) return x;
        if (fx < 0.0)
            lo = x;
        else
            hi = x;

        const double dfx = df(x);
        double x_next;
        if (dfx != 0.0) {
            x_next = x - fx / dfx;
            const double lo_b = std::fmin(lo, hi);
            const double hi_b = std::fmax(lo, hi);
            if (!(x_next > lo_b) || !(x_next < hi_b))
                x_next = 0.5 * (lo + hi); // Newton left the bracket
        } else {
            x_next = 0.5 * (lo + hi);
        }
        if (std::abs(x_next - x) < tol_x)
            return x_next;
        x = x_next;
        fx = f(x);
    }
    return x;
}

} // namespace forcycle
