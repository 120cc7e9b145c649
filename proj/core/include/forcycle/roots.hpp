#pragma once

#include <functional>

namespace forcycle {

/// Bisection on [a, b]; f(a) and f(b) must have opposite signs (an
/// endpoint exactly at zero is returned immediately). Runs until the
/// bracket width falls below tol_x or max_iter halvings.
double bisect(const std::function<double(double)>& f, double a, double b,
              double tol_x = 1e-15, int max_iter = 200);

/// Safeguarded Newton: Newton steps using df, falling back to bisection
/// whenever the step leaves the current bracket or stalls. Requires a
/// sign change on [a, b]. Converges to |step| < tol_x or |f| == 0.
double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double a, double b,
                     double tol_x = 1e-15, int max_iter = 200);

} // namespace forcycle
