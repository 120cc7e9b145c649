#include "forcycle/odesim.hpp"

#include "forcycle/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace forcycle {

std::array<double, 3> vector_field(const ModelParams& mp, const State3& st) {
    const double x = st.x, y = st.y, z = st.z;
    const double r2 = x * x + y * y + z * z;
    const double a = mp.alpha, b = mp.beta;
    std::array<double, 3> v;
    v[0] = x * (1.0 - r2) - a * x * z + b * x * z * z +
           mp.gamma * (1.0 - x) * std::sin(2.0 * mp.omega * st.t);
    v[1] = y * (1.0 - r2) + a * y * z + b * y * z * z;
    v[2] = z * (1.0 - r2) - a * (y * y - x * x) - b * z * (x * x + y * y);
    return v;
}

std::array<std::array<double, 3>, 3>
fd_jacobian(const ModelParams& mp, const State3& st, double h) {
    std::array<std::array<double, 3>, 3> J{};
    for (int j = 0; j < 3; ++j) {
        State3 sp = st;
        State3 sm = st;
        if (j == 0) { sp.x += h; sm.x -= h; }
        if (j == 1) { sp.y += h; sm.y -= h; }
        if (j == 2) { sp.z += h; sm.z -= h; }
        const std::array<double, 3> fp = vector_field(mp, sp);
        const std::array<double, 3> fm = vector_field(mp, sm);
        for (int i = 0; i < 3; ++i)
            J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

// ---------------------------------------------------------------------------
// Embedded 5(4) Runge-Kutta integration (Dormand-Prince coefficients)
// ---------------------------------------------------------------------------

namespace {

struct Vec3 {
    double v[3];
};

Vec3 rhs(const ModelParams& mp, const Vec3& u, double t) {
    State3 st{u.v[0], u.v[1], u.v[2], t};
    const std::array<double, 3> f = vector_field(mp, st);
    return Vec3{{f[0], f[1], f[2]}};
}

// Butcher tableau.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

/// One trial step from (u, t) of size h; fills u5 (5th-order result) and
/// returns the scaled local error estimate.
double dp_step(const ModelParams& mp, const Vec3& u, double t, double h, Vec3& u5,
               double tol) {
    const Vec3 k1 = rhs(mp, u, t);
    Vec3 w;
    for (int i = 0; i < 3; ++i) w.v[i] = u.v[i] + h * A21 * k1.v[i];
    const Vec3 k2 = rhs(mp, w, t + C2 * h);
    for (int i = 0; i < 3; ++i) w.v[i] = u.v[i] + h * (A31 * k1.v[i] + A32 * k2.v[i]);
    const Vec3 k3 = rhs(mp, w, t + C3 * h);
    for (int i = 0; i < 3; ++i)
        w.v[i] = u.v[i] + h * (A41 * k1.v[i] + A42 * k2.v[i] + A43 * k3.v[i]);
    const Vec3 k4 = rhs(mp, w, t + C4 * h);
    for (int i = 0; i < 3; ++i)
        w.v[i] = u.v[i] +
                 h * (A51 * k1.v[i] + A52 * k2.v[i] + A53 * k3.v[i] + A54 * k4.v[i]);
    const Vec3 k5 = rhs(mp, w, t + C5 * h);
    for (int i = 0; i < 3; ++i)
        w.v[i] = u.v[i] + h * (A61 * k1.v[i] + A62 * k2.v[i] + A63 * k3.v[i] +
                               A64 * k4.v[i] + A65 * k5.v[i]);
    const Vec3 k6 = rhs(mp, w, t + h);
    for (int i = 0; i < 3; ++i)
        u5.v[i] = u.v[i] + h * (B1 * k1.v[i] + B3 * k3.v[i] + B4 * k4.v[i] +
                                B5 * k5.v[i] + B6 * k6.v[i]);
    const Vec3 k7 = rhs(mp, u5, t + h);

    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double e = h * (E1 * k1.v[i] + E3 * k3.v[i] + E4 * k4.v[i] +
                              E5 * k5.v[i] + E6 * k6.v[i] + E7 * k7.v[i]);
        const double sc = tol + tol * std::max(std::abs(u.v[i]), std::abs(u5.v[i]));
        const double q = e / sc;
        err += q * q;
    }
    return std::sqrt(err / 3.0);
}

} // namespace

Trajectory integrate(const ModelParams& mp, const State3& st0, double t_end,
                     double tol, const std::vector<double>& sample_times) {
    mp.validate();
    if (!(tol >= 1e-12) || !(tol <= 1e-6))
        throw DomainError("integrate: tol must lie in [1e-12, 1e-6]");
    if (!(t_end >= st0.t))
        throw DomainError("integrate: t_end must not precede the start time");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < st0.t || sample_times[i] > t_end)
            throw DomainError("integrate: sample time outside [t0, t_end]");
        if (i > 0 && sample_times[i] < sample_times[i - 1])
            throw DomainError("integrate: sample times must be nondecreasing");
    }

    Trajectory traj;
    traj.samples.push_back(st0);

    Vec3 u{{st0.x, st0.y, st0.z}};
    double t = st0.t;
    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
        traj.samples.push_back(State3{u.v[0], u.v[1], u.v[2], t});
        ++next_sample;
    }

    double h = std::min(1e-3, (t_end - t) > 0.0 ? (t_end - t) : 1e-3);
    const double t_scale = std::max(1.0, std::abs(t_end));
    while (t < t_end) {
        const double target = next_sample < sample_times.size()
                                  ? sample_times[next_sample]
                                  : t_end;
        double h_try = h;
        bool clamped = false;
        if (t + h_try >= target) {
            h_try = target - t;
            clamped = true;
        }
        if (!(h_try > 1e-14 * t_scale)) {
            if (!clamped)
                throw ConvergenceError("integrate: step size underflow at t = " +
                                       std::to_string(t));
            // The event lies within roundoff of t: snap without stepping.
            t = target;
        } else {
            Vec3 u5;
            const double err = dp_step(mp, u, t, h_try, u5, tol);
            if (err <= 1.0) {
                t = clamped ? target : t + h_try;
                u = u5;
                const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                // Grow from the nominal step so event clamping does not
                // permanently shrink it.
                h = std::max(h, h_try) * std::clamp(grow, 0.2, 5.0);
            } else {
                h = h_try * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
                continue;
            }
        }
        while (next_sample < sample_times.size() && t >= sample_times[next_sample]) {
            traj.samples.push_back(
                State3{u.v[0], u.v[1], u.v[2], sample_times[next_sample]});
            ++next_sample;
        }
    }
    traj.samples.push_back(State3{u.v[0], u.v[1], u.v[2], t_end});
    return traj;
}

State3 stroboscopic_map(const ModelParams& mp, const State3& st0, int n, double tol) {
    if (n < 1)
        throw DomainError("stroboscopic_map: n must be a positive integer");
    const double t_end = st0.t + static_cast<double>(n) * mp.forcing_period();
    const Trajectory traj = integrate(mp, st0, t_end, tol);
    return traj.samples.back();
}

// ---------------------------------------------------------------------------
// Locked-orbit search
// ---------------------------------------------------------------------------

bool StroboOrbit::attracting() const {
    for (const auto& m : spectrum)
        if (!(std::abs(m) < 1.0))
            return false;
    return true;
}

StroboOrbit find_locked_orbit(const ModelParams& mp, const State3& seed, int n,
                              double integ_tol) {
    if (n < 1)
        throw DomainError("find_locked_orbit: n must be a positive integer");

    auto P = [&](const Eigen::Vector3d& X) {
        const State3 out =
            stroboscopic_map(mp, State3{X(0), X(1), X(2), 0.0}, n, integ_tol);
        return Eigen::Vector3d(out.x, out.y, out.z);
    };

    const double fd_h = 1e-7;
    Eigen::Vector3d X(seed.x, seed.y, seed.z);
    double residual = 0.0;
    bool converged = false;
    for (int it = 0; it < 30; ++it) {
        const double r = X.norm();
        if (std::abs(r - 1.0) >= 0.5)
            throw ConvergenceError("find_locked_orbit: iterate diverged from the "
                                   "sphere (|r - 1| = " +
                                   std::to_string(std::abs(r - 1.0)) + ")");
        const Eigen::Vector3d PX = P(X);
        const Eigen::Vector3d R = PX - X;
        residual = R.norm();
        if (residual < 1e-8) {
            converged = true;
            break;
        }
        Eigen::Matrix3d J;
        for (int j = 0; j < 3; ++j) {
            Eigen::Vector3d Xp = X;
            Xp(j) += fd_h;
            J.col(j) = (P(Xp) - PX) / fd_h;
        }
        J -= Eigen::Matrix3d::Identity();
        const Eigen::Vector3d d = J.partialPivLu().solve(-R);
        if (!d.allFinite())
            throw ConvergenceError("find_locked_orbit: singular Newton system");
        X += d;
    }
    if (!converged)
        throw ConvergenceError("find_locked_orbit: no convergence after 30 Newton "
                               "steps (residual = " +
                               std::to_string(residual) + ")");

    StroboOrbit orbit;
    orbit.n = n;
    orbit.residual = residual;

    // Stroboscopic samples over one full locked period.
    std::vector<double> times;
    for (int j = 0; j <= n; ++j)
        times.push_back(static_cast<double>(j) * mp.forcing_period());
    const Trajectory traj = integrate(mp, State3{X(0), X(1), X(2), 0.0},
                                      times.back(), integ_tol, times);
    orbit.samples.assign(traj.samples.begin() + 1, traj.samples.end() - 1);

    // Multipliers of the n-step stroboscopic map at the orbit.
    const Eigen::Vector3d PX = P(X);
    Eigen::Matrix3d M;
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d Xp = X;
        Xp(j) += fd_h;
        M.col(j) = (P(Xp) - PX) / fd_h;
    }
    const Eigen::EigenSolver<Eigen::Matrix3d> es(M);
    std::array<std::complex<double>, 3> spec;
    for (int i = 0; i < 3; ++i)
        spec[i] = es.eigenvalues()(i);
    std::sort(spec.begin(), spec.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  return std::abs(a) > std::abs(b);
              });
    orbit.spectrum = spec;
    orbit.multipliers = {spec[0], spec[1]};
    return orbit;
}

} // namespace forcycle
